//! Main edges, patterns, dead patterns and incorrect segments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, Point, TileId, VertexId, VertexKind};

use super::Path;

/// Whether the graph edge `v-w` runs along the macro-edge that `v` belongs to.
///
/// For a side vertex that is the segment it bisects; for an interior vertex,
/// the interior macro-edges of the tile that created it.
pub fn is_main_edge(c: &Complex, v: VertexId, w: VertexId) -> Result<bool> {
    let vert = c.vertex(v)?;
    let e = c.graph_edge(v, w).ok_or(Error::NotIncident(v, w))?;
    match vert.kind {
        VertexKind::Side(..) => {
            let seg = vert.midpoint_of.ok_or(Error::UndefinedKind(v))?;
            Ok(c.carrying_edge(e) == c.carrying_edge(seg))
        }
        VertexKind::Interior(_) => {
            let root = c.edge(c.carrying_edge(e));
            Ok(!root.is_boundary() && root.owner == vert.owner)
        }
        VertexKind::Corner(_) | VertexKind::EdgeMid(_) => Err(Error::UndefinedKind(v)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    /// Path position, vertex and kind of each kept vertex.
    pub entries: Vec<(usize, VertexId, VertexKind)>,
}

impl Pattern {
    pub fn vertices(&self) -> Vec<VertexId> {
        self.entries.iter().map(|e| e.1).collect()
    }
}

/// The path's vertices with every side vertex that is entered and left along
/// main edges removed.
pub fn pattern_of(c: &Complex, path: &Path) -> Result<Pattern> {
    let v = path.vertices();
    let planes: Vec<_> = v.windows(2).map(|w| c.home_plane(c.graph_edge(w[0], w[1]).expect("path edge"))).collect();
    if planes.windows(2).any(|p| p[0] != p[1]) {
        return Err(Error::NotPlanar);
    }
    let mut entries = Vec::new();
    for (i, &x) in v.iter().enumerate() {
        let kind = c.v(x).kind;
        if let VertexKind::Side(..) = kind {
            if i > 0 && i + 1 < v.len() && is_main_edge(c, x, v[i - 1])? && is_main_edge(c, x, v[i + 1])? {
                continue;
            }
        }
        entries.push((i, x, kind));
    }
    Ok(Pattern { entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeadShape {
    Aub,
    Acb,
    Cxd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeadMatch {
    /// Position in the pattern of the first of the three vertices.
    pub at: usize,
    pub tile: TileId,
    pub shape: DeadShape,
    pub mirrored: bool,
}

fn dead_shape(roles: [Point; 3]) -> Option<(DeadShape, bool)> {
    use Point::*;
    match roles {
        [A, U, B] => Some((DeadShape::Aub, false)),
        [B, U, A] => Some((DeadShape::Aub, true)),
        [A, C, B] => Some((DeadShape::Acb, false)),
        [B, C, A] => Some((DeadShape::Acb, true)),
        [C, LL | LR, D] => Some((DeadShape::Cxd, false)),
        [D, LL | LR, C] => Some((DeadShape::Cxd, true)),
        _ => None,
    }
}

/// Consecutive pattern triples playing the roles A U B, A C B or C X D
/// (X a lower corner), or their reversals, in a single tile.
pub fn find_dead_patterns(c: &Complex, pattern: &Pattern) -> Vec<DeadMatch> {
    let v = pattern.vertices();
    let mut out = Vec::new();
    for (i, w) in v.windows(3).enumerate() {
        let mut tiles: Vec<TileId> =
            [w[0], w[2]].iter().filter(|&&x| c.v(x).kind.is_interior()).map(|&x| c.v(x).owner).collect();
        tiles.sort_unstable();
        tiles.dedup();
        for t in tiles {
            let roles = [w[0], w[1], w[2]].map(|x| c.point_of(t, x));
            if let [Some(a), Some(b), Some(d)] = roles {
                if let Some((shape, mirrored)) = dead_shape([a, b, d]) {
                    out.push(DeadMatch { at: i, tile: t, shape, mirrored });
                }
            }
        }
    }
    out
}

/// Triples `X Y Z` of the path where `Y` is on the boundary of a macrotile
/// `T` while `X` and `Z` are strictly inside it, reported with the lowest
/// level such `T` (ties by id).
pub fn incorrect_segments(c: &Complex, path: &Path) -> Vec<(usize, TileId)> {
    let v = path.vertices();
    let mut out = Vec::new();
    for i in 1..v.len().saturating_sub(1) {
        let (x, y, z) = (v[i - 1], v[i], v[i + 1]);
        let tx = c.tiles_containing(x);
        let tz = c.tiles_containing(z);
        let best = tx
            .iter()
            .filter(|t| tz.binary_search(t).is_ok())
            .filter(|&&t| c.on_tile_boundary(y, t) && c.strictly_inside(x, t) && c.strictly_inside(z, t))
            .min_by_key(|&&t| (c.level_of(t), t));
        if let Some(&t) = best {
            out.push((i, t));
        }
    }
    out
}
