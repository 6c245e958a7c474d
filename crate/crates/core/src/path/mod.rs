//! Paths on the complex and flips over minimal tiles.

mod flip;
mod pattern;
mod search;
mod text;
mod wiggle;

pub use flip::{abstract_plan, macro_flip, mid_sides, point_chain, two_sides, PlanStep};
pub use pattern::{find_dead_patterns, incorrect_segments, is_main_edge, pattern_of, DeadMatch, DeadShape, Pattern};
pub use search::{
    flip_closure, flip_closure_to, push_to_boundary, reduce_to_null, ClosureSummary, PushOutcome, Reduction,
    SearchBudget,
};
pub use text::{format_moves, format_path, parse_moves, parse_path};
pub use wiggle::{tile_side, wiggle_into_pasting, Wiggle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, TileId, VertexId};

/// A walk in the graph: consecutive vertices are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path(Vec<VertexId>);

impl Path {
    pub fn new(c: &Complex, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty".into()));
        }
        for &v in &vertices {
            c.vertex(v)?;
        }
        for w in vertices.windows(2) {
            if c.graph_edge(w[0], w[1]).is_none() {
                return Err(Error::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        Ok(Path(vertices))
    }

    /// Wraps a sequence already known to be a walk.
    pub(crate) fn trusted(vertices: Vec<VertexId>) -> Path {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Index of the first immediate backtrack `v w v`, if any.
    pub fn backtrack(&self) -> Option<usize> {
        self.0.windows(3).position(|w| w[0] == w[2]).map(|i| i + 1)
    }
}

/// Replaces the middle vertex of two adjacent sides of a minimal tile by the
/// opposite corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub index: usize,
    pub tile: TileId,
    pub from: VertexId,
    pub to: VertexId,
}

/// The vertex opposite `m` in minimal tile `t`, if `a` and `b` are the two
/// corners next to `m`.
fn flip_target(c: &Complex, t: TileId, a: VertexId, m: VertexId, b: VertexId) -> Option<VertexId> {
    let tile = c.t(t);
    if !tile.is_minimal() || a == b {
        return None;
    }
    let j = tile.corner_index(m)?;
    let (prev, next) = (tile.corners[(j + 3) % 4], tile.corners[(j + 1) % 4]);
    ((prev, next) == (a, b) || (prev, next) == (b, a)).then_some(tile.corners[(j + 2) % 4])
}

pub fn is_null_form(c: &Complex, path: &Path) -> Result<bool> {
    Path::new(c, path.0.clone())?;
    Ok(path.backtrack().is_some())
}

/// Every flip applicable to the path, by position then tile id.
pub fn local_moves(c: &Complex, path: &Path) -> Vec<Move> {
    let v = &path.0;
    let mut out = Vec::new();
    for i in 1..v.len().saturating_sub(1) {
        moves_at(c, v, i, &mut out);
    }
    out
}

pub(crate) fn moves_at(c: &Complex, v: &[VertexId], i: usize, out: &mut Vec<Move>) {
    let (a, m, b) = (v[i - 1], v[i], v[i + 1]);
    if a == b {
        return;
    }
    let mut found: Vec<Move> = c
        .tiles_at(m)
        .iter()
        .filter_map(|&t| flip_target(c, t, a, m, b).map(|to| Move { index: i, tile: t, from: m, to }))
        .collect();
    found.sort_by_key(|mv| mv.tile);
    out.extend(found);
}

pub fn apply_move(c: &Complex, path: &Path, mv: &Move) -> Result<Path> {
    let v = &path.0;
    if mv.index == 0 || mv.index + 1 >= v.len() {
        return Err(Error::InvalidMove(format!("index {} out of range", mv.index)));
    }
    if v[mv.index] != mv.from {
        return Err(Error::InvalidMove(format!("vertex at {} is not {}", mv.index, mv.from)));
    }
    c.tile(mv.tile)?;
    match flip_target(c, mv.tile, v[mv.index - 1], mv.from, v[mv.index + 1]) {
        Some(to) if to == mv.to => {
            let mut out = v.clone();
            out[mv.index] = to;
            Ok(Path(out))
        }
        _ => Err(Error::InvalidMove(format!("{} is not two sides of tile {} at {}", mv.index, mv.tile, mv.from))),
    }
}

/// Applies moves in order, returning every intermediate path (start included).
pub fn replay(c: &Complex, path: &Path, moves: &[Move]) -> Result<Vec<Path>> {
    let mut out = vec![path.clone()];
    for mv in moves {
        let next = apply_move(c, out.last().unwrap(), mv)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Point;

    fn level2() -> Complex {
        crate::build(2).unwrap()
    }

    fn pts(c: &Complex) -> [VertexId; 11] {
        c.tile_points(c.root()).unwrap()
    }

    fn p(c: &Complex, ps: &[Point]) -> Path {
        let x = pts(c);
        Path::new(c, ps.iter().map(|q| x[q.index()]).collect()).unwrap()
    }

    #[test]
    fn backtrack_is_null() {
        let c = level2();
        use Point::*;
        assert!(is_null_form(&c, &p(&c, &[UL, U, UL])).unwrap());
        assert!(!is_null_form(&c, &p(&c, &[UL, U, A, L])).unwrap());
    }

    #[test]
    fn non_adjacent_vertices_are_rejected() {
        let c = level2();
        let x = pts(&c);
        assert!(Path::new(&c, vec![x[0], x[2]]).is_err());
    }

    #[test]
    fn two_sides_of_a_minimal_tile() {
        let c = level2();
        use Point::*;
        let path = p(&c, &[UL, U, A]);
        let moves = local_moves(&c, &path);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].to, pts(&c)[L.index()]);
        assert!(local_moves(&c, &p(&c, &[UL, U])).is_empty());
    }

    #[test]
    fn middle_flip() {
        let c = level2();
        use Point::*;
        let x = pts(&c);
        let moves = local_moves(&c, &p(&c, &[U, A, C]));
        assert!(moves.iter().any(|m| m.to == x[B.index()]));
        let out = apply_move(&c, &p(&c, &[U, A, C]), &moves[0]).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn bad_move_is_rejected() {
        let c = level2();
        use Point::*;
        let path = p(&c, &[UL, U, A]);
        let mut mv = local_moves(&c, &path)[0];
        mv.to = pts(&c)[B.index()];
        assert!(apply_move(&c, &path, &mv).is_err());
    }
}
