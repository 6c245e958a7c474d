//! Splitting minimal tiles into six children.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    half_sides, ChildPos, Complex, EdgeId, InteriorLabel, MacroTile, NewVertex, Point, Position, RoundKind, SideLabel,
    TileId, VertexId, VertexKind, INTERIOR_EDGES,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: u32,
    pub tiles_subdivided: usize,
    pub corners: usize,
    pub edge_mids: usize,
    pub sides: usize,
    pub interiors: usize,
    /// Created interior macro-edges per type 1..=8 (index 0 unused).
    pub edges_by_type: [usize; 9],
    pub split_edges: usize,
    pub max_depth: i32,
}

/// An open subdivision round. Vertices created through it get the round's depth.
pub struct Round<'a> {
    complex: &'a mut Complex,
    depth: i32,
    report: RoundReport,
}

impl Complex {
    /// Opens a new round: advances the round counter and the maximal depth.
    pub fn begin_round(&mut self) -> Round<'_> {
        self.round += 1;
        self.max_depth += 1;
        let depth = self.max_depth;
        let round = self.round;
        Round { complex: self, depth, report: RoundReport { round, max_depth: depth, ..Default::default() } }
    }

    /// Subdivides every minimal tile, in every plane.
    pub fn subdivide_round(&mut self) -> RoundReport {
        let minimal: Vec<TileId> = self.minimal_tiles().map(|t| t.id).collect();
        let mut round = self.begin_round();
        for t in minimal {
            round.subdivide_tile(t).expect("minimal tile subdivides");
        }
        round.finish()
    }
}

impl Round<'_> {
    pub fn complex(&self) -> &Complex {
        self.complex
    }

    pub fn finish(self) -> RoundReport {
        self.complex.log_round(RoundKind::Subdivision);
        self.report
    }

    /// Splits one minimal tile. Returns the children in `ChildPos` order.
    pub fn subdivide_tile(&mut self, t: TileId) -> Result<[TileId; 6]> {
        let c = &mut *self.complex;
        let tile = c.tile(t)?.clone();
        let round = c.round;
        if let Some(ch) = tile.children {
            return Err(if c.t(ch[0]).created_round == round {
                Error::AlreadySubdivided(t)
            } else {
                Error::NotMinimal(t)
            });
        }
        if tile.created_round == round {
            return Err(Error::NotMinimal(t));
        }

        let mut pts = [VertexId(0); 11];
        for i in 0..4 {
            pts[i] = tile.corners[i];
            let seg = tile.sides[i];
            pts[4 + i] = match c.edge(seg).midpoint {
                Some(m) => m,
                None => {
                    let kind = midpoint_kind(c, seg);
                    match kind {
                        VertexKind::Side(..) => self.report.sides += 1,
                        _ => self.report.edge_mids += 1,
                    }
                    self.report.split_edges += 1;
                    let owner = c.edge(seg).owner;
                    let plane = c.t(owner).plane;
                    c.bisect(seg, NewVertex { kind, depth: self.depth, owner, plane, midpoint_of: None })
                }
            };
        }
        for (j, label) in [InteriorLabel::A, InteriorLabel::B, InteriorLabel::C].into_iter().enumerate() {
            pts[8 + j] = c.push_vertex(NewVertex {
                kind: VertexKind::Interior(label),
                depth: self.depth,
                owner: t,
                plane: tile.plane,
                midpoint_of: None,
            });
        }
        self.report.interiors += 3;

        let report = &mut self.report;
        let children = build_children(c, t, &pts, tile.plane, round, |ty| {
            report.edges_by_type[ty as usize] += 1;
        });
        self.report.tiles_subdivided += 1;
        Ok(children)
    }
}

/// Kind of the vertex that will bisect `seg`.
fn midpoint_kind(c: &Complex, seg: EdgeId) -> VertexKind {
    let edge = c.edge(seg);
    let plane = c.t(edge.owner).plane;
    let in_plane: Vec<(TileId, SideLabel)> = c
        .tiles_on_side(seg)
        .iter()
        .map(|&t| c.t(t))
        .filter(|t| t.plane == plane)
        .map(|t| {
            let i = t.sides.iter().position(|&s| s == seg).unwrap();
            (t.id, SideLabel::from_index(i))
        })
        .collect();
    let first = in_plane.first().map(|x| x.1).unwrap_or(SideLabel::U);
    if edge.is_boundary() {
        return VertexKind::EdgeMid(first);
    }
    let root = c.edge(c.carrying_edge(seg));
    let Some(a_child) = root.a_side else {
        return VertexKind::Side(first, first);
    };
    let on_a = |t: TileId| c.tile_ancestors(t).any(|x| x == a_child);
    let a = in_plane.iter().find(|x| on_a(x.0)).map(|x| x.1);
    let b = in_plane.iter().find(|x| !on_a(x.0)).map(|x| x.1);
    debug_assert!(a.is_some() && b.is_some(), "interior segment {seg} without two sides");
    VertexKind::Side(a.unwrap_or(first), b.unwrap_or(first))
}

/// Draws the interior edges of a tile whose eleven points exist, creates
/// its six children and records them on the tile.
pub(crate) fn build_children(
    c: &mut Complex,
    t: TileId,
    pts: &[VertexId; 11],
    plane: crate::model::PlaneId,
    round: u32,
    mut on_edge: impl FnMut(u8),
) -> [TileId; 6] {
    let tile = c.t(t).clone();
    let mut segs: BTreeMap<(Point, Point), EdgeId> = BTreeMap::new();
    let key = |p: Point, q: Point| if p <= q { (p, q) } else { (q, p) };

    for (i, (p, q)) in half_sides().into_iter().enumerate() {
        let side = c.edge(tile.sides[i / 2]);
        let halves = side.halves.expect("side split before children are built");
        let corner = if i % 2 == 0 { p } else { q };
        let h = if c.edge(halves[0]).has_endpoint(pts[corner.index()]) { halves[0] } else { halves[1] };
        segs.insert(key(p, q), h);
    }

    let rules = c.rules.clone();
    let mut interior_edges = [EdgeId(0); 8];
    for (slot, &(p, q)) in INTERIOR_EDGES.iter().enumerate() {
        let ty = rules.edge_type(slot);
        let e = c.push_macro_edge(ty, t, [pts[p.index()], pts[q.index()]], None, round);
        c.link(pts[p.index()], pts[q.index()], e);
        on_edge(ty);
        interior_edges[slot] = e;
        segs.insert(key(p, q), e);
    }

    let first = c.next_tile_id();
    let children: [TileId; 6] = std::array::from_fn(|i| TileId(first.0 + i as u32));
    for pos in ChildPos::ALL {
        let corners_p = rules.child_corners(pos);
        let corners = corners_p.map(|p| pts[p.index()]);
        let sides = [0usize, 1, 2, 3].map(|j| segs[&key(corners_p[j], corners_p[(j + 1) % 4])]);
        c.push_tile(MacroTile {
            id: children[pos.index()],
            corners,
            sides,
            parent: Some(t),
            position: Position::Child(pos),
            rotation: rules.rotation(pos).unwrap_or(0),
            created_round: round,
            birth_level: 1,
            pasted: false,
            core: None,
            plane,
            children: None,
            interior: None,
        });
    }
    for (slot, &e) in interior_edges.iter().enumerate() {
        let a = children[rules.a_side[slot].index()];
        let b = children
            .iter()
            .copied()
            .find(|&ch| ch != a && c.t(ch).sides.contains(&e))
            .expect("interior edge borders two children");
        c.set_edge_sides(e, a, b);
    }
    c.set_children(t, children, [pts[8], pts[9], pts[10]]);
    children
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RuleTable;

    fn level(n: u32) -> Complex {
        let mut c = Complex::new(RuleTable::default()).unwrap();
        for _ in 1..n {
            c.subdivide_round();
        }
        c
    }

    #[test]
    fn level_two_counts() {
        let c = level(2);
        assert_eq!(c.num_vertices(), 11);
        assert_eq!(c.num_graph_edges(), 16);
        assert_eq!(c.minimal_tiles().count(), 6);
        let r = c.validate();
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(r.base().euler(), 1);
    }

    #[test]
    fn level_three_counts() {
        let c = level(3);
        let r = c.validate();
        assert!(r.is_ok(), "{:?}", r.violations);
        let b = r.base();
        assert_eq!((b.vertices, b.edges, b.faces), (45, 80, 36));
    }

    #[test]
    fn new_vertices_in_first_round_have_depth_zero() {
        let c = level(2);
        assert!(c.vertices()[4..].iter().all(|v| v.depth == 0));
        assert_eq!(c.max_depth(), 0);
    }

    #[test]
    fn shared_midpoint_created_once() {
        let mut c = level(2);
        let before = c.num_vertices();
        let children = c.t(c.root()).children.unwrap();
        let (lu, mid) = (children[0], children[1]);
        let mut r = c.begin_round();
        r.subdivide_tile(lu).unwrap();
        let after_one = r.complex().num_vertices();
        r.subdivide_tile(mid).unwrap();
        let after_two = r.complex().num_vertices();
        r.finish();
        // LU: 4 mids + 3 interior; Middle shares the U-A midpoint with LU.
        assert_eq!(after_one - before, 7);
        assert_eq!(after_two - after_one, 6);
    }

    #[test]
    fn subdividing_twice_in_a_round_fails() {
        let mut c = level(2);
        let t = c.t(c.root()).children.unwrap()[2];
        let mut r = c.begin_round();
        r.subdivide_tile(t).unwrap();
        assert!(matches!(r.subdivide_tile(t), Err(Error::AlreadySubdivided(_))));
        assert!(matches!(r.subdivide_tile(TileId(0)), Err(Error::NotMinimal(_))));
        r.finish();
    }

    #[test]
    fn max_depth_rises_by_one_per_round() {
        let mut c = level(2);
        let d = c.max_depth();
        let r1 = c.subdivide_round();
        let r2 = c.subdivide_round();
        assert_eq!(r1.max_depth, d + 1);
        assert_eq!(r2.max_depth, d + 2);
        assert_eq!(c.max_depth(), d + 2);
    }

    #[test]
    fn levels_grow_with_rounds() {
        let c = level(3);
        assert_eq!(c.tile_level(c.root(), 2).unwrap(), 3);
        let e = c.t(c.root()).children.unwrap()[0];
        let interior = c.macro_edges().iter().find(|e| e.edge_type == 1 && e.owner == c.root()).unwrap();
        assert_eq!(c.edge_level(interior.id, 1).unwrap(), 2);
        assert_eq!(c.edge_level(interior.id, 2).unwrap(), 3);
        assert_eq!(c.tile_level(e, 2).unwrap(), 2);
        let boundary = c.t(c.root()).sides[0];
        assert_eq!(c.edge_level(boundary, 3).unwrap(), 4);
    }
}
