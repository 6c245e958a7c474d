//! Persistent combinatorial data of the complex.
//!
//! The complex is a graph whose faces are 4-cycles ("minimal tiles"), grouped
//! into a hierarchy of macrotiles. Every graph edge is the leaf of a binary
//! tree of macro-edges: when a segment is bisected it keeps its record and
//! gains a midpoint and two halves, which inherit its owner and type. The
//! macro-edge a graph edge lies on is the root of that tree.
//!
//! Levels are never stored. A tile born at `birth_level` during round `r`
//! has level `birth_level + (round - r)`, and an edge has its owner's level.

mod ids;
mod kind;
mod rotation;
mod rules;
mod validate;

pub use ids::{EdgeId, PlaneId, TileId, VertexId};
pub use kind::{
    child_sides, half_sides, points_adjacent, ChildPos, CornerPos, InteriorLabel, Point, Position, SideLabel,
    VertexKind, CHILD_CYCLES, INTERIOR_EDGES,
};
pub use rotation::Rotation;
pub use rules::{RuleTable, RuleViolation};
pub use validate::{PlaneStats, StructuralReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pasting::PastingRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
    pub depth: i32,
    pub created_round: u32,
    pub owner: TileId,
    pub plane: PlaneId,
    /// The segment this vertex bisects, for side and edge-mid vertices.
    pub midpoint_of: Option<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacroEdge {
    pub id: EdgeId,
    /// 1..=8 interior, 9..=12 boundary (left, right, top, bottom).
    pub edge_type: u8,
    pub owner: TileId,
    pub endpoints: [VertexId; 2],
    pub a_side: Option<TileId>,
    pub b_side: Option<TileId>,
    pub midpoint: Option<VertexId>,
    /// `halves[0]` contains `endpoints[0]`, `halves[1]` contains `endpoints[1]`.
    pub halves: Option<[EdgeId; 2]>,
    pub parent: Option<EdgeId>,
    pub created_round: u32,
}

impl MacroEdge {
    pub fn is_boundary(&self) -> bool {
        self.edge_type >= 9
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.endpoints[0] == v {
            self.endpoints[1]
        } else {
            self.endpoints[0]
        }
    }

    pub fn has_endpoint(&self, v: VertexId) -> bool {
        self.endpoints.contains(&v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacroTile {
    pub id: TileId,
    /// Logical UL, UR, LR, LL.
    pub corners: [VertexId; 4],
    /// Top, right, bottom, left. Side `i` joins `corners[i]` and `corners[i + 1]`.
    pub sides: [EdgeId; 4],
    pub parent: Option<TileId>,
    pub position: Position,
    /// Quarter turns of the logical frame against the canonical child cycle.
    pub rotation: u8,
    pub created_round: u32,
    pub birth_level: u32,
    pub pasted: bool,
    pub core: Option<VertexId>,
    pub plane: PlaneId,
    pub children: Option<[TileId; 6]>,
    /// A, B, C once subdivided.
    pub interior: Option<[VertexId; 3]>,
}

impl MacroTile {
    pub fn level(&self, round: u32) -> Result<u32> {
        if round < self.created_round {
            return Err(Error::TileNotYetCreated { tile: self.id, round });
        }
        Ok(self.birth_level + (round - self.created_round))
    }

    pub fn is_minimal(&self) -> bool {
        self.children.is_none()
    }

    pub fn corner_index(&self, v: VertexId) -> Option<usize> {
        self.corners.iter().position(|&c| c == v)
    }

    pub fn child(&self, pos: ChildPos) -> Option<TileId> {
        self.children.map(|c| c[pos.index()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plane {
    pub id: PlaneId,
    /// Root tile of the plane: the initial tile or a pasted tile.
    pub tile: TileId,
    pub core: Option<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundKind {
    Subdivision,
    Pasting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLogEntry {
    pub round: u32,
    pub kind: RoundKind,
    pub vertices: usize,
    pub graph_edges: usize,
    pub tiles: usize,
    pub planes: usize,
}

/// The growing complex. Mutated only by whole subdivision or pasting steps.
#[derive(Clone, Debug)]
pub struct Complex {
    pub(crate) rules: RuleTable,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) macro_edges: Vec<MacroEdge>,
    pub(crate) tiles: Vec<MacroTile>,
    pub(crate) planes: Vec<Plane>,
    pub(crate) round: u32,
    pub(crate) max_depth: i32,
    pub(crate) pasting_log: Vec<PastingRecord>,
    pub(crate) rounds_log: Vec<RoundLogEntry>,
    /// Bumped on every mutation; pasting sites remember it.
    pub(crate) epoch: u64,
    pub(crate) graph_edge_count: usize,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    side_of: Vec<Vec<TileId>>,
    vertex_tiles: Vec<Vec<TileId>>,
}

pub(crate) struct NewVertex {
    pub kind: VertexKind,
    pub depth: i32,
    pub owner: TileId,
    pub plane: PlaneId,
    pub midpoint_of: Option<EdgeId>,
}

impl Complex {
    /// The level-1 complex: one 4-cycle.
    pub fn new(rules: RuleTable) -> Result<Complex> {
        let violations = rules.validate();
        if !violations.is_empty() {
            let msg: Vec<_> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidRules(msg.join("; ")));
        }
        let mut c = Complex {
            rules,
            vertices: Vec::new(),
            macro_edges: Vec::new(),
            tiles: Vec::new(),
            planes: Vec::new(),
            round: 0,
            max_depth: -1,
            pasting_log: Vec::new(),
            rounds_log: Vec::new(),
            epoch: 0,
            graph_edge_count: 0,
            adjacency: Vec::new(),
            side_of: Vec::new(),
            vertex_tiles: Vec::new(),
        };
        let root = TileId(0);
        let plane = PlaneId(0);
        let corners = CornerPos::ALL.map(|p| {
            c.push_vertex(NewVertex { kind: VertexKind::Corner(p), depth: -1, owner: root, plane, midpoint_of: None })
        });
        let sides = [0usize, 1, 2, 3].map(|i| {
            let ty = SideLabel::from_index(i).boundary_type();
            let e = c.push_macro_edge(ty, root, [corners[i], corners[(i + 1) % 4]], None, 0);
            c.link(corners[i], corners[(i + 1) % 4], e);
            e
        });
        c.planes.push(Plane { id: plane, tile: root, core: None });
        c.push_tile(MacroTile {
            id: root,
            corners,
            sides,
            parent: None,
            position: Position::Root,
            rotation: 0,
            created_round: 0,
            birth_level: 1,
            pasted: false,
            core: None,
            plane,
            children: None,
            interior: None,
        });
        Ok(c)
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn max_depth(&self) -> i32 {
        self.max_depth
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// Level of the whole complex: 1 + number of subdivision rounds.
    pub fn level(&self) -> u32 {
        self.round + 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn macro_edges(&self) -> &[MacroEdge] {
        &self.macro_edges
    }

    pub fn tiles(&self) -> &[MacroTile] {
        &self.tiles
    }

    pub fn planes(&self) -> &[Plane] {
        &self.planes
    }

    pub fn pasting_log(&self) -> &[PastingRecord] {
        &self.pasting_log
    }

    pub fn rounds_log(&self) -> &[RoundLogEntry] {
        &self.rounds_log
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_graph_edges(&self) -> usize {
        self.graph_edge_count
    }

    pub fn root(&self) -> TileId {
        TileId(0)
    }

    pub fn vertex(&self, v: VertexId) -> Result<&Vertex> {
        self.vertices.get(v.index()).ok_or(Error::UnknownVertex(v))
    }

    pub fn tile(&self, t: TileId) -> Result<&MacroTile> {
        self.tiles.get(t.index()).ok_or(Error::UnknownTile(t))
    }

    pub fn edge(&self, e: EdgeId) -> &MacroEdge {
        &self.macro_edges[e.index()]
    }

    pub(crate) fn v(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.index()]
    }

    pub(crate) fn t(&self, t: TileId) -> &MacroTile {
        &self.tiles[t.index()]
    }

    pub fn tile_level(&self, t: TileId, round: u32) -> Result<u32> {
        self.tile(t)?.level(round)
    }

    /// Level at the current round.
    pub fn level_of(&self, t: TileId) -> u32 {
        let tile = self.t(t);
        tile.birth_level + (self.round - tile.created_round)
    }

    pub fn edge_level(&self, e: EdgeId, round: u32) -> Result<u32> {
        let edge = self.macro_edges.get(e.index()).ok_or(Error::EdgeNotYetCreated(e))?;
        if round < edge.created_round {
            return Err(Error::EdgeNotYetCreated(e));
        }
        self.tile_level(edge.owner, round)
    }

    pub fn edge_level_now(&self, e: EdgeId) -> u32 {
        self.level_of(self.edge(e).owner)
    }

    /// The macro-edge a segment lies on: the root of its split tree.
    pub fn carrying_edge(&self, mut e: EdgeId) -> EdgeId {
        while let Some(p) = self.edge(e).parent {
            e = p;
        }
        e
    }

    /// Plane the segment was drawn in.
    pub fn home_plane(&self, e: EdgeId) -> PlaneId {
        self.t(self.edge(e).owner).plane
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    /// The leaf segment joining `u` and `w`, if they are adjacent.
    pub fn graph_edge(&self, u: VertexId, w: VertexId) -> Option<EdgeId> {
        self.adjacency.get(u.index())?.iter().find(|&&(n, _)| n == w).map(|&(_, e)| e)
    }

    /// All tiles, at any level, having `v` as a corner.
    pub fn tiles_at(&self, v: VertexId) -> &[TileId] {
        &self.vertex_tiles[v.index()]
    }

    /// Tiles having the segment as a side.
    pub fn tiles_on_side(&self, e: EdgeId) -> &[TileId] {
        &self.side_of[e.index()]
    }

    pub fn minimal_tiles(&self) -> impl Iterator<Item = &MacroTile> + '_ {
        self.tiles.iter().filter(|t| t.is_minimal())
    }

    /// Minimal tiles containing the graph edge `u-w` as a side.
    pub fn faces_of_edge(&self, u: VertexId, w: VertexId) -> impl Iterator<Item = TileId> + '_ {
        self.vertex_tiles[u.index()].iter().copied().filter(move |&t| {
            let tile = self.t(t);
            if !tile.is_minimal() {
                return false;
            }
            let i = tile.corner_index(u).unwrap();
            tile.corners[(i + 1) % 4] == w || tile.corners[(i + 3) % 4] == w
        })
    }

    /// Vertices along a segment starting from one of its endpoints.
    pub fn side_chain(&self, e: EdgeId, from: VertexId) -> Vec<VertexId> {
        let mut out = vec![from];
        self.extend_chain(e, from, &mut out);
        out
    }

    fn extend_chain(&self, e: EdgeId, from: VertexId, out: &mut Vec<VertexId>) {
        let edge = self.edge(e);
        match (edge.halves, edge.midpoint) {
            (Some([h0, h1]), Some(m)) => {
                let (first, second) = if edge.endpoints[0] == from { (h0, h1) } else { (h1, h0) };
                self.extend_chain(first, from, out);
                self.extend_chain(second, m, out);
            }
            _ => out.push(edge.other(from)),
        }
    }

    /// Vertices along side `i` of a tile, from corner `i` to corner `i + 1`.
    pub fn tile_side_chain(&self, t: TileId, i: usize) -> Vec<VertexId> {
        let tile = self.t(t);
        self.side_chain(tile.sides[i % 4], tile.corners[i % 4])
    }

    /// Boundary cycle of a tile starting at its UL corner (first vertex not repeated).
    pub fn tile_boundary(&self, t: TileId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for i in 0..4 {
            let chain = self.tile_side_chain(t, i);
            out.extend_from_slice(&chain[..chain.len() - 1]);
        }
        out
    }

    /// Whether `v` lies on the segment `e` (endpoints included).
    pub fn lies_on(&self, v: VertexId, e: EdgeId) -> bool {
        if self.edge(e).has_endpoint(v) {
            return true;
        }
        let mut cur = self.v(v).midpoint_of;
        while let Some(s) = cur {
            if s == e {
                return true;
            }
            cur = self.edge(s).parent;
        }
        false
    }

    pub fn on_tile_boundary(&self, v: VertexId, t: TileId) -> bool {
        self.t(t).sides.iter().any(|&s| self.lies_on(v, s))
    }

    /// The tile followed by its ancestors, innermost first.
    pub fn tile_ancestors(&self, t: TileId) -> impl Iterator<Item = TileId> + '_ {
        std::iter::successors(Some(t), move |&x| self.t(x).parent)
    }

    /// Every macrotile whose region contains `v`, sorted by id.
    pub fn tiles_containing(&self, v: VertexId) -> Vec<TileId> {
        let mut out: Vec<TileId> = self.vertex_tiles[v.index()].iter().flat_map(|&t| self.tile_ancestors(t)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn strictly_inside(&self, v: VertexId, t: TileId) -> bool {
        !self.on_tile_boundary(v, t) && self.tile_ancestors_contain(v, t)
    }

    fn tile_ancestors_contain(&self, v: VertexId, t: TileId) -> bool {
        self.vertex_tiles[v.index()].iter().any(|&x| self.tile_ancestors(x).any(|a| a == t))
    }

    /// The eleven points of a subdivided tile, indexed by `Point`.
    pub fn tile_points(&self, t: TileId) -> Option<[VertexId; 11]> {
        let tile = self.t(t);
        let interior = tile.interior?;
        let mut p = [VertexId(0); 11];
        for i in 0..4 {
            p[i] = tile.corners[i];
            p[4 + i] = self.edge(tile.sides[i]).midpoint?;
        }
        p[8..11].copy_from_slice(&interior);
        Some(p)
    }

    /// Which point of tile `t` the vertex is, if any.
    pub fn point_of(&self, t: TileId, v: VertexId) -> Option<Point> {
        let pts = self.tile_points(t)?;
        pts.iter().position(|&x| x == v).map(|i| Point::ALL[i])
    }

    /// Planes in which the graph edge `u-w` bounds a minimal tile.
    pub fn edge_planes(&self, u: VertexId, w: VertexId) -> Vec<PlaneId> {
        let mut p: Vec<_> = self.faces_of_edge(u, w).map(|t| self.t(t).plane).collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// The pasted tile rooted in `plane`, if the plane is not the base plane.
    pub fn pasted_tile_of_plane(&self, plane: PlaneId) -> Option<TileId> {
        let p = self.planes.get(plane.index())?;
        self.t(p.tile).pasted.then_some(p.tile)
    }

    // ---- mutation primitives -------------------------------------------

    pub(crate) fn push_vertex(&mut self, nv: NewVertex) -> VertexId {
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(Vertex {
            id,
            kind: nv.kind,
            depth: nv.depth,
            created_round: self.round,
            owner: nv.owner,
            plane: nv.plane,
            midpoint_of: nv.midpoint_of,
        });
        self.adjacency.push(Vec::new());
        self.vertex_tiles.push(Vec::new());
        self.epoch += 1;
        id
    }

    pub(crate) fn push_macro_edge(
        &mut self,
        edge_type: u8,
        owner: TileId,
        endpoints: [VertexId; 2],
        parent: Option<EdgeId>,
        created_round: u32,
    ) -> EdgeId {
        let id = EdgeId(self.macro_edges.len() as u32);
        let (a_side, b_side) = match parent {
            Some(p) => (self.edge(p).a_side, self.edge(p).b_side),
            None => (None, None),
        };
        self.macro_edges.push(MacroEdge {
            id,
            edge_type,
            owner,
            endpoints,
            a_side,
            b_side,
            midpoint: None,
            halves: None,
            parent,
            created_round,
        });
        self.side_of.push(Vec::new());
        self.epoch += 1;
        id
    }

    pub(crate) fn push_tile(&mut self, tile: MacroTile) -> TileId {
        let id = tile.id;
        debug_assert_eq!(id.index(), self.tiles.len());
        for &c in &tile.corners {
            self.vertex_tiles[c.index()].push(id);
        }
        for &s in &tile.sides {
            self.side_of[s.index()].push(id);
        }
        self.tiles.push(tile);
        self.epoch += 1;
        id
    }

    pub(crate) fn next_tile_id(&self) -> TileId {
        TileId(self.tiles.len() as u32)
    }

    pub(crate) fn link(&mut self, u: VertexId, w: VertexId, e: EdgeId) {
        debug_assert!(self.graph_edge(u, w).is_none(), "duplicate graph edge {u}-{w}");
        self.adjacency[u.index()].push((w, e));
        self.adjacency[w.index()].push((u, e));
        self.graph_edge_count += 1;
    }

    pub(crate) fn unlink(&mut self, u: VertexId, w: VertexId) {
        self.adjacency[u.index()].retain(|&(n, _)| n != w);
        self.adjacency[w.index()].retain(|&(n, _)| n != u);
        self.graph_edge_count -= 1;
    }

    /// Bisects an unsplit segment with a new vertex.
    pub(crate) fn bisect(&mut self, e: EdgeId, nv: NewVertex) -> VertexId {
        let [a, b] = self.edge(e).endpoints;
        let (ty, owner) = (self.edge(e).edge_type, self.edge(e).owner);
        let m = self.push_vertex(NewVertex { midpoint_of: Some(e), ..nv });
        let round = self.round;
        let h0 = self.push_macro_edge(ty, owner, [a, m], Some(e), round);
        let h1 = self.push_macro_edge(ty, owner, [m, b], Some(e), round);
        let edge = &mut self.macro_edges[e.index()];
        edge.midpoint = Some(m);
        edge.halves = Some([h0, h1]);
        self.unlink(a, b);
        self.link(a, m, h0);
        self.link(m, b, h1);
        m
    }

    pub(crate) fn set_children(&mut self, t: TileId, children: [TileId; 6], interior: [VertexId; 3]) {
        let tile = &mut self.tiles[t.index()];
        tile.children = Some(children);
        tile.interior = Some(interior);
    }

    pub(crate) fn set_edge_sides(&mut self, e: EdgeId, a: TileId, b: TileId) {
        let edge = &mut self.macro_edges[e.index()];
        edge.a_side = Some(a);
        edge.b_side = Some(b);
    }

    pub(crate) fn push_plane(&mut self, tile: TileId, core: Option<VertexId>) -> PlaneId {
        let id = PlaneId(self.planes.len() as u32);
        self.planes.push(Plane { id, tile, core });
        id
    }

    pub(crate) fn log_round(&mut self, kind: RoundKind) {
        self.rounds_log.push(RoundLogEntry {
            round: self.round,
            kind,
            vertices: self.vertices.len(),
            graph_edges: self.graph_edge_count,
            tiles: self.tiles.len(),
            planes: self.planes.len(),
        });
    }

    /// Rebuilds a complex from its persistent tables.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        rules: RuleTable,
        vertices: Vec<Vertex>,
        macro_edges: Vec<MacroEdge>,
        tiles: Vec<MacroTile>,
        planes: Vec<Plane>,
        round: u32,
        max_depth: i32,
        pasting_log: Vec<PastingRecord>,
        rounds_log: Vec<RoundLogEntry>,
    ) -> Result<Complex> {
        let nv = vertices.len();
        let ne = macro_edges.len();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.index() != i {
                return Err(Error::Document(format!("vertex table out of order at {i}")));
            }
        }
        for (i, e) in macro_edges.iter().enumerate() {
            if e.id.index() != i || e.endpoints.iter().any(|v| v.index() >= nv) {
                return Err(Error::Document(format!("bad macro-edge record at {i}")));
            }
        }
        let mut c = Complex {
            rules,
            vertices,
            macro_edges,
            tiles: Vec::with_capacity(tiles.len()),
            planes,
            round,
            max_depth,
            pasting_log,
            rounds_log,
            epoch: 0,
            graph_edge_count: 0,
            adjacency: vec![Vec::new(); nv],
            side_of: vec![Vec::new(); ne],
            vertex_tiles: vec![Vec::new(); nv],
        };
        for i in 0..ne {
            let e = &c.macro_edges[i];
            if e.halves.is_none() {
                let [a, b] = e.endpoints;
                if a == b || c.graph_edge(a, b).is_some() {
                    return Err(Error::Document(format!("duplicate graph edge {a}-{b}")));
                }
                let id = e.id;
                c.link(a, b, id);
            }
        }
        for (i, t) in tiles.into_iter().enumerate() {
            if t.id.index() != i || t.corners.iter().any(|v| v.index() >= nv) || t.sides.iter().any(|e| e.index() >= ne)
            {
                return Err(Error::Document(format!("bad tile record at {i}")));
            }
            c.push_tile(t);
        }
        c.epoch = 0;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_complex() {
        let c = Complex::new(RuleTable::default()).unwrap();
        assert_eq!(c.num_vertices(), 4);
        assert_eq!(c.num_graph_edges(), 4);
        assert_eq!(c.tile_level(c.root(), 0).unwrap(), 1);
        assert!(c.vertices().iter().all(|v| v.depth == -1));
        let types: Vec<_> = c.t(c.root()).sides.iter().map(|&s| c.edge(s).edge_type).collect();
        assert_eq!(types, vec![11, 10, 12, 9]);
    }

    #[test]
    fn tile_level_before_creation_is_an_error() {
        let c = Complex::new(RuleTable::default()).unwrap();
        let mut t = c.t(c.root()).clone();
        t.created_round = 2;
        assert!(matches!(t.level(1), Err(Error::TileNotYetCreated { .. })));
    }
}
