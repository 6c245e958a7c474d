//! Pastings: new level-2 tiles glued in fresh planes along 4-edge paths
//! `X1 X2 Y Z2 Z1`, where `Y` becomes the upper-left corner (the core).

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Complex, CornerPos, EdgeId, InteriorLabel, MacroTile, NewVertex, PlaneId, Position, RoundKind, SideLabel, TileId,
    VertexId, VertexKind,
};
use crate::par::{self, Exec};
use crate::subdivision::build_children;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PastingSite {
    pub x1: VertexId,
    pub x2: VertexId,
    pub y: VertexId,
    pub z2: VertexId,
    pub z1: VertexId,
    /// Owners of the segments `Y-X1` and `Y-Z1`.
    pub hosts: Vec<TileId>,
    pub base_plane: PlaneId,
    /// Complex epoch at enumeration time.
    pub epoch: u64,
}

impl PastingSite {
    pub fn path(&self) -> [VertexId; 5] {
        [self.x1, self.x2, self.y, self.z2, self.z1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PastingRecord {
    pub site: PastingSite,
    pub round: u32,
    pub tile: TileId,
    pub plane: PlaneId,
    pub t1: VertexId,
    pub t2: VertexId,
    pub t3: VertexId,
    pub ta: VertexId,
    pub tb: VertexId,
    pub tc: VertexId,
    /// Macro-edges created by the pasting, in creation order.
    pub macro_edges: Vec<EdgeId>,
    /// Graph edges leaving the attaching sides into the new plane, attaching end first.
    pub entries: Vec<(VertexId, VertexId)>,
}

/// One incident graph edge of a vertex, with its place in the numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncomingEdge {
    pub neighbor: VertexId,
    pub edge: EdgeId,
    pub level: u32,
    pub plane: PlaneId,
}

fn core_class(kind: VertexKind) -> u8 {
    match kind {
        VertexKind::Interior(InteriorLabel::C) => 1,
        VertexKind::Interior(InteriorLabel::A) => 2,
        VertexKind::Interior(InteriorLabel::B) => 3,
        _ => 0,
    }
}

const MAX_INHERIT_DEPTH: usize = 16;

impl Complex {
    /// Total order on the graph edges at `v`.
    ///
    /// Edges drawn in `v`'s own plane come first, by level (highest first)
    /// and then clockwise from the highest-level, lowest-type edge. Edges
    /// into pasted planes follow, grouped by pasting core.
    pub fn incoming_edge_order(&self, v: VertexId) -> Result<Vec<IncomingEdge>> {
        self.vertex(v)?;
        Ok(self.incoming_order_at(v, 0))
    }

    /// Position of the graph edge `v-w` in `incoming_edge_order(v)`.
    pub fn incoming_rank(&self, v: VertexId, w: VertexId) -> Result<usize> {
        self.incoming_order_at(v, 0).iter().position(|e| e.neighbor == w).ok_or(Error::NotIncident(v, w))
    }

    fn incoming_order_at(&self, v: VertexId, nesting: usize) -> Vec<IncomingEdge> {
        let own = self.v(v).plane;
        let all: Vec<IncomingEdge> = self
            .neighbors(v)
            .iter()
            .map(|&(w, e)| IncomingEdge {
                neighbor: w,
                edge: e,
                level: self.edge_level_now(e),
                plane: self.home_plane(e),
            })
            .collect();
        let (mut planar, pasted): (Vec<_>, Vec<_>) = all.into_iter().partition(|e| e.plane == own);

        let rot = self.rotation_in(v, own).map(|r| r.order).unwrap_or_default();
        let start = planar
            .iter()
            .min_by_key(|e| (Reverse(e.level), self.edge(e.edge).edge_type, e.neighbor))
            .map(|e| e.neighbor);
        let start_at = start.and_then(|s| rot.iter().position(|&x| x == s)).unwrap_or(0);
        let clockwise = |w: VertexId| match rot.iter().position(|&x| x == w) {
            Some(i) => (i + rot.len() - start_at) % rot.len(),
            None => usize::MAX,
        };
        planar.sort_by_key(|e| (Reverse(e.level), clockwise(e.neighbor), e.neighbor));

        let mut keyed: Vec<_> = pasted
            .into_iter()
            .map(|e| {
                let core = self.planes[e.plane.index()].core;
                let (depth, class, core_id) = match core {
                    Some(y) => (self.v(y).depth, core_class(self.v(y).kind), y.0),
                    None => (i32::MAX, u8::MAX, u32::MAX),
                };
                let inherited = self.inherited_rank(v, e.plane, nesting);
                let key = (depth, class, core_id, inherited, Reverse(e.level), self.edge(e.edge).edge_type, e.neighbor);
                (key, e)
            })
            .collect();
        keyed.sort_by_key(|a| a.0);
        planar.extend(keyed.into_iter().map(|(_, e)| e));
        planar
    }

    /// Rank, at the core, of the attaching side that `v` is not on.
    fn inherited_rank(&self, v: VertexId, plane: PlaneId, nesting: usize) -> usize {
        let Some(tile) = self.pasted_tile_of_plane(plane) else {
            return usize::MAX;
        };
        if nesting >= MAX_INHERIT_DEPTH {
            return usize::MAX;
        }
        let t = self.t(tile);
        let core = t.corners[0];
        let (top, left) = (t.sides[0], t.sides[3]);
        let other = if self.lies_on(v, top) { left } else { top };
        let chain = self.side_chain(other, core);
        let first = chain[1];
        self.incoming_order_at(core, nesting + 1).iter().position(|e| e.neighbor == first).unwrap_or(usize::MAX)
    }

    /// Every pasting site of the current complex, sorted by `(y, x1, z1)`.
    pub fn enumerate_pasting_sites(&self) -> Vec<PastingSite> {
        self.enumerate_pasting_sites_with(Exec::default())
    }

    pub fn enumerate_pasting_sites_with(&self, exec: Exec) -> Vec<PastingSite> {
        let k = self.max_depth;
        let cores: Vec<VertexId> = self.vertices.iter().filter(|v| v.depth == k - 2).map(|v| v.id).collect();
        let mut sites = par::flat_map(exec, &cores, |&y| self.sites_at(y));
        sites.sort_by_key(|s| (s.y, s.x1, s.z1));
        sites
    }

    /// Arms at `y`: `(x2, x1, segment)` with `x2` bisecting the segment `y-x1`.
    fn arms(&self, y: VertexId) -> Vec<(VertexId, VertexId, EdgeId)> {
        let k = self.max_depth;
        let mut out = Vec::new();
        for &(x2, _) in self.neighbors(y) {
            let m = self.v(x2);
            if m.depth != k || !m.kind.is_side_or_edge_mid() {
                continue;
            }
            let Some(seg) = m.midpoint_of else { continue };
            let edge = self.edge(seg);
            if !edge.has_endpoint(y) {
                continue;
            }
            let x1 = edge.other(y);
            let far = self.v(x1);
            if far.depth == k - 1 && far.kind.is_side_or_edge_mid() {
                out.push((x2, x1, seg));
            }
        }
        out
    }

    fn three_corners_of_a_tile(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        self.tiles_at(b).iter().any(|&t| {
            let corners = &self.t(t).corners;
            corners.contains(&a) && corners.contains(&c)
        })
    }

    fn sites_at(&self, y: VertexId) -> Vec<PastingSite> {
        let arms = self.arms(y);
        let mut out = Vec::new();
        let mut order: Option<Vec<IncomingEdge>> = None;
        for i in 0..arms.len() {
            for j in i + 1..arms.len() {
                let (p, q) = (arms[i], arms[j]);
                if p.1 == q.1 || self.three_corners_of_a_tile(p.1, y, q.1) {
                    continue;
                }
                let (lp, lq) =
                    (self.edge_level_now(self.carrying_edge(p.2)), self.edge_level_now(self.carrying_edge(q.2)));
                let p_first = match lp.cmp(&lq) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => {
                        let order = order.get_or_insert_with(|| self.incoming_order_at(y, 0));
                        let rank = |x2: VertexId| order.iter().position(|e| e.neighbor == x2);
                        rank(p.0) < rank(q.0)
                    }
                };
                let (x, z) = if p_first { (p, q) } else { (q, p) };
                let mut hosts = vec![self.edge(x.2).owner, self.edge(z.2).owner];
                hosts.sort_unstable();
                hosts.dedup();
                out.push(PastingSite {
                    x1: x.1,
                    x2: x.0,
                    y,
                    z2: z.0,
                    z1: z.1,
                    hosts,
                    base_plane: self.t(self.v(y).owner).plane,
                    epoch: self.epoch,
                });
            }
        }
        out
    }

    /// Glues a pasted tile along a site enumerated on this exact complex.
    pub fn apply_pasting(&mut self, site: &PastingSite) -> Result<PastingRecord> {
        if site.epoch != self.epoch {
            return Err(Error::StaleSite);
        }
        self.paste(site)
    }

    fn paste(&mut self, site: &PastingSite) -> Result<PastingRecord> {
        let seg_of = |c: &Complex, mid: VertexId, far: VertexId| -> Result<EdgeId> {
            let m = c.vertex(mid)?;
            let seg = m.midpoint_of.ok_or_else(|| Error::InvalidSite(format!("{mid} bisects nothing")))?;
            let e = c.edge(seg);
            if !(e.has_endpoint(site.y) && e.has_endpoint(far)) {
                return Err(Error::InvalidSite(format!("{mid} does not bisect {}-{far}", site.y)));
            }
            Ok(seg)
        };
        let top = seg_of(self, site.x2, site.x1)?;
        let left = seg_of(self, site.z2, site.z1)?;

        let k = self.max_depth;
        let round = self.round;
        let tile = self.next_tile_id();
        let plane = self.push_plane(tile, Some(site.y));
        let new = |kind, depth| NewVertex { kind, depth, owner: tile, plane, midpoint_of: None };

        let t1 = self.push_vertex(new(VertexKind::Corner(CornerPos::LR), k - 1));
        let right = self.push_macro_edge(SideLabel::R.boundary_type(), tile, [site.x1, t1], None, round);
        self.link(site.x1, t1, right);
        let bottom = self.push_macro_edge(SideLabel::D.boundary_type(), tile, [t1, site.z1], None, round);
        self.link(t1, site.z1, bottom);
        self.push_tile(MacroTile {
            id: tile,
            corners: [site.y, site.x1, t1, site.z1],
            sides: [top, right, bottom, left],
            parent: None,
            position: Position::Pasted,
            rotation: 0,
            created_round: round,
            birth_level: 2,
            pasted: true,
            core: Some(site.y),
            plane,
            children: None,
            interior: None,
        });
        let t2 = self.bisect(right, new(VertexKind::EdgeMid(SideLabel::R), k));
        let t3 = self.bisect(bottom, new(VertexKind::EdgeMid(SideLabel::D), k));
        let [ta, tb, tc] = [InteriorLabel::A, InteriorLabel::B, InteriorLabel::C]
            .map(|l| self.push_vertex(new(VertexKind::Interior(l), k)));

        let first_edge = right.0;
        let pts = [site.y, site.x1, t1, site.z1, site.x2, t2, t3, site.z2, ta, tb, tc];
        build_children(self, tile, &pts, plane, round, |_| {});
        let macro_edges = (first_edge..self.macro_edges.len() as u32).map(EdgeId).collect();
        let entries = self.entry_edges(tile);
        let record =
            PastingRecord { site: site.clone(), round, tile, plane, t1, t2, t3, ta, tb, tc, macro_edges, entries };
        self.pasting_log.push(record.clone());
        Ok(record)
    }

    /// Graph edges from the top or left side of a pasted tile into its plane,
    /// as `(attaching vertex, inner vertex)`, sorted.
    pub fn entry_edges(&self, tile: TileId) -> Vec<(VertexId, VertexId)> {
        let t = self.t(tile);
        if !t.pasted {
            return Vec::new();
        }
        let mut attach: BTreeSet<VertexId> = BTreeSet::new();
        attach.extend(self.tile_side_chain(tile, 0));
        attach.extend(self.tile_side_chain(tile, 3));
        let mut out = Vec::new();
        for &v in &attach {
            for &(w, e) in self.neighbors(v) {
                if self.home_plane(e) == t.plane && !attach.contains(&w) {
                    out.push((v, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Enumerates the sites of the current complex and pastes all of them.
    pub fn pasting_round(&mut self) -> Vec<PastingRecord> {
        let sites = self.enumerate_pasting_sites();
        let records = sites.iter().map(|s| self.paste(s).expect("enumerated site is valid")).collect();
        self.log_round(RoundKind::Pasting);
        records
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RuleTable;

    fn after_rounds(n: u32) -> Complex {
        let mut c = Complex::new(RuleTable::default()).unwrap();
        for _ in 0..n {
            c.subdivide_round();
        }
        c
    }

    /// Naive re-check of a site against the five conditions.
    fn check_site(c: &Complex, s: &PastingSite) -> std::result::Result<(), String> {
        let k = c.max_depth();
        let d = |v: VertexId| c.v(v).depth;
        let kind = |v: VertexId| c.v(v).kind;
        for (a, b) in [(s.x1, s.x2), (s.x2, s.y), (s.y, s.z2), (s.z2, s.z1)] {
            if c.graph_edge(a, b).is_none() {
                return Err(format!("{a}-{b} not an edge"));
            }
        }
        for t in c.tiles() {
            let n = [s.x1, s.y, s.z1].iter().filter(|v| t.corners.contains(v)).count();
            if n == 3 {
                return Err(format!("three corners of {}", t.id));
            }
        }
        for x in [s.x1, s.z1] {
            if d(x) != k - 1 || !kind(x).is_side_or_edge_mid() {
                return Err(format!("{x} fails the far-end condition"));
            }
        }
        for (m, far) in [(s.x2, s.x1), (s.z2, s.z1)] {
            let seg = c.v(m).midpoint_of.ok_or("no segment")?;
            if d(m) != k || c.v(m).created_round != c.round() || !c.edge(seg).has_endpoint(far) {
                return Err(format!("{m} fails the midpoint condition"));
            }
        }
        if d(s.y) != k - 2 {
            return Err("core depth".into());
        }
        let lx = c.edge_level_now(c.carrying_edge(c.v(s.x2).midpoint_of.unwrap()));
        let lz = c.edge_level_now(c.carrying_edge(c.v(s.z2).midpoint_of.unwrap()));
        let ok = lx > lz || (lx == lz && c.incoming_rank(s.y, s.x2).unwrap() < c.incoming_rank(s.y, s.z2).unwrap());
        if !ok {
            return Err("orientation".into());
        }
        Ok(())
    }

    #[test]
    fn first_sites_satisfy_conditions() {
        let c = after_rounds(3);
        let sites = c.enumerate_pasting_sites();
        assert!(!sites.is_empty());
        for s in &sites {
            check_site(&c, s).unwrap_or_else(|e| panic!("{s:?}: {e}"));
        }
        let mut unordered = BTreeSet::new();
        for s in &sites {
            assert!(unordered.insert((s.y, s.x1.min(s.z1), s.x1.max(s.z1))), "duplicate site");
        }
    }

    #[test]
    fn sequential_and_parallel_enumeration_agree() {
        let c = after_rounds(3);
        assert_eq!(c.enumerate_pasting_sites_with(Exec::Sequential), c.enumerate_pasting_sites_with(Exec::Parallel));
    }

    #[test]
    fn pasting_adds_six_vertices_twelve_edges_one_plane() {
        let mut c = after_rounds(3);
        let site = c.enumerate_pasting_sites()[0].clone();
        let (v, e, p) = (c.num_vertices(), c.num_graph_edges(), c.planes().len());
        let rec = c.apply_pasting(&site).unwrap();
        assert_eq!(c.num_vertices() - v, 6);
        assert_eq!(c.num_graph_edges() - e, 12);
        assert_eq!(c.planes().len() - p, 1);
        assert_eq!(rec.entries.len(), 6);
        let k = c.max_depth();
        assert_eq!(c.v(rec.t1).depth, k - 1);
        assert_eq!(c.v(rec.t1).kind, VertexKind::Corner(CornerPos::LR));
        for t in [rec.t2, rec.t3, rec.ta, rec.tb, rec.tc] {
            assert_eq!(c.v(t).depth, k);
        }
        let report = c.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        let stats = &report.planes[rec.plane.index()];
        assert_eq!((stats.vertices, stats.edges, stats.faces), (11, 16, 6));
    }

    #[test]
    fn stale_site_is_rejected() {
        let mut c = after_rounds(3);
        let sites = c.enumerate_pasting_sites();
        assert!(sites.len() >= 2);
        c.apply_pasting(&sites[0]).unwrap();
        assert!(matches!(c.apply_pasting(&sites[1]), Err(Error::StaleSite)));
    }

    #[test]
    fn pasted_tile_level_grows() {
        let mut c = after_rounds(3);
        let recs = c.pasting_round();
        let t = recs[0].tile;
        assert_eq!(c.level_of(t), 2);
        c.subdivide_round();
        assert_eq!(c.level_of(t), 3);
        let r = c.validate();
        assert!(r.is_ok(), "{:?}", r.violations.iter().take(5).collect::<Vec<_>>());
    }

    #[test]
    fn incoming_order_is_total() {
        let mut c = after_rounds(3);
        c.pasting_round();
        c.subdivide_round();
        c.pasting_round();
        for v in c.vertices() {
            let order = c.incoming_edge_order(v.id).unwrap();
            assert_eq!(order.len(), c.degree(v.id));
            let distinct: BTreeSet<_> = order.iter().map(|e| e.neighbor).collect();
            assert_eq!(distinct.len(), order.len());
            for w in order.windows(2) {
                if w[0].plane == v.plane && w[1].plane == v.plane {
                    assert!(w[0].level >= w[1].level);
                }
            }
        }
    }

    #[test]
    fn cores_are_used_in_one_round_only() {
        let mut c = after_rounds(3);
        c.pasting_round();
        c.subdivide_round();
        c.pasting_round();
        let mut round_of = std::collections::BTreeMap::new();
        for r in c.pasting_log() {
            let prev = round_of.insert(r.site.y, r.round);
            assert!(prev.is_none() || prev == Some(r.round));
        }
        let k = c.max_depth();
        assert!(c.pasting_log().iter().filter(|r| r.round == c.round()).all(|r| c.v(r.site.y).depth == k - 2));
    }
}
