use std::collections::BTreeSet;

use super::{Complex, PlaneId, VertexId, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneStats {
    pub plane: PlaneId,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl PlaneStats {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub planes: Vec<PlaneStats>,
    pub violations: Vec<String>,
}

impl StructuralReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn base(&self) -> &PlaneStats {
        &self.planes[0]
    }
}

/// Vertices, edges and face count of one plane.
type PlaneParts = (BTreeSet<VertexId>, BTreeSet<(VertexId, VertexId)>, usize);

impl Complex {
    /// Checks the structural invariants. Never fails; violations are listed.
    pub fn validate(&self) -> StructuralReport {
        let mut violations = Vec::new();
        let mut per_plane: Vec<PlaneParts> = vec![(BTreeSet::new(), BTreeSet::new(), 0); self.planes.len()];

        for tile in self.minimal_tiles() {
            let entry = &mut per_plane[tile.plane.index()];
            entry.2 += 1;
            let distinct: BTreeSet<_> = tile.corners.iter().collect();
            if distinct.len() != 4 {
                violations.push(format!("tile {}: repeated corner", tile.id));
            }
            for i in 0..4 {
                let (a, b) = (tile.corners[i], tile.corners[(i + 1) % 4]);
                entry.0.insert(a);
                entry.1.insert((a.min(b), a.max(b)));
                let side = self.edge(tile.sides[i]);
                let matches_side = side.has_endpoint(a) && side.has_endpoint(b);
                if self.graph_edge(a, b).is_none() || !matches_side || side.halves.is_some() {
                    violations.push(format!("tile {}: minimal tile cycle broken at {a}-{b}", tile.id));
                }
            }
        }
        let planes = per_plane
            .iter()
            .enumerate()
            .map(|(i, (v, e, f))| PlaneStats { plane: PlaneId(i as u32), vertices: v.len(), edges: e.len(), faces: *f })
            .collect::<Vec<_>>();
        for p in &planes {
            if p.euler() != 1 {
                violations.push(format!("plane {}: Euler characteristic {}", p.plane, p.euler()));
            }
        }

        for v in &self.vertices {
            for &(w, e) in self.neighbors(v.id) {
                if w < v.id {
                    continue;
                }
                let home = self.home_plane(e);
                let faces = self.faces_of_edge(v.id, w).filter(|&t| self.t(t).plane == home).count();
                let any = self.faces_of_edge(v.id, w).next().is_some();
                if !any {
                    violations.push(format!("orphan graph edge {}-{}", v.id, w));
                    continue;
                }
                let want = if self.edge(e).is_boundary() { 1 } else { 2 };
                if faces != want {
                    violations.push(format!(
                        "edge {}-{} of type {} has {faces} faces in its plane, expected {want}",
                        v.id,
                        w,
                        self.edge(e).edge_type
                    ));
                }
            }
            match v.kind {
                VertexKind::Corner(_) if v.created_round == 0 && v.depth != -1 => {
                    violations.push(format!("root corner {} has depth {}", v.id, v.depth))
                }
                VertexKind::Side(..) | VertexKind::EdgeMid(_) if v.midpoint_of.is_none() => {
                    violations.push(format!("vertex {} of kind {} bisects nothing", v.id, v.kind))
                }
                _ => {}
            }
            if v.depth > self.max_depth {
                violations.push(format!("vertex {} deeper than max depth", v.id));
            }
            if let Some(s) = v.midpoint_of {
                let [a, b] = self.edge(s).endpoints;
                if v.depth <= self.v(a).depth.max(self.v(b).depth) {
                    violations.push(format!("midpoint {} not deeper than its segment ends", v.id));
                }
            }
        }
        if self.vertices.iter().map(|v| v.depth).max() != Some(self.max_depth) {
            violations.push("max_depth does not match the deepest vertex".into());
        }

        for (i, p) in self.planes.iter().enumerate() {
            let verts = &per_plane[i].0;
            for &v in verts {
                match self.rotation_in(v, p.id) {
                    Ok(r) if r.broken => {
                        violations.push(format!("vertex {v}: rotation in plane {} is not a fan", p.id))
                    }
                    Ok(_) => {}
                    Err(e) => violations.push(e.to_string()),
                }
            }
        }

        StructuralReport { planes, violations }
    }
}
