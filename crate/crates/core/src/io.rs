//! Persistence and export: the JSON complex document, rule files and DOT.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, MacroEdge, MacroTile, Plane, PlaneId, RoundLogEntry, RuleTable, Vertex, VertexId};
use crate::pasting::PastingRecord;

pub const FORMAT_VERSION: u32 = 1;

/// Self-describing snapshot of a complex. Every table is sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub format_version: u32,
    pub level: u32,
    pub round: u32,
    pub max_depth: i32,
    pub rules: RuleTable,
    pub rounds_log: Vec<RoundLogEntry>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<MacroEdge>,
    pub tiles: Vec<MacroTile>,
    pub planes: Vec<Plane>,
    pub pasting_log: Vec<PastingRecord>,
}

impl ComplexDocument {
    pub fn from_complex(c: &Complex) -> ComplexDocument {
        ComplexDocument {
            format_version: FORMAT_VERSION,
            level: c.level(),
            round: c.round(),
            max_depth: c.max_depth,
            rules: c.rules().clone(),
            rounds_log: c.rounds_log().to_vec(),
            vertices: c.vertices().to_vec(),
            edges: c.macro_edges().to_vec(),
            tiles: c.tiles().to_vec(),
            planes: c.planes().to_vec(),
            pasting_log: c.pasting_log().to_vec(),
        }
    }

    /// Rebuilds the complex with identical ids. Dangling references are
    /// rejected; structural problems are left to [`Complex::validate`].
    pub fn into_complex(self) -> Result<Complex> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Document(format!("unsupported format version {}", self.format_version)));
        }
        if self.level != self.round + 1 {
            return Err(Error::Document(format!("level {} does not match round {}", self.level, self.round)));
        }
        self.check_references()?;
        Complex::from_parts(
            self.rules,
            self.vertices,
            self.edges,
            self.tiles,
            self.planes,
            self.round,
            self.max_depth,
            self.pasting_log,
            self.rounds_log,
        )
    }

    fn check_references(&self) -> Result<()> {
        let (nv, ne, nt, np) = (self.vertices.len(), self.edges.len(), self.tiles.len(), self.planes.len());
        let bad = |what: &str, i: usize| Err(Error::Document(format!("dangling reference in {what} {i}")));
        let v_ok = |v: VertexId| v.index() < nv;
        for (i, v) in self.vertices.iter().enumerate() {
            if v.owner.index() >= nt || v.plane.index() >= np || v.midpoint_of.is_some_and(|e| e.index() >= ne) {
                return bad("vertex", i);
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let tiles_ok = [Some(e.owner), e.a_side, e.b_side].into_iter().flatten().all(|t| t.index() < nt);
            let edges_ok = e.halves.into_iter().flatten().chain(e.parent).all(|h| h.index() < ne);
            if !tiles_ok || !edges_ok || !e.endpoints.into_iter().chain(e.midpoint).all(v_ok) {
                return bad("edge", i);
            }
        }
        for (i, t) in self.tiles.iter().enumerate() {
            let tiles_ok = t.children.into_iter().flatten().chain(t.parent).all(|x| x.index() < nt);
            let verts_ok = t.corners.into_iter().chain(t.core).chain(t.interior.into_iter().flatten()).all(v_ok);
            if !tiles_ok || !verts_ok || t.sides.iter().any(|s| s.index() >= ne) || t.plane.index() >= np {
                return bad("tile", i);
            }
            if t.created_round > self.round {
                return bad("tile", i);
            }
        }
        for (i, p) in self.planes.iter().enumerate() {
            if p.id.index() != i || p.tile.index() >= nt || !p.core.into_iter().all(v_ok) {
                return bad("plane", i);
            }
        }
        for (i, r) in self.pasting_log.iter().enumerate() {
            let verts = r.site.path().into_iter().chain([r.t1, r.t2, r.t3, r.ta, r.tb, r.tc]);
            let entries = r.entries.iter().flat_map(|&(a, b)| [a, b]);
            if !verts.chain(entries).all(v_ok)
                || r.tile.index() >= nt
                || r.plane.index() >= np
                || r.macro_edges.iter().any(|e| e.index() >= ne)
            {
                return bad("pasting record", i);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<ComplexDocument> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn export_json(c: &Complex) -> Result<String> {
    ComplexDocument::from_complex(c).to_json()
}

pub fn import_json(text: &str) -> Result<Complex> {
    ComplexDocument::from_json(text)?.into_complex()
}

pub fn read_complex(path: &FsPath) -> Result<Complex> {
    import_json(&std::fs::read_to_string(path)?)
}

pub fn write_complex(c: &Complex, path: &FsPath) -> Result<()> {
    std::fs::write(path, export_json(c)?)?;
    Ok(())
}

/// Reads a rule table from JSON and rejects it if it is inconsistent.
pub fn read_rules(path: &FsPath) -> Result<RuleTable> {
    let rules: RuleTable = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let violations = rules.validate();
    if !violations.is_empty() {
        let msg: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidRules(msg.join("; ")));
    }
    Ok(rules)
}

/// DOT text with one graph per plane. A plane's graph is the union of its
/// minimal tiles. Nodes are labelled with their kind and depth. An empty
/// filter selects every plane.
pub fn export_dot(c: &Complex, planes: &[PlaneId]) -> Result<String> {
    for &p in planes {
        if p.index() >= c.planes().len() {
            return Err(Error::UnknownPlane(p));
        }
    }
    let selected: BTreeSet<PlaneId> =
        if planes.is_empty() { c.planes().iter().map(|p| p.id).collect() } else { planes.iter().copied().collect() };
    let mut out = String::new();
    for p in selected {
        let (nodes, edges) = plane_graph(c, p);
        let _ = writeln!(out, "graph {p} {{");
        for v in &nodes {
            let vx = &c.vertices()[v.index()];
            let _ = writeln!(out, "  {} [label=\"{} d{}\"];", v.0, vx.kind, vx.depth);
        }
        for (a, b) in &edges {
            let _ = writeln!(out, "  {} -- {};", a.0, b.0);
        }
        out.push_str("}\n");
    }
    Ok(out)
}

/// Vertices and graph edges of the minimal tiles of `plane`, sorted.
pub fn plane_graph(c: &Complex, plane: PlaneId) -> (BTreeSet<VertexId>, BTreeSet<(VertexId, VertexId)>) {
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for t in c.tiles().iter().filter(|t| t.plane == plane && t.is_minimal()) {
        for i in 0..4 {
            let (a, b) = (t.corners[i], t.corners[(i + 1) % 4]);
            nodes.insert(a);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    (nodes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_identical() {
        for level in [1, 3, 4] {
            let c = crate::build(level).unwrap();
            let text = export_json(&c).unwrap();
            let d = import_json(&text).unwrap();
            assert_eq!(export_json(&d).unwrap(), text);
            assert!(d.validate().is_ok());
            assert_eq!(d.num_graph_edges(), c.num_graph_edges());
            for v in c.vertices() {
                assert_eq!(c.neighbors(v.id).len(), d.neighbors(v.id).len());
            }
        }
    }

    #[test]
    fn dangling_ids_are_rejected() {
        let c = crate::build(2).unwrap();
        let mut doc = ComplexDocument::from_complex(&c);
        doc.edges[3].endpoints[1] = VertexId(999);
        assert!(matches!(doc.into_complex(), Err(Error::Document(_))));
        let mut doc = ComplexDocument::from_complex(&c);
        doc.format_version = 99;
        assert!(matches!(doc.into_complex(), Err(Error::Document(_))));
    }

    #[test]
    fn dot_counts() {
        let c = crate::build(2).unwrap();
        let (n, e) = plane_graph(&c, PlaneId(0));
        assert_eq!((n.len(), e.len()), (11, 16));
        let dot = export_dot(&c, &[]).unwrap();
        assert_eq!(dot.matches("graph ").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 16);
        assert!(matches!(export_dot(&c, &[PlaneId(1)]), Err(Error::UnknownPlane(_))));

        let c = crate::build(4).unwrap();
        let dot = export_dot(&c, &[]).unwrap();
        assert_eq!(dot.matches("graph ").count(), 1 + c.pasting_log().len());
        for r in c.pasting_log() {
            let (n, e) = plane_graph(&c, r.plane);
            let mut expected: BTreeSet<VertexId> = r.site.path().into_iter().collect();
            expected.extend([r.t1, r.t2, r.t3, r.ta, r.tb, r.tc]);
            assert_eq!(n, expected);
            assert_eq!(e.len(), 16);
        }
    }
}
