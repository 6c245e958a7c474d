//! Executable lemma checks with pass / fail / inconclusive verdicts.

mod lemmas;
mod sample;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesy::EntryDistance;
use crate::model::{Complex, TileId, VertexId};
use crate::par::{self, Exec};
use crate::path::{format_path, Move, Path, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    DegreeBound,
    SideVertex,
    MacroFlip,
    BoundaryPush,
    Wiggle,
    LocalSegment,
    NonExtendable,
    DeadPatterns,
    LowerCornerPaths,
    IncorrectSegments,
    Correctness,
    EntryDistance,
    PastingPathShape,
    PastingPathLength,
}

impl LemmaId {
    pub const ALL: [LemmaId; 14] = [
        LemmaId::DegreeBound,
        LemmaId::SideVertex,
        LemmaId::MacroFlip,
        LemmaId::BoundaryPush,
        LemmaId::Wiggle,
        LemmaId::LocalSegment,
        LemmaId::NonExtendable,
        LemmaId::DeadPatterns,
        LemmaId::LowerCornerPaths,
        LemmaId::IncorrectSegments,
        LemmaId::Correctness,
        LemmaId::EntryDistance,
        LemmaId::PastingPathShape,
        LemmaId::PastingPathLength,
    ];

    pub fn code(self) -> &'static str {
        match self {
            LemmaId::DegreeBound => "L1",
            LemmaId::SideVertex => "L2",
            LemmaId::MacroFlip => "L3",
            LemmaId::BoundaryPush => "L4",
            LemmaId::Wiggle => "L5",
            LemmaId::LocalSegment => "L6",
            LemmaId::NonExtendable => "L7",
            LemmaId::DeadPatterns => "L8",
            LemmaId::LowerCornerPaths => "L9",
            LemmaId::IncorrectSegments => "L10",
            LemmaId::Correctness => "L11",
            LemmaId::EntryDistance => "L12",
            LemmaId::PastingPathShape => "L13.1",
            LemmaId::PastingPathLength => "L13.2",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            LemmaId::DegreeBound => "vertex degrees stabilise",
            LemmaId::SideVertex => "side vertices sit mid-side on typed edges",
            LemmaId::MacroFlip => "two sides flip to the other two",
            LemmaId::BoundaryPush => "paths push to the tile boundary; side geodesics have length 2^n",
            LemmaId::Wiggle => "side midpoints wiggle into the pasting",
            LemmaId::LocalSegment => "long local segments reduce",
            LemmaId::NonExtendable => "mid-side crossings cannot be extended",
            LemmaId::DeadPatterns => "AUB, ACB, CXD patterns are dead",
            LemmaId::LowerCornerPaths => "paths turning at the lower-left corner are dead",
            LemmaId::IncorrectSegments => "incorrect segments are dead",
            LemmaId::Correctness => "two-sides paths never reduce nor turn incorrect",
            LemmaId::EntryDistance => "pasting entries are far from the host boundary",
            LemmaId::PastingPathShape => "three pasting entries never fit in one tile",
            LemmaId::PastingPathLength => "long paths into a pasting reduce",
        }
    }

    /// Whether a bounded search may leave this check undecided.
    pub fn is_search(self) -> bool {
        matches!(
            self,
            LemmaId::LocalSegment
                | LemmaId::NonExtendable
                | LemmaId::DeadPatterns
                | LemmaId::LowerCornerPaths
                | LemmaId::IncorrectSegments
                | LemmaId::PastingPathLength
        )
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// Parses a comma-separated selection. Empty or `all` selects everything;
/// `L13` selects both of its parts.
pub fn parse_selection(s: &str) -> Result<Vec<LemmaId>> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("all") {
        return Ok(LemmaId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok.eq_ignore_ascii_case("L13") {
            out.extend([LemmaId::PastingPathShape, LemmaId::PastingPathLength]);
        } else {
            out.push(tok.parse()?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    /// Moves taking the path to a null form.
    Reduction {
        path: Path,
        moves: Vec<Move>,
    },
    /// Moves taking the path to the shape the check expects.
    Moves {
        path: Path,
        moves: Vec<Move>,
    },
    Path(Path),
    Vertex(VertexId),
    Tile(TileId),
    Entry(EntryDistance),
}

fn format_move_list(moves: &[Move]) -> String {
    let parts: Vec<String> = moves.iter().map(|m| format!("{}:{}", m.index, m.tile.0)).collect();
    parts.join(" ")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Reduction { path, moves } => {
                write!(f, "reduction path=[{}] moves=[{}]", format_path(path), format_move_list(moves))
            }
            Witness::Moves { path, moves } => {
                write!(f, "moves path=[{}] moves=[{}]", format_path(path), format_move_list(moves))
            }
            Witness::Path(p) => write!(f, "path [{}]", format_path(p)),
            Witness::Vertex(v) => write!(f, "vertex {}", v.0),
            Witness::Tile(t) => write!(f, "tile {}", t.0),
            Witness::Entry(e) => write!(
                f,
                "entry vertex={} pasted={} level={} host={} distance={}",
                e.entry.0, e.pasted_tile.0, e.level, e.host.0, e.distance
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub id: LemmaId,
    pub complex_level: u32,
    /// Tile level the experiment ran at, for checks run level by level.
    pub tile_level: Option<u32>,
    pub params: Vec<(String, String)>,
    pub verdict: Verdict,
    pub instances: usize,
    pub measurements: Vec<(String, String)>,
    pub witnesses: Vec<Witness>,
}

impl LemmaReport {
    pub fn measurement(&self, key: &str) -> Option<&str> {
        self.measurements.iter().find(|m| m.0 == key).map(|m| m.1.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lemma {} ({})", self.id, self.id.title());
        let _ = writeln!(s, "  complex_level {}", self.complex_level);
        if let Some(n) = self.tile_level {
            let _ = writeln!(s, "  tile_level {n}");
        }
        for (k, v) in &self.params {
            let _ = writeln!(s, "  param {k} {v}");
        }
        let _ = writeln!(s, "  verdict {}", self.verdict);
        let _ = writeln!(s, "  instances {}", self.instances);
        for (k, v) in &self.measurements {
            let _ = writeln!(s, "  measure {k} {v}");
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "  witness {w}");
        }
        s
    }
}

pub fn format_reports(reports: &[LemmaReport]) -> String {
    reports.iter().map(|r| r.to_text() + "\n").collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Search budget for bounded runs.
    pub search: SearchBudget,
    /// Search budget at the smallest level of each search check.
    pub exhaustive: SearchBudget,
    /// Sampled instances per check and level.
    pub samples: usize,
    pub seed: u64,
    /// Rounds the degree check builds past the given complex.
    pub degree_rounds: u32,
    /// The degree check never builds past this level.
    pub degree_max_level: u32,
    /// Witnesses kept per report, besides counterexamples.
    pub keep_witnesses: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            search: SearchBudget::default(),
            exhaustive: SearchBudget::new(2_000_000),
            samples: 6,
            seed: 0,
            degree_rounds: 3,
            degree_max_level: 7,
            keep_witnesses: 3,
        }
    }
}

/// Runs the selected checks on `c`. Reports come in selection order and
/// do not depend on `exec`.
pub fn run_suite(c: &Complex, selection: &[LemmaId], budgets: &Budgets, exec: Exec) -> Vec<LemmaReport> {
    par::flat_map(exec, selection, |&id| lemmas::run(c, id, budgets, exec))
}

/// Process exit status for a set of reports: 1 if anything failed.
pub fn exit_status(reports: &[LemmaReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.verdict == Verdict::Fail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert_eq!(parse_selection("").unwrap().len(), 14);
        assert_eq!(
            parse_selection("l13, L2").unwrap(),
            vec![LemmaId::SideVertex, LemmaId::PastingPathShape, LemmaId::PastingPathLength]
        );
        assert!(matches!(parse_selection("L14"), Err(Error::UnknownLemma(_))));
        for l in LemmaId::ALL {
            assert_eq!(l.code().parse::<LemmaId>().unwrap(), l);
        }
    }
}
