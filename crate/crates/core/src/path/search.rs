//! Bounded breadth-first searches over flips.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, TileId, VertexId};

use super::{incorrect_segments, moves_at, Move, Path};

/// Upper bound on the number of distinct paths a search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_visited: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_visited: 200_000 }
    }
}

impl SearchBudget {
    pub fn new(max_visited: usize) -> Self {
        SearchBudget { max_visited }
    }
}

struct Found {
    moves: Option<Vec<Move>>,
    exhausted: bool,
    visited: usize,
}

/// BFS over flips of `window`, keeping its two ends fixed. Stops at the
/// first state satisfying `goal`, when the frontier empties, or when the
/// shared budget runs out. Move indices are shifted by `offset`.
fn bfs_window(
    c: &Complex,
    window: &[VertexId],
    offset: usize,
    budget: &mut usize,
    allow: &dyn Fn(TileId) -> bool,
    goal: &mut dyn FnMut(&[VertexId]) -> bool,
) -> Found {
    let mut states: Vec<Box<[VertexId]>> = vec![window.into()];
    let mut parent: Vec<Option<(u32, Move)>> = vec![None];
    let mut seen: HashMap<Box<[VertexId]>, u32> = HashMap::new();
    seen.insert(window.into(), 0);
    let mut queue = VecDeque::from([0u32]);
    let mut visited = 0;
    let mut buf = Vec::new();
    while let Some(id) = queue.pop_front() {
        visited += 1;
        let cur = states[id as usize].clone();
        if goal(&cur) {
            let mut moves = Vec::new();
            let mut at = id;
            while let Some((p, mv)) = parent[at as usize] {
                moves.push(Move { index: mv.index + offset, ..mv });
                at = p;
            }
            moves.reverse();
            return Found { moves: Some(moves), exhausted: false, visited };
        }
        for i in 1..cur.len().saturating_sub(1) {
            buf.clear();
            moves_at(c, &cur, i, &mut buf);
            for mv in buf.iter().filter(|m| allow(m.tile)) {
                let mut next = cur.to_vec();
                next[i] = mv.to;
                let next: Box<[VertexId]> = next.into();
                if seen.contains_key(&next) {
                    continue;
                }
                if *budget == 0 {
                    return Found { moves: None, exhausted: false, visited };
                }
                *budget -= 1;
                let nid = states.len() as u32;
                seen.insert(next.clone(), nid);
                states.push(next);
                parent.push(Some((id, *mv)));
                queue.push_back(nid);
            }
        }
    }
    Found { moves: None, exhausted: true, visited }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub visited: usize,
    pub null_found: bool,
    pub incorrect_found: bool,
    /// Whether the target path, when one was given, was reached.
    pub target_found: bool,
    /// The whole closure was explored.
    pub exhausted: bool,
    /// Moves from the start to the first null form or incorrect segment found.
    pub witness: Option<Vec<Move>>,
}

/// Closure of `path` under flips. Stops at the first null form or incorrect
/// segment.
pub fn flip_closure(c: &Complex, path: &Path, budget: SearchBudget) -> ClosureSummary {
    closure(c, path, None, budget)
}

/// Like [`flip_closure`], also recording whether `target` is reached. The
/// search does not stop at the target.
pub fn flip_closure_to(c: &Complex, path: &Path, target: &Path, budget: SearchBudget) -> ClosureSummary {
    closure(c, path, Some(target), budget)
}

fn closure(c: &Complex, path: &Path, target: Option<&Path>, budget: SearchBudget) -> ClosureSummary {
    let mut left = budget.max_visited.saturating_sub(1);
    let mut null_found = false;
    let mut incorrect_found = false;
    let mut target_found = false;
    let mut goal = |v: &[VertexId]| {
        if target.is_some_and(|t| t.vertices() == v) {
            target_found = true;
        }
        let p = Path::trusted(v.to_vec());
        if p.backtrack().is_some() {
            null_found = true;
            return true;
        }
        if !incorrect_segments(c, &p).is_empty() {
            incorrect_found = true;
            return true;
        }
        false
    };
    let found = bfs_window(c, path.vertices(), 0, &mut left, &|_| true, &mut goal);
    ClosureSummary {
        visited: found.visited,
        null_found,
        incorrect_found,
        target_found,
        exhausted: found.exhausted,
        witness: found.moves,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// Moves to a null form, when one was found.
    pub moves: Option<Vec<Move>>,
    pub visited: usize,
    /// The closure of the whole path was exhausted without a null form.
    pub complete: bool,
}

/// Searches for flips leading to a null form.
///
/// Windows of growing length are searched with everything outside them
/// fixed; a window counts as reduced when a backtrack appears inside it or
/// across one of its ends. The last window is the whole path.
pub fn reduce_to_null(c: &Complex, path: &Path, budget: SearchBudget) -> Reduction {
    let v = path.vertices();
    if path.backtrack().is_some() {
        return Reduction { moves: Some(Vec::new()), visited: 1, complete: false };
    }
    let n = path.len();
    let mut left = budget.max_visited;
    let mut visited = 0;
    for w in 2..=n {
        for s in 0..=n - w {
            let outer_l = s.checked_sub(1).map(|i| v[i]);
            let outer_r = v.get(s + w + 1).copied();
            let mut goal = |win: &[VertexId]| {
                win.windows(3).any(|t| t[0] == t[2])
                    || outer_l.is_some_and(|x| win.len() > 1 && win[1] == x)
                    || outer_r.is_some_and(|x| win.len() > 1 && win[win.len() - 2] == x)
            };
            let found = bfs_window(c, &v[s..=s + w], s, &mut left, &|_| true, &mut goal);
            visited += found.visited;
            if let Some(moves) = found.moves {
                return Reduction { moves: Some(moves), visited, complete: false };
            }
            if left == 0 {
                return Reduction { moves: None, visited, complete: false };
            }
            if w == n && found.exhausted {
                return Reduction { moves: None, visited, complete: true };
            }
        }
    }
    Reduction { moves: None, visited, complete: n < 2 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PushOutcome {
    NullWitness(Vec<Move>),
    BoundaryForm(Vec<Move>),
    Exhausted { visited: usize },
}

/// Searches flips inside tile `t` until the path is null or runs along the
/// tile's boundary.
pub fn push_to_boundary(c: &Complex, path: &Path, t: TileId, budget: SearchBudget) -> Result<PushOutcome> {
    c.tile(t)?;
    if !c.on_tile_boundary(path.first(), t) || !c.on_tile_boundary(path.last(), t) {
        return Err(Error::NotOnBoundary(t));
    }
    let inside = |x: TileId| c.tile_ancestors(x).any(|a| a == t);
    let mut null = false;
    let mut goal = |v: &[VertexId]| {
        if v.windows(3).any(|w| w[0] == w[2]) {
            null = true;
            return true;
        }
        v.iter().all(|&x| c.on_tile_boundary(x, t))
    };
    let mut left = budget.max_visited.saturating_sub(1);
    let found = bfs_window(c, path.vertices(), 0, &mut left, &inside, &mut goal);
    Ok(match found.moves {
        Some(m) if null => PushOutcome::NullWitness(m),
        Some(m) => PushOutcome::BoundaryForm(m),
        None => PushOutcome::Exhausted { visited: found.visited },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CornerPos, Point, RuleTable};
    use crate::path::{flip::two_sides, replay};

    fn named(c: &Complex, ps: &[Point]) -> Path {
        let x = c.tile_points(c.root()).unwrap();
        Path::new(c, ps.iter().map(|q| x[q.index()]).collect()).unwrap()
    }

    #[test]
    fn level_two_closure_of_two_sides() {
        let c = crate::build(2).unwrap();
        use CornerPos::*;
        let p = two_sides(&c, c.root(), UL, UR, LR).unwrap();
        let q = two_sides(&c, c.root(), UL, LL, LR).unwrap();
        let s = flip_closure_to(&c, &p, &q, SearchBudget::default());
        assert!(s.exhausted && s.target_found && !s.null_found && !s.incorrect_found);
        assert_eq!(s, flip_closure_to(&c, &p, &q, SearchBudget::default()));
    }

    #[test]
    fn backtrack_found_at_once() {
        let c = crate::build(2).unwrap();
        use Point::*;
        let s = flip_closure(&c, &named(&c, &[UL, U, UL]), SearchBudget::default());
        assert!(s.null_found);
        assert_eq!(s.visited, 1);
        assert_eq!(s.witness, Some(vec![]));
    }

    #[test]
    fn path_into_interior_reduces() {
        let c = crate::build(2).unwrap();
        use Point::*;
        // L-A-U-B-R crosses the tile and comes back out at the same depth.
        let p = named(&c, &[UL, U, A, U]);
        let r = reduce_to_null(&c, &p, SearchBudget::default());
        assert_eq!(r.moves, Some(vec![]));
        let q = named(&c, &[UL, L, A, U, UR]);
        let r = reduce_to_null(&c, &q, SearchBudget::default());
        let moves = r.moves.expect("reduces");
        let last = replay(&c, &q, &moves).unwrap().pop().unwrap();
        assert!(last.backtrack().is_some());
    }

    #[test]
    fn geodesic_never_reduces() {
        let c = crate::build_with(3, RuleTable::default(), false).unwrap();
        use CornerPos::*;
        let p = two_sides(&c, c.root(), UL, UR, LR).unwrap();
        let r = reduce_to_null(&c, &p, SearchBudget::new(1_000_000));
        assert!(r.moves.is_none());
        assert!(r.complete);
    }

    #[test]
    fn push_out_of_a_level_two_tile() {
        let c = crate::build(2).unwrap();
        use Point::*;
        let t = c.root();
        let on = named(&c, &[UL, U, UR]);
        assert_eq!(push_to_boundary(&c, &on, t, SearchBudget::default()).unwrap(), PushOutcome::BoundaryForm(vec![]));
        let p = named(&c, &[UL, U, A, C, LR]);
        match push_to_boundary(&c, &p, t, SearchBudget::default()).unwrap() {
            PushOutcome::BoundaryForm(m) => {
                let last = replay(&c, &p, &m).unwrap().pop().unwrap();
                assert!(last.vertices().iter().all(|&v| c.on_tile_boundary(v, t)));
            }
            other => panic!("{other:?}"),
        }
        let inner = named(&c, &[A, C]);
        assert!(matches!(push_to_boundary(&c, &inner, t, SearchBudget::default()), Err(Error::NotOnBoundary(_))));
    }
}
