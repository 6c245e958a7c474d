//! Turning two sides of a macrotile into the other two sides.
//!
//! Inside a subdivided tile the boundary walk is a walk on the eleven points,
//! each step a side of a child. A breadth-first search on those walks finds
//! a sequence of child flips; each child flip is the same problem one level
//! down.

use std::collections::{hash_map::Entry, HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::model::{ChildPos, Complex, CornerPos, EdgeId, Point, SideLabel, TileId, VertexId, CHILD_CYCLES};

use super::{Move, Path};

/// One child flip inside a tile: the walk position and the child whose two
/// sides are swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub index: usize,
    pub child: ChildPos,
    pub from: Point,
    pub to: Point,
}

type Walk = [Point; 5];

fn corner(i: usize) -> Point {
    Point::corner(CornerPos::from_index(i))
}

fn mid(i: usize) -> Point {
    Point::side_mid(SideLabel::from_index(i))
}

/// Side walk from corner `a` around corner `m` to corner `b`.
fn corner_walk(a: usize, m: usize, b: usize) -> Walk {
    let side = |x: usize, y: usize| if (x + 1) % 4 == y { x } else { y };
    [corner(a), mid(side(a, m)), corner(m), mid(side(m, b)), corner(b)]
}

/// Walk from the midpoint of side `s` to the midpoint of the opposite side,
/// clockwise or not.
fn mid_walk(s: usize, clockwise: bool) -> Walk {
    if clockwise {
        [mid(s), corner(s + 1), mid(s + 1), corner(s + 2), mid(s + 2)]
    } else {
        [mid(s), corner(s), mid(s + 3), corner(s + 3), mid(s + 2)]
    }
}

/// The 16 walk shapes and their complements.
fn shapes() -> Vec<(Walk, Walk)> {
    let mut out = Vec::new();
    for m in 0..4 {
        let (prev, next, opp) = ((m + 3) % 4, (m + 1) % 4, (m + 2) % 4);
        for (a, b) in [(prev, next), (next, prev)] {
            out.push((corner_walk(a, m, b), corner_walk(a, opp, b)));
        }
    }
    for s in 0..4 {
        for cw in [true, false] {
            out.push((mid_walk(s, cw), mid_walk(s, !cw)));
        }
    }
    out
}

/// Child flips at walk position `i`: the child, and the replacement point.
fn child_flips(w: &Walk, i: usize) -> Vec<(ChildPos, Point)> {
    let (a, m, b) = (w[i - 1], w[i], w[i + 1]);
    let mut out = Vec::new();
    if a == b {
        return out;
    }
    for pos in ChildPos::ALL {
        let cyc = &CHILD_CYCLES[pos.index()];
        let Some(j) = cyc.iter().position(|&p| p == m) else { continue };
        let (prev, next) = (cyc[(j + 3) % 4], cyc[(j + 1) % 4]);
        if (prev, next) == (a, b) || (prev, next) == (b, a) {
            out.push((pos, cyc[(j + 2) % 4]));
        }
    }
    out
}

fn search_plan(start: Walk, target: Walk) -> Option<Vec<PlanStep>> {
    let mut parent: HashMap<Walk, Option<(Walk, PlanStep)>> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, None);
    while let Some(w) = queue.pop_front() {
        if w == target {
            let mut steps = Vec::new();
            let mut cur = w;
            while let Some(Some((prev, step))) = parent.get(&cur) {
                steps.push(*step);
                cur = *prev;
            }
            steps.reverse();
            return Some(steps);
        }
        for i in 1..4 {
            for (child, to) in child_flips(&w, i) {
                let mut next = w;
                next[i] = to;
                if let Entry::Vacant(slot) = parent.entry(next) {
                    slot.insert(Some((w, PlanStep { index: i, child, from: w[i], to })));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

fn plans() -> &'static Vec<(Walk, Walk, Vec<PlanStep>)> {
    static PLANS: OnceLock<Vec<(Walk, Walk, Vec<PlanStep>)>> = OnceLock::new();
    PLANS.get_or_init(|| {
        shapes()
            .into_iter()
            .map(|(s, t)| {
                let plan = search_plan(s, t).expect("every side walk flips inside a tile");
                (s, t, plan)
            })
            .collect()
    })
}

/// Child-flip plan turning the walk `start` into `target`, if one exists.
pub fn abstract_plan(start: [Point; 5], target: [Point; 5]) -> Option<Vec<PlanStep>> {
    plans()
        .iter()
        .find(|(s, t, _)| *s == start && *t == target)
        .map(|(_, _, p)| p.clone())
        .or_else(|| search_plan(start, target))
}

/// Segment of tile `t` joining a corner and a side midpoint.
fn half_segment(c: &Complex, t: TileId, p: Point, q: Point) -> Option<EdgeId> {
    let (cp, mp) = match (p.as_corner(), q.as_corner()) {
        (Some(cp), None) => (cp, q),
        (None, Some(cq)) => (cq, p),
        _ => return None,
    };
    let tile = c.t(t);
    let s = mp.index() - 4;
    if cp.index() != s && cp.index() != (s + 1) % 4 {
        return None;
    }
    let halves = c.edge(tile.sides[s]).halves?;
    let corner_v = tile.corners[cp.index()];
    Some(if c.edge(halves[0]).has_endpoint(corner_v) { halves[0] } else { halves[1] })
}

/// Real vertices of a boundary walk of tile `t`.
fn walk_vertices(c: &Complex, t: TileId, w: &Walk) -> Option<Vec<VertexId>> {
    let pts = c.tile_points(t)?;
    let mut out = vec![pts[w[0].index()]];
    for k in 0..4 {
        let seg = half_segment(c, t, w[k], w[k + 1])?;
        let chain = c.side_chain(seg, pts[w[k].index()]);
        out.extend_from_slice(&chain[1..]);
    }
    Some(out)
}

fn side_len(c: &Complex, t: TileId) -> usize {
    1 << (c.level_of(t) - 1)
}

fn run_plan(c: &Complex, t: TileId, start: Walk, plan: &[PlanStep], offset: usize, out: &mut Vec<Move>) -> Result<()> {
    let tile = c.t(t);
    let pts = c.tile_points(t).ok_or_else(|| Error::BadShape(format!("tile {t} is not subdivided")))?;
    let children = tile.children.unwrap();
    let mut walk = start;
    for step in plan {
        let child = children[step.child.index()];
        let half = side_len(c, child);
        let [a, m, b] = [walk[step.index - 1], walk[step.index], walk[step.index + 1]].map(|p| pts[p.index()]);
        flip_corners(c, child, a, m, b, offset + (step.index - 1) * half, out)?;
        walk[step.index] = step.to;
    }
    Ok(())
}

/// Moves turning the sides `a-m`, `m-b` of tile `t` into the other two,
/// with the walk starting at path position `offset`.
fn flip_corners(
    c: &Complex,
    t: TileId,
    a: VertexId,
    m: VertexId,
    b: VertexId,
    offset: usize,
    out: &mut Vec<Move>,
) -> Result<()> {
    let tile = c.t(t);
    let idx = |v: VertexId| tile.corner_index(v).ok_or_else(|| Error::BadShape(format!("{v} is not a corner of {t}")));
    let (ia, im, ib) = (idx(a)?, idx(m)?, idx(b)?);
    if tile.is_minimal() {
        out.push(Move { index: offset + 1, tile: t, from: m, to: tile.corners[(im + 2) % 4] });
        return Ok(());
    }
    let start = corner_walk(ia, im, ib);
    let target = corner_walk(ia, (im + 2) % 4, ib);
    let plan = abstract_plan(start, target).ok_or_else(|| Error::BadShape(format!("no child plan in tile {t}")))?;
    run_plan(c, t, start, &plan, offset, out)
}

/// Move sequence turning a path along two sides of `t` into the path along
/// the complementary two sides. The path runs corner to corner through a
/// third corner, or between midpoints of opposite sides around the boundary.
pub fn macro_flip(c: &Complex, path: &Path, t: TileId) -> Result<Vec<Move>> {
    let tile = c.tile(t)?;
    let v = path.vertices();
    let s = side_len(c, t);
    if path.len() != 2 * s {
        return Err(Error::BadShape(format!(
            "path has length {}, two sides of tile {t} have length {}",
            path.len(),
            2 * s
        )));
    }
    let mut out = Vec::new();
    if tile.is_minimal() {
        let j = tile.corner_index(v[1]).ok_or_else(|| Error::BadShape(format!("{} is not a corner of {t}", v[1])))?;
        let to = super::flip_target(c, t, v[0], v[1], v[2])
            .ok_or_else(|| Error::BadShape(format!("not two sides of tile {t}")))?;
        debug_assert_eq!(to, tile.corners[(j + 2) % 4]);
        out.push(Move { index: 1, tile: t, from: v[1], to });
        return Ok(out);
    }
    for (start, _, plan) in plans() {
        if walk_vertices(c, t, start).as_deref() == Some(v) {
            run_plan(c, t, *start, plan, 0, &mut out)?;
            return Ok(out);
        }
    }
    Err(Error::BadShape(format!("path is not two sides of tile {t}")))
}

/// Boundary walk of `t` for a shape, exposed for tests and experiments.
pub(crate) fn shape_path(c: &Complex, t: TileId, w: [Point; 5]) -> Option<Path> {
    if c.t(t).is_minimal() {
        let pts: Vec<VertexId> = [w[0], w[2], w[4]]
            .iter()
            .map(|p| p.as_corner().map(|cp| c.t(t).corners[cp.index()]))
            .collect::<Option<_>>()?;
        return Some(Path::trusted(pts));
    }
    walk_vertices(c, t, &w).map(Path::trusted)
}

/// The path along sides `a-m` and `m-b` of tile `t`, given by corner positions.
/// Vertices along the segment between two adjacent points of a subdivided
/// tile, from `p` to `q`.
pub fn point_chain(c: &Complex, t: TileId, p: Point, q: Point) -> Option<Vec<VertexId>> {
    let pts = c.tile_points(t)?;
    let (a, b) = (pts[p.index()], pts[q.index()]);
    for &ch in c.t(t).children.as_ref()? {
        let tile = c.t(ch);
        for i in 0..4 {
            let (x, y) = (tile.corners[i], tile.corners[(i + 1) % 4]);
            if (x, y) == (a, b) || (x, y) == (b, a) {
                return Some(c.side_chain(tile.sides[i], a));
            }
        }
    }
    None
}

pub fn two_sides(c: &Complex, t: TileId, a: CornerPos, m: CornerPos, b: CornerPos) -> Option<Path> {
    shape_path(c, t, corner_walk(a.index(), m.index(), b.index()))
}

/// Path between midpoints of opposite sides `s` and `s + 2` around corner `s + 1`
/// (clockwise) or corner `s` (counter-clockwise).
pub fn mid_sides(c: &Complex, t: TileId, s: SideLabel, clockwise: bool) -> Option<Path> {
    if c.t(t).is_minimal() {
        return None;
    }
    shape_path(c, t, mid_walk(s.index(), clockwise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RuleTable;
    use crate::path::replay;

    #[test]
    fn every_shape_has_a_plan() {
        assert_eq!(plans().len(), 16);
        for (s, t, p) in plans() {
            assert!(!p.is_empty(), "{s:?} -> {t:?}");
        }
    }

    #[test]
    fn level_one_flip_is_a_single_move() {
        let c = crate::build(1).unwrap();
        use CornerPos::*;
        let path = two_sides(&c, c.root(), UL, UR, LR).unwrap();
        let moves = macro_flip(&c, &path, c.root()).unwrap();
        assert_eq!(moves.len(), 1);
    }

    #[test]
    fn level_two_top_right_to_left_bottom() {
        let c = crate::build(2).unwrap();
        use CornerPos::*;
        let t = c.root();
        let path = two_sides(&c, t, UL, UR, LR).unwrap();
        let target = two_sides(&c, t, UL, LL, LR).unwrap();
        let moves = macro_flip(&c, &path, t).unwrap();
        let steps = replay(&c, &path, &moves).unwrap();
        assert_eq!(steps.last().unwrap(), &target);
    }

    #[test]
    fn pure_tiles_flip_every_shape() {
        for level in 1..=4 {
            let c = crate::build_with(level, RuleTable::default(), false).unwrap();
            let t = c.root();
            for m in CornerPos::ALL {
                let (a, b) = (CornerPos::from_index(m.index() + 3), CornerPos::from_index(m.index() + 1));
                let o = CornerPos::from_index(m.index() + 2);
                let path = two_sides(&c, t, a, m, b).unwrap();
                let target = two_sides(&c, t, a, o, b).unwrap();
                let moves = macro_flip(&c, &path, t).unwrap();
                let steps = replay(&c, &path, &moves).unwrap();
                assert_eq!(steps.last().unwrap(), &target, "level {level} corner {m:?}");
            }
            if level >= 2 {
                for s in SideLabel::ALL {
                    let path = mid_sides(&c, t, s, true).unwrap();
                    let target = mid_sides(&c, t, s, false).unwrap();
                    let moves = macro_flip(&c, &path, t).unwrap();
                    assert_eq!(replay(&c, &path, &moves).unwrap().last().unwrap(), &target);
                }
            }
        }
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let c = crate::build(2).unwrap();
        let pts = c.tile_points(c.root()).unwrap();
        let path = Path::new(&c, vec![pts[0], pts[4], pts[8], pts[7]]).unwrap();
        assert!(matches!(macro_flip(&c, &path, c.root()), Err(Error::BadShape(_))));
    }
}
