//! One experiment per check.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::builder::extend;
use crate::geodesy::{distance, pasting_entry_distances};
use crate::model::{Complex, CornerPos, Point, RoundKind, SideLabel, TileId, VertexId, VertexKind};
use crate::par::{self, Exec};
use crate::path::{
    flip_closure_to, incorrect_segments, macro_flip, mid_sides, point_chain, push_to_boundary, reduce_to_null, replay,
    tile_side, two_sides, wiggle_into_pasting, Path, PushOutcome, SearchBudget,
};

use super::sample::{coin, inner_tiles, is_simple, plane_geodesic_from, plane_of, rng_for, walk_in_plane, walk_inside};
use super::{Budgets, LemmaId, LemmaReport, Verdict, Witness};

/// Collected outcomes of one experiment.
struct Tally {
    instances: usize,
    failed: Vec<Witness>,
    inconclusive: usize,
    kept: Vec<Witness>,
    keep: usize,
}

impl Tally {
    fn new(keep: usize) -> Tally {
        Tally { instances: 0, failed: Vec::new(), inconclusive: 0, kept: Vec::new(), keep }
    }

    fn keep(&mut self, w: Option<Witness>) {
        if let Some(w) = w {
            if self.kept.len() < self.keep {
                self.kept.push(w);
            }
        }
    }

    fn pass(&mut self, w: Option<Witness>) {
        self.instances += 1;
        self.keep(w);
    }

    fn fail(&mut self, w: Witness) {
        self.instances += 1;
        self.failed.push(w);
    }

    fn unsure(&mut self, w: Option<Witness>) {
        self.instances += 1;
        self.inconclusive += 1;
        self.keep(w);
    }

    fn verdict(&self, empty: Verdict) -> Verdict {
        if !self.failed.is_empty() {
            Verdict::Fail
        } else if self.inconclusive > 0 {
            Verdict::Inconclusive
        } else if self.instances == 0 {
            empty
        } else {
            Verdict::Pass
        }
    }
}

struct Draft {
    id: LemmaId,
    tile_level: Option<u32>,
    params: Vec<(String, String)>,
    measurements: Vec<(String, String)>,
    tally: Tally,
    /// Verdict when nothing could be tested.
    empty: Verdict,
}

impl Draft {
    fn new(id: LemmaId, b: &Budgets) -> Draft {
        let mut params = vec![("seed".into(), b.seed.to_string())];
        if id.is_search() {
            params.push(("samples".into(), b.samples.to_string()));
        }
        Draft {
            id,
            tile_level: None,
            params,
            measurements: Vec::new(),
            tally: Tally::new(b.keep_witnesses),
            empty: Verdict::Pass,
        }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Draft {
        self.params.push((k.into(), v.to_string()));
        self
    }

    fn measure(&mut self, k: &str, v: impl ToString) {
        self.measurements.push((k.into(), v.to_string()));
    }

    fn finish(self, c: &Complex) -> LemmaReport {
        let verdict = self.tally.verdict(self.empty);
        let mut witnesses = self.tally.failed;
        witnesses.extend(self.tally.kept);
        LemmaReport {
            id: self.id,
            complex_level: c.level(),
            tile_level: self.tile_level,
            params: self.params,
            verdict,
            instances: self.tally.instances,
            measurements: self.measurements,
            witnesses,
        }
    }
}

pub(super) fn run(c: &Complex, id: LemmaId, b: &Budgets, exec: Exec) -> Vec<LemmaReport> {
    match id {
        LemmaId::DegreeBound => vec![degree_bound(c, b)],
        LemmaId::SideVertex => vec![side_vertex(c, b)],
        LemmaId::MacroFlip => vec![flip_sides(c, b, exec)],
        LemmaId::BoundaryPush => vec![boundary_push(c, b, exec)],
        LemmaId::Wiggle => vec![wiggle(c, b)],
        LemmaId::Correctness => vec![correctness(c, b, exec)],
        LemmaId::EntryDistance => vec![entry_distance(c, b, exec)],
        LemmaId::PastingPathShape => vec![pasting_path_shape(c, b)],
        LemmaId::LocalSegment
        | LemmaId::NonExtendable
        | LemmaId::DeadPatterns
        | LemmaId::LowerCornerPaths
        | LemmaId::IncorrectSegments
        | LemmaId::PastingPathLength => [2, 3]
            .into_iter()
            .enumerate()
            .map(|(k, n)| reduction(c, id, n, if k == 0 { b.exhaustive } else { b.search }, b, exec))
            .collect(),
    }
}

fn degrees(c: &Complex) -> Vec<usize> {
    c.vertices().iter().map(|v| c.degree(v.id)).collect()
}

fn degree_bound(c: &Complex, b: &Budgets) -> LemmaReport {
    let target = (c.level() + b.degree_rounds).min(b.degree_max_level).max(c.level());
    let mut d = Draft::new(LemmaId::DegreeBound, b).param("up_to_level", target);
    let pastings = c.round() < 3 || c.rounds_log().iter().any(|r| r.kind == RoundKind::Pasting);
    let mut cur = c.clone();
    let mut prev = degrees(&cur);
    let mut maxima = vec![(cur.level(), prev.iter().copied().max().unwrap_or(0))];
    while cur.level() < target {
        let next = cur.level() + 1;
        extend(&mut cur, next, pastings);
        let now = degrees(&cur);
        let round = cur.round();
        for (i, v) in cur.vertices()[..prev.len()].iter().enumerate() {
            if v.created_round + 3 > round {
                continue;
            }
            if prev[i] == now[i] {
                d.tally.pass(None);
            } else {
                d.tally.fail(Witness::Vertex(v.id));
            }
        }
        maxima.push((cur.level(), now.iter().copied().max().unwrap_or(0)));
        prev = now;
    }
    let list: Vec<String> = maxima.iter().map(|(l, m)| format!("{l}:{m}")).collect();
    d.measure("max_degree_by_level", list.join(" "));
    if let [.., (_, a), (_, z)] = maxima[..] {
        d.measure("global_max_stable", a == z);
    }
    d.finish(c)
}

fn side_vertex(c: &Complex, b: &Budgets) -> LemmaReport {
    let mut d = Draft::new(LemmaId::SideVertex, b);
    let root = c.root();
    for v in c.vertices() {
        if !matches!(v.kind, VertexKind::Side(..) | VertexKind::EdgeMid(_)) {
            continue;
        }
        let Some(seg) = v.midpoint_of else {
            d.tally.fail(Witness::Vertex(v.id));
            continue;
        };
        // Tiles with this segment as a side: per plane at most two, of one level.
        let mut owners: Vec<(crate::model::PlaneId, u32)> =
            c.tiles_on_side(seg).iter().map(|t| (c.tiles()[t.index()].plane, c.level_of(*t))).collect();
        owners.sort_unstable();
        let mid_side = !owners.is_empty()
            && owners.chunk_by(|x, y| x.0 == y.0).all(|g| g.len() <= 2 && g.iter().all(|x| x.1 == g[0].1));
        let typed = c.on_tile_boundary(v.id, root) || {
            let top = c.edge(c.carrying_edge(seg));
            !top.is_boundary() || c.tiles()[top.owner.index()].pasted
        };
        if mid_side && typed {
            d.tally.pass(None);
        } else {
            d.tally.fail(Witness::Vertex(v.id));
        }
    }
    d.finish(c)
}

/// The 16 boundary walks of a tile paired with their complements.
fn flip_pairs(c: &Complex, t: TileId) -> Vec<(Path, Path)> {
    let mut out = Vec::new();
    for m in 0..4 {
        let (a, z) = (CornerPos::from_index((m + 3) % 4), CornerPos::from_index((m + 1) % 4));
        let (m, o) = (CornerPos::from_index(m), CornerPos::from_index((m + 2) % 4));
        for (x, y) in [(a, z), (z, a)] {
            if let (Some(p), Some(q)) = (two_sides(c, t, x, m, y), two_sides(c, t, x, o, y)) {
                out.push((p, q));
            }
        }
    }
    for s in 0..4 {
        for cw in [true, false] {
            let s = SideLabel::from_index(s);
            if let (Some(p), Some(q)) = (mid_sides(c, t, s, cw), mid_sides(c, t, s, !cw)) {
                out.push((p, q));
            }
        }
    }
    out
}

fn flip_sides(c: &Complex, b: &Budgets, exec: Exec) -> LemmaReport {
    let top = c.level().min(5);
    let mut d = Draft::new(LemmaId::MacroFlip, b).param("max_tile_level", top);
    let mut tiles = Vec::new();
    for n in 1..=top {
        let mut rng = rng_for(b.seed, LemmaId::MacroFlip, n);
        let mut all: Vec<TileId> = c.tiles().iter().filter(|t| c.level_of(t.id) == n).map(|t| t.id).collect();
        all.shuffle(&mut rng);
        all.truncate(b.samples);
        all.sort_unstable();
        tiles.extend(all);
    }
    let results = par::map(exec, &tiles, |&t| {
        flip_pairs(c, t)
            .into_iter()
            .map(|(p, q)| {
                let ok = macro_flip(c, &p, t)
                    .ok()
                    .and_then(|m| replay(c, &p, &m).ok().map(|s| (m, s)))
                    .filter(|(_, s)| s.last() == Some(&q));
                match ok {
                    Some((moves, _)) => Ok(Witness::Moves { path: p, moves }),
                    None => Err(Witness::Path(p)),
                }
            })
            .collect::<Vec<_>>()
    });
    for r in results.into_iter().flatten() {
        match r {
            Ok(w) => d.tally.pass(Some(w)),
            Err(w) => d.tally.fail(w),
        }
    }
    d.finish(c)
}

fn boundary_push(c: &Complex, b: &Budgets, exec: Exec) -> LemmaReport {
    let mut d = Draft::new(LemmaId::BoundaryPush, b).param("budget", b.exhaustive.max_visited);
    // Side geodesics.
    let mut lengths = Vec::new();
    for n in 1..=c.level().min(6) {
        let mut rng = rng_for(b.seed, LemmaId::BoundaryPush, n);
        let mut tiles: Vec<TileId> =
            c.tiles().iter().filter(|t| !t.pasted && c.level_of(t.id) == n).map(|t| t.id).collect();
        tiles.shuffle(&mut rng);
        tiles.truncate(b.samples);
        tiles.sort_unstable();
        let want = 1u32 << n;
        let checks = par::flat_map(exec, &tiles, |&t| {
            let tile = &c.tiles()[t.index()];
            let mut pairs = vec![(tile.corners[0], tile.corners[2]), (tile.corners[1], tile.corners[3])];
            if let Some(p) = c.tile_points(t) {
                pairs.push((p[Point::U.index()], p[Point::D.index()]));
                pairs.push((p[Point::L.index()], p[Point::R.index()]));
            }
            pairs.into_iter().map(|(x, y)| (x, y, distance(c, x, y).ok())).collect()
        });
        for (x, y, dist) in checks {
            if dist == Some(want) {
                d.tally.pass(None);
            } else {
                d.tally.fail(Witness::Path(Path::trusted(vec![x, y])));
            }
        }
        lengths.push(format!("{n}:{want}"));
    }
    d.measure("side_geodesic_lengths_checked", lengths.join(" "));
    // Pushing inner paths out.
    for n in [2, 3] {
        let tiles = inner_tiles(c, n);
        if tiles.is_empty() {
            continue;
        }
        let mut rng = rng_for(b.seed, LemmaId::BoundaryPush, 100 + n);
        let mut jobs = Vec::new();
        for _ in 0..b.samples * 10 {
            if jobs.len() >= b.samples {
                break;
            }
            let t = *tiles.choose(&mut rng).unwrap();
            let ring = c.tile_boundary(t);
            let s = *ring.choose(&mut rng).unwrap();
            let walk =
                walk_inside(c, t, s, 4 << n, &mut rng, |w| w.len() > 2 && c.on_tile_boundary(*w.last().unwrap(), t));
            if let Some(w) = walk.filter(|w| c.strictly_inside(w[1], t)) {
                jobs.push((t, Path::trusted(w)));
            }
        }
        let outcomes = par::map(exec, &jobs, |(t, p)| push_to_boundary(c, p, *t, b.exhaustive));
        for ((_, p), o) in jobs.into_iter().zip(outcomes) {
            match o {
                Ok(PushOutcome::NullWitness(m)) => d.tally.pass(Some(Witness::Reduction { path: p, moves: m })),
                Ok(PushOutcome::BoundaryForm(m)) => d.tally.pass(Some(Witness::Moves { path: p, moves: m })),
                Ok(PushOutcome::Exhausted { .. }) => d.tally.unsure(Some(Witness::Path(p))),
                Err(_) => d.tally.fail(Witness::Path(p)),
            }
        }
    }
    d.finish(c)
}

fn wiggle(c: &Complex, b: &Budgets) -> LemmaReport {
    let mut d = Draft::new(LemmaId::Wiggle, b);
    let mut rng = rng_for(b.seed, LemmaId::Wiggle, 0);
    let mut tiles: Vec<TileId> = c.tiles().iter().filter(|t| c.level_of(t.id) == 4).map(|t| t.id).collect();
    let mut higher: Vec<TileId> = c.tiles().iter().filter(|t| c.level_of(t.id) > 4).map(|t| t.id).collect();
    higher.shuffle(&mut rng);
    higher.truncate(b.samples);
    tiles.extend(higher);
    tiles.sort_unstable();
    let mut skipped = 0;
    for t in tiles {
        for i in 0..4 {
            let side = tile_side(c, t, i);
            let Ok(w) = wiggle_into_pasting(c, &side) else {
                skipped += 1;
                continue;
            };
            let base = c.vertices()[w.h.index()].plane;
            let ok = replay(c, &side, &w.moves).ok().and_then(|s| s.last().cloned()).is_some_and(|last| {
                let n = last.len();
                let v = last.vertices();
                v[n / 4] == w.g1
                    && v[3 * n / 4] == w.g2
                    && v.contains(&w.f)
                    && v[n / 4 + 1..3 * n / 4].iter().all(|x| c.vertices()[x.index()].plane != base)
                    && distance(c, w.h, w.f).is_ok_and(|dd| dd >= 2)
            });
            if ok {
                d.tally.pass(Some(Witness::Moves { path: side, moves: w.moves }));
            } else {
                d.tally.fail(Witness::Path(side));
            }
        }
    }
    d.measure("sides_without_pasting", skipped);
    d.finish(c)
}

/// Two-sides paths of a tile taken as a complex of its own: the roots of the
/// pure complexes of levels 1 to 3.
fn correctness(c: &Complex, b: &Budgets, exec: Exec) -> LemmaReport {
    let top = c.level().min(3);
    let mut d =
        Draft::new(LemmaId::Correctness, b).param("budget", b.exhaustive.max_visited).param("max_tile_level", top);
    let tiles: Vec<Complex> =
        (1..=top).map(|n| crate::build_with(n, c.rules().clone(), false).expect("level is positive")).collect();
    let jobs: Vec<(usize, Path, Path)> = tiles
        .iter()
        .enumerate()
        .flat_map(|(k, pure)| {
            let t = pure.root();
            (0..4).filter_map(move |m| {
                let (a, z) = (CornerPos::from_index((m + 3) % 4), CornerPos::from_index((m + 1) % 4));
                let o = CornerPos::from_index((m + 2) % 4);
                let p = two_sides(pure, t, a, CornerPos::from_index(m), z)?;
                let q = two_sides(pure, t, a, o, z)?;
                Some((k, p, q))
            })
        })
        .collect();
    let sums = par::map(exec, &jobs, |(k, p, q)| flip_closure_to(&tiles[*k], p, q, b.exhaustive));
    let mut largest = 0;
    for ((_, p, _), s) in jobs.into_iter().zip(sums) {
        largest = largest.max(s.visited);
        if s.null_found || s.incorrect_found {
            let moves = s.witness.unwrap_or_default();
            d.tally.fail(Witness::Moves { path: p, moves });
        } else if !s.exhausted {
            d.tally.unsure(Some(Witness::Path(p)));
        } else if !s.target_found {
            d.tally.fail(Witness::Path(p));
        } else {
            d.tally.pass(Some(Witness::Path(p)));
        }
    }
    d.measure("largest_closure", largest);
    d.finish(c)
}

fn entry_distance(c: &Complex, b: &Budgets, exec: Exec) -> LemmaReport {
    let mut d = Draft::new(LemmaId::EntryDistance, b);
    let rows = pasting_entry_distances(c, exec);
    let mut least = BTreeSet::new();
    for r in rows {
        least.insert((r.level, r.distance));
        if r.holds() {
            d.tally.pass(None);
        } else {
            d.tally.fail(Witness::Entry(r));
        }
    }
    let mut mins: Vec<(u32, u32)> = Vec::new();
    for (l, dist) in least {
        if mins.last().map(|m| m.0) != Some(l) {
            mins.push((l, dist));
        }
    }
    let text: Vec<String> = mins.iter().map(|(l, dd)| format!("{l}:{dd}")).collect();
    d.measure("least_distance_by_level", text.join(" "));
    d.finish(c)
}

/// Random walks that take three pasting entries with plane walks between;
/// none may fit inside a single tile.
fn pasting_path_shape(c: &Complex, b: &Budgets) -> LemmaReport {
    let mut d = Draft::new(LemmaId::PastingPathShape, b).param("samples", b.samples * 4);
    let mut entries: Vec<(VertexId, VertexId)> =
        c.tiles().iter().filter(|t| t.pasted).flat_map(|t| c.entry_edges(t.id)).collect();
    entries.sort_unstable();
    let set: HashSet<(VertexId, VertexId)> = entries.iter().copied().collect();
    let mut rng = rng_for(b.seed, LemmaId::PastingPathShape, 0);
    for _ in 0..b.samples * 4 {
        let Some(path) = three_entries(c, &entries, &set, &mut rng) else { continue };
        let mut common: Option<BTreeSet<TileId>> = None;
        for &v in path.vertices() {
            let here: BTreeSet<TileId> = c.tiles_containing(v).into_iter().collect();
            common = Some(match common {
                None => here,
                Some(s) => s.intersection(&here).copied().collect(),
            });
        }
        if common.is_some_and(|s| s.is_empty()) {
            d.tally.pass(Some(Witness::Path(path)));
        } else {
            d.tally.fail(Witness::Path(path));
        }
    }
    d.finish(c)
}

fn three_entries(
    c: &Complex,
    entries: &[(VertexId, VertexId)],
    set: &HashSet<(VertexId, VertexId)>,
    rng: &mut ChaCha8Rng,
) -> Option<Path> {
    let &(a, w) = entries.choose(rng)?;
    let mut walk = vec![a, w];
    for _ in 0..2 {
        let cur = *walk.last().unwrap();
        let e = c.graph_edge(walk[walk.len() - 2], cur)?;
        let plane = c.home_plane(e);
        // Nearest vertex of this plane with an entry into another plane.
        let mut prev = vec![None; c.num_vertices()];
        let mut seen = vec![false; c.num_vertices()];
        for &v in &walk {
            seen[v.index()] = true;
        }
        let mut q = std::collections::VecDeque::from([cur]);
        let mut hit = None;
        while let Some(v) = q.pop_front() {
            let mut outs: Vec<VertexId> = c
                .neighbors(v)
                .iter()
                .filter(|(x, f)| c.home_plane(*f) != plane && set.contains(&(v, *x)) && !seen[x.index()])
                .map(|&(x, _)| x)
                .collect();
            if v != cur && !outs.is_empty() {
                outs.sort_unstable();
                hit = Some((v, *outs.choose(rng).unwrap()));
                break;
            }
            for &(x, f) in c.neighbors(v) {
                if c.home_plane(f) == plane && !seen[x.index()] {
                    seen[x.index()] = true;
                    prev[x.index()] = Some(v);
                    q.push_back(x);
                }
            }
        }
        let (v, x) = hit?;
        let mut seg = vec![v];
        while let Some(p) = prev[seg.last().unwrap().index()] {
            seg.push(p);
        }
        seg.pop();
        seg.reverse();
        walk.extend(seg);
        walk.push(x);
    }
    Some(Path::trusted(walk))
}

/// Builds one sampled path for a search check at tile level `n`.
fn sample_path(c: &Complex, id: LemmaId, n: u32, i: usize, rng: &mut ChaCha8Rng) -> Option<Path> {
    if id == LemmaId::PastingPathLength {
        let pasted: Vec<TileId> =
            c.tiles().iter().filter(|t| t.pasted && c.level_of(t.id) == n).map(|t| t.id).collect();
        let p = *pasted.choose(rng)?;
        let &(x, w) = c.entry_edges(p).choose(rng)?;
        let walk = walk_in_plane(c, &[x, w], plane_of(c, p), 2 << n, rng)?;
        return Some(Path::trusted(walk));
    }
    let t = *inner_tiles(c, n).choose(rng)?;
    let plane = plane_of(c, t);
    let pts = c.tile_points(t)?;
    let chain = |ps: &[Point]| -> Option<Vec<VertexId>> {
        let mut out = vec![pts[ps[0].index()]];
        for w in ps.windows(2) {
            out.extend_from_slice(&point_chain(c, t, w[0], w[1])?[1..]);
        }
        Some(out)
    };
    // Extends `mid` on both sides by plane geodesics of the given lengths.
    let wrap = |mid: Vec<VertexId>, l1: u32, l2: u32, rng: &mut ChaCha8Rng| -> Option<Path> {
        let k = mid.len();
        let mut head = if l1 > 0 { plane_geodesic_from(c, mid[0], plane, l1, mid[1], rng)? } else { vec![mid[0]] };
        let tail =
            if l2 > 0 { plane_geodesic_from(c, mid[k - 1], plane, l2, mid[k - 2], rng)? } else { vec![mid[k - 1]] };
        head.reverse();
        head.extend_from_slice(&mid[1..]);
        head.extend_from_slice(&tail[1..]);
        is_simple(&head).then(|| Path::trusted(head))
    };
    match id {
        LemmaId::LocalSegment if i.is_multiple_of(2) => {
            let ring = c.tile_boundary(t);
            let len = 5usize << n >> 2;
            let s = rng.gen_range(0..ring.len());
            let step = if coin(rng) { 1 } else { ring.len() - 1 };
            Some(Path::trusted((0..=len).map(|k| ring[(s + k * step) % ring.len()]).collect()))
        }
        LemmaId::LocalSegment => {
            let x = pts[rng.gen_range(0..8)];
            let len = 1usize << n;
            let walk = walk_inside(c, t, x, len, rng, |w| w.len() == len + 1)?;
            c.strictly_inside(*walk.last()?, t).then(|| Path::trusted(walk))
        }
        LemmaId::NonExtendable => {
            let p = mid_sides(c, t, SideLabel::from_index(rng.gen_range(0..4)), coin(rng))?;
            let l = p.len() as u32 + 1;
            if coin(rng) {
                wrap(p.into_vertices(), 0, l, rng)
            } else {
                wrap(p.into_vertices(), l, 0, rng)
            }
        }
        LemmaId::DeadPatterns => {
            use Point::*;
            let shapes: [[Point; 3]; 6] = [[A, U, B], [A, C, B], [C, LL, D], [C, LR, D], [A, U, B], [A, C, B]];
            let mut s = shapes[i % shapes.len()];
            if coin(rng) {
                s.reverse();
            }
            let mid = chain(&s)?;
            let l = 2 * (mid.len() as u32 - 1);
            wrap(mid, l, l, rng)
        }
        LemmaId::LowerCornerPaths => {
            let up = point_chain(c, t, Point::LL, Point::C)?;
            let along = point_chain(c, t, Point::LL, Point::D)?;
            let l = (2 << n) + 1;
            wrap(vec![up[1], up[0], along[1]], l, l, rng)
        }
        LemmaId::IncorrectSegments => {
            let mut cands = Vec::new();
            for y in c.tile_boundary(t) {
                let mut ins: Vec<VertexId> = c
                    .neighbors(y)
                    .iter()
                    .filter(|(w, e)| c.home_plane(*e) == plane && c.strictly_inside(*w, t))
                    .map(|&(w, _)| w)
                    .collect();
                ins.sort_unstable();
                ins.dedup();
                for (k, &x) in ins.iter().enumerate() {
                    for &z in &ins[k + 1..] {
                        let p = Path::trusted(vec![x, y, z]);
                        if incorrect_segments(c, &p) == [(1, t)] {
                            cands.push(vec![x, y, z]);
                        }
                    }
                }
            }
            let mut mid = cands.choose(rng)?.clone();
            if coin(rng) {
                mid.reverse();
            }
            let l = (4 << n) + 1;
            wrap(mid, l, l, rng)
        }
        _ => None,
    }
}

fn reduction(c: &Complex, id: LemmaId, n: u32, budget: SearchBudget, b: &Budgets, exec: Exec) -> LemmaReport {
    let mut d = Draft::new(id, b).param("budget", budget.max_visited);
    d.tile_level = Some(n);
    d.empty = Verdict::Inconclusive;
    let mut rng = rng_for(b.seed, id, n);
    let mut seen = BTreeSet::new();
    let mut paths = Vec::new();
    for i in 0..b.samples * 20 {
        if paths.len() >= b.samples {
            break;
        }
        if let Some(p) = sample_path(c, id, n, paths.len() + i, &mut rng) {
            if seen.insert(p.clone()) {
                paths.push(p);
            }
        }
    }
    let results = par::map(exec, &paths, |p| {
        if distance(c, p.first(), p.last()).ok() == Some(p.len() as u32) {
            // A geodesic cannot reach a null form.
            return (None, true, 0);
        }
        let r = reduce_to_null(c, p, budget);
        (r.moves, r.complete, r.visited)
    });
    let mut most = 0;
    for (p, (moves, complete, visited)) in paths.into_iter().zip(results) {
        most = most.max(visited);
        match moves {
            Some(m) => d.tally.pass(Some(Witness::Reduction { path: p, moves: m })),
            None if complete => d.tally.fail(Witness::Path(p)),
            None => d.tally.unsure(Some(Witness::Path(p))),
        }
    }
    d.measure("most_visited", most);
    if id == LemmaId::LocalSegment && n == 3 {
        if let Some(&t) = inner_tiles(c, 3).first() {
            let ring = c.tile_boundary(t);
            let shortest = (2..=ring.len()).find(|&len| {
                reduce_to_null(c, &Path::trusted(ring[..=len.min(ring.len() - 1)].to_vec()), b.search).moves.is_some()
            });
            d.measure("shortest_reducing_boundary_walk", shortest.map_or("none".to_string(), |l| l.to_string()));
        }
    }
    d.finish(c)
}

#[cfg(test)]
mod tests {
    use super::super::sample::edge_inside;
    use super::*;

    #[test]
    fn tally_verdicts() {
        let mut t = Tally::new(1);
        assert_eq!(t.verdict(Verdict::Inconclusive), Verdict::Inconclusive);
        t.pass(None);
        assert_eq!(t.verdict(Verdict::Inconclusive), Verdict::Pass);
        t.unsure(None);
        assert_eq!(t.verdict(Verdict::Pass), Verdict::Inconclusive);
        t.fail(Witness::Vertex(VertexId(0)));
        assert_eq!(t.verdict(Verdict::Pass), Verdict::Fail);
    }

    #[test]
    fn edge_inside_level_two() {
        let c = crate::build(3).unwrap();
        let t = inner_tiles(&c, 2)[0];
        let p = c.tile_points(t).unwrap();
        assert!(edge_inside(&c, t, p[Point::U.index()], p[Point::A.index()]));
    }
}
