//! Distances, geodesic bundles and the spread measurements.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, TileId, VertexId};
use crate::par::{self, Exec};
use crate::path::Path;

pub const UNREACHED: u32 = u32::MAX;

/// Reusable breadth-first search state.
pub struct Bfs {
    dist: Vec<u32>,
    touched: Vec<VertexId>,
    queue: VecDeque<VertexId>,
}

impl Bfs {
    pub fn new(c: &Complex) -> Bfs {
        Bfs { dist: vec![UNREACHED; c.num_vertices()], touched: Vec::new(), queue: VecDeque::new() }
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.dist[v.index()] = UNREACHED;
        }
        self.queue.clear();
    }

    /// Multi-source search. Stops after `limit` layers, or once `stop` has
    /// returned true for a settled vertex.
    pub fn run(
        &mut self,
        c: &Complex,
        sources: &[VertexId],
        limit: u32,
        mut stop: impl FnMut(VertexId, u32) -> bool,
    ) -> &[u32] {
        self.reset();
        for &s in sources {
            if self.dist[s.index()] == UNREACHED {
                self.dist[s.index()] = 0;
                self.touched.push(s);
                self.queue.push_back(s);
            }
        }
        while let Some(v) = self.queue.pop_front() {
            let d = self.dist[v.index()];
            if stop(v, d) {
                break;
            }
            if d >= limit {
                continue;
            }
            for &(w, _) in c.neighbors(v) {
                if self.dist[w.index()] == UNREACHED {
                    self.dist[w.index()] = d + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }
        &self.dist
    }

    pub fn dist(&self, v: VertexId) -> u32 {
        self.dist[v.index()]
    }
}

/// Full distance table from `sources`; unreachable vertices hold `UNREACHED`.
pub fn distances_from(c: &Complex, sources: &[VertexId]) -> Vec<u32> {
    let mut bfs = Bfs::new(c);
    bfs.run(c, sources, UNREACHED, |_, _| false);
    bfs.dist
}

/// Shortest-path edge count between `a` and `b`.
pub fn distance(c: &Complex, a: VertexId, b: VertexId) -> Result<u32> {
    c.vertex(a)?;
    c.vertex(b)?;
    let mut bfs = Bfs::new(c);
    bfs.run(c, &[a], UNREACHED, |v, _| v == b);
    match bfs.dist(b) {
        UNREACHED => Err(Error::Disconnected(a, b)),
        d => Ok(d),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicBundle {
    pub source: VertexId,
    pub target: VertexId,
    pub distance: u32,
    /// Number of geodesics, saturated at the cap.
    pub count: u64,
    pub count_capped: bool,
    /// Vertices at distance ⌈D/2⌉ from the source on some geodesic, sorted.
    pub midpoints: Vec<VertexId>,
    /// Largest distance between two midpoints.
    pub spread: u32,
}

impl GeodesicBundle {
    pub fn ratio(&self) -> f64 {
        if self.distance == 0 {
            0.0
        } else {
            self.spread as f64 / self.distance as f64
        }
    }
}

struct Layers {
    from_a: Vec<u32>,
    from_b: Vec<u32>,
    d: u32,
}

impl Layers {
    fn new(c: &Complex, a: VertexId, b: VertexId) -> Result<Layers> {
        c.vertex(a)?;
        c.vertex(b)?;
        let from_a = distances_from(c, &[a]);
        let d = from_a[b.index()];
        if d == UNREACHED {
            return Err(Error::Disconnected(a, b));
        }
        Ok(Layers { from_a, from_b: distances_from(c, &[b]), d })
    }

    fn on_geodesic(&self, v: VertexId) -> bool {
        let (x, y) = (self.from_a[v.index()], self.from_b[v.index()]);
        x != UNREACHED && y != UNREACHED && x + y == self.d
    }
}

/// Distance, geodesic count and midpoint spread for the pair `a`, `b`.
/// The midpoint set does not depend on `cap`.
pub fn geodesic_bundle(c: &Complex, a: VertexId, b: VertexId, cap: u64) -> Result<GeodesicBundle> {
    let lay = Layers::new(c, a, b)?;
    let d = lay.d;
    let mid = d.div_ceil(2);

    let mut by_layer: Vec<Vec<VertexId>> = vec![Vec::new(); d as usize + 1];
    for v in c.vertices() {
        if lay.on_geodesic(v.id) {
            by_layer[lay.from_a[v.id.index()] as usize].push(v.id);
        }
    }
    let mut ways: BTreeMap<VertexId, u64> = BTreeMap::from([(a, 1)]);
    for layer in &by_layer[1..] {
        for &v in layer {
            let n = c
                .neighbors(v)
                .iter()
                .filter(|(w, _)| lay.on_geodesic(*w) && lay.from_a[w.index()] + 1 == lay.from_a[v.index()])
                .fold(0u64, |acc, (w, _)| acc.saturating_add(ways[w]));
            ways.insert(v, n);
        }
    }
    let total = ways[&b];
    let midpoints = by_layer[mid as usize].clone();
    Ok(GeodesicBundle {
        source: a,
        target: b,
        distance: d,
        count: total.min(cap),
        count_capped: total > cap,
        spread: spread(c, &midpoints, 2 * mid),
        midpoints,
    })
}

/// Largest pairwise distance within `set`, searching at most `limit` layers.
fn spread(c: &Complex, set: &[VertexId], limit: u32) -> u32 {
    let mut bfs = Bfs::new(c);
    let mut best = 0;
    for (i, &m) in set.iter().enumerate() {
        let rest = &set[i + 1..];
        if rest.is_empty() {
            break;
        }
        let mut left = rest.len();
        bfs.run(c, &[m], limit, |v, _| {
            if rest.binary_search(&v).is_ok() {
                left -= 1;
            }
            left == 0
        });
        best = rest.iter().map(|&x| bfs.dist(x)).fold(best, u32::max);
    }
    best
}

/// Up to `cap` geodesics from `a` to `b`, in lexicographic order of vertex ids.
pub fn geodesics(c: &Complex, a: VertexId, b: VertexId, cap: usize) -> Result<Vec<Path>> {
    let lay = Layers::new(c, a, b)?;
    let mut out = Vec::new();
    let mut stack = vec![a];
    walk(c, &lay, b, cap, &mut stack, &mut out);
    Ok(out)
}

fn walk(c: &Complex, lay: &Layers, b: VertexId, cap: usize, stack: &mut Vec<VertexId>, out: &mut Vec<Path>) {
    if out.len() >= cap {
        return;
    }
    let v = *stack.last().unwrap();
    if v == b {
        out.push(Path::trusted(stack.clone()));
        return;
    }
    let mut next: Vec<VertexId> = c
        .neighbors(v)
        .iter()
        .map(|&(w, _)| w)
        .filter(|&w| lay.on_geodesic(w) && lay.from_a[w.index()] == lay.from_a[v.index()] + 1)
        .collect();
    next.sort_unstable();
    next.dedup();
    for w in next {
        stack.push(w);
        walk(c, lay, b, cap, stack, out);
        stack.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticityRow {
    pub a: VertexId,
    pub b: VertexId,
    pub distance: u32,
    pub spread: u32,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticityScan {
    pub rows: Vec<EllipticityRow>,
    pub min_ratio: f64,
    pub median_ratio: f64,
}

impl EllipticityScan {
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("a\tb\tD\tR\tR/D\n");
        for r in &self.rows {
            let _ = writeln!(s, "{}\t{}\t{}\t{}\t{:.6}", r.a.0, r.b.0, r.distance, r.spread, r.ratio);
        }
        let _ = writeln!(s, "# min\t{:.6}\n# median\t{:.6}", self.min_ratio, self.median_ratio);
        s
    }
}

/// `count` distinct unordered pairs of distinct vertices, reproducible for a seed.
pub fn sample_pairs(c: &Complex, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = c.vertices().iter().map(|v| v.id).collect();
    let n = ids.len();
    let possible = n * n.saturating_sub(1) / 2;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count.min(possible) {
        let pick: Vec<_> = ids.choose_multiple(&mut rng, 2).copied().collect();
        let pair = (pick[0].min(pick[1]), pick[0].max(pick[1]));
        if seen.insert(pair) {
            out.push(pair);
        }
    }
    out
}

/// The UL and LR corners of a tile.
pub fn corner_pair(c: &Complex, t: TileId) -> Result<(VertexId, VertexId)> {
    let tile = c.tile(t)?;
    Ok((tile.corners[0], tile.corners[2]))
}

pub fn ellipticity_scan(c: &Complex, pairs: &[(VertexId, VertexId)], exec: Exec) -> Result<EllipticityScan> {
    let rows = par::map(exec, pairs, |&(a, b)| {
        geodesic_bundle(c, a, b, 1).map(|g| EllipticityRow {
            a,
            b,
            distance: g.distance,
            spread: g.spread,
            ratio: g.ratio(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let min_ratio = ratios.first().copied().unwrap_or(0.0);
    let median_ratio = match ratios.len() {
        0 => 0.0,
        n if n % 2 == 1 => ratios[n / 2],
        n => (ratios[n / 2 - 1] + ratios[n / 2]) / 2.0,
    };
    Ok(EllipticityScan { rows, min_ratio, median_ratio })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDistance {
    /// Vertex with an edge into the pasted tile.
    pub entry: VertexId,
    pub pasted_tile: TileId,
    pub level: u32,
    /// Tile holding `entry` strictly inside, with the pasted tile off its boundary.
    pub host: TileId,
    pub distance: u32,
}

impl EntryDistance {
    pub fn bound(&self) -> u32 {
        1 << (self.level - 1)
    }

    pub fn holds(&self) -> bool {
        self.distance >= self.bound()
    }
}

/// For every vertex with an entry edge into a pasted tile of level at least
/// 2, and every tile holding that vertex strictly inside while sharing no
/// vertex with the pasted tile's boundary, the distance from the vertex to
/// that tile's boundary.
pub fn pasting_entry_distances(c: &Complex, exec: Exec) -> Vec<EntryDistance> {
    let mut by_host: BTreeMap<TileId, Vec<(VertexId, TileId, u32)>> = BTreeMap::new();
    for p in c.tiles().iter().filter(|t| t.pasted) {
        let level = c.level_of(p.id);
        if level < 2 {
            continue;
        }
        let boundary = c.tile_boundary(p.id);
        let mut entries: Vec<VertexId> = c.entry_edges(p.id).into_iter().map(|e| e.0).collect();
        entries.dedup();
        for y in entries {
            for host in c.tiles_containing(y) {
                if c.strictly_inside(y, host) && !boundary.iter().any(|&v| c.on_tile_boundary(v, host)) {
                    by_host.entry(host).or_default().push((y, p.id, level));
                }
            }
        }
    }
    let groups: Vec<_> = by_host.into_iter().collect();
    par::flat_map(exec, &groups, |(host, items)| {
        let mut bfs = Bfs::new(c);
        let mut targets: Vec<VertexId> = items.iter().map(|i| i.0).collect();
        targets.sort_unstable();
        targets.dedup();
        let mut left = targets.len();
        bfs.run(c, &c.tile_boundary(*host), UNREACHED, |v, _| {
            if targets.binary_search(&v).is_ok() {
                left -= 1;
            }
            left == 0
        });
        items
            .iter()
            .map(|&(entry, pasted_tile, level)| EntryDistance {
                entry,
                pasted_tile,
                level,
                host: *host,
                distance: bfs.dist(entry),
            })
            .collect()
    })
}
