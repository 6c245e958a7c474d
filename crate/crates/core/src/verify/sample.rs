//! Seeded generation of test paths.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Complex, PlaneId, TileId, VertexId};

use super::LemmaId;

pub(super) fn rng_for(seed: u64, id: LemmaId, level: u32) -> ChaCha8Rng {
    let salt = (id as u64) << 8 | u64::from(level);
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

/// Subdivided, non-pasted tiles of the given level that have a parent.
pub(super) fn inner_tiles(c: &Complex, level: u32) -> Vec<TileId> {
    c.tiles()
        .iter()
        .filter(|t| !t.pasted && t.parent.is_some() && t.children.is_some() && c.level_of(t.id) == level)
        .map(|t| t.id)
        .collect()
}

pub(super) fn plane_of(c: &Complex, t: TileId) -> PlaneId {
    c.tiles()[t.index()].plane
}

fn plane_neighbors(c: &Complex, v: VertexId, plane: PlaneId) -> impl Iterator<Item = VertexId> + '_ {
    c.neighbors(v).iter().filter(move |(_, e)| c.home_plane(*e) == plane).map(|&(w, _)| w)
}

/// Distances from `x` using only edges of `plane`.
pub(super) fn plane_distances(c: &Complex, x: VertexId, plane: PlaneId) -> Vec<u32> {
    let mut d = vec![u32::MAX; c.num_vertices()];
    d[x.index()] = 0;
    let mut q = VecDeque::from([x]);
    while let Some(v) = q.pop_front() {
        for w in plane_neighbors(c, v, plane) {
            if d[w.index()] == u32::MAX {
                d[w.index()] = d[v.index()] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// A geodesic of `plane` with `len` edges leaving `x`, whose second vertex
/// is not `avoid`.
pub(super) fn plane_geodesic_from(
    c: &Complex,
    x: VertexId,
    plane: PlaneId,
    len: u32,
    avoid: VertexId,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<VertexId>> {
    let d = plane_distances(c, x, plane);
    let mut far: Vec<VertexId> = c.vertices().iter().map(|v| v.id).filter(|v| d[v.index()] == len).collect();
    far.shuffle(rng);
    'outer: for &u in far.iter().take(16) {
        let mut seq = vec![u];
        let mut cur = u;
        while cur != x {
            let k = d[cur.index()];
            let mut opts: Vec<VertexId> =
                plane_neighbors(c, cur, plane).filter(|w| d[w.index()] + 1 == k && !(k == 2 && *w == avoid)).collect();
            opts.sort_unstable();
            opts.dedup();
            let Some(&next) = opts.choose(rng) else { continue 'outer };
            seq.push(next);
            cur = next;
        }
        seq.reverse();
        return Some(seq);
    }
    None
}

/// Whether the graph edge `u-w` is a side of a minimal tile inside `t`.
pub(super) fn edge_inside(c: &Complex, t: TileId, u: VertexId, w: VertexId) -> bool {
    c.faces_of_edge(u, w).any(|f| c.tile_ancestors(f).any(|a| a == t))
}

/// A random self-avoiding walk along edges inside `t`.
/// `stop` ends the walk early; `None` if the walk gets stuck.
pub(super) fn walk_inside(
    c: &Complex,
    t: TileId,
    start: VertexId,
    max_len: usize,
    rng: &mut ChaCha8Rng,
    mut stop: impl FnMut(&[VertexId]) -> bool,
) -> Option<Vec<VertexId>> {
    let mut walk = vec![start];
    while walk.len() <= max_len {
        if walk.len() > 1 && stop(&walk) {
            return Some(walk);
        }
        let cur = *walk.last().unwrap();
        let mut opts: Vec<VertexId> = c
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| !walk.contains(&w) && edge_inside(c, t, cur, w))
            .collect();
        opts.sort_unstable();
        opts.dedup();
        walk.push(*opts.choose(rng)?);
    }
    None
}

/// Extends `start` by a random self-avoiding walk on edges of `plane`.
pub(super) fn walk_in_plane(
    c: &Complex,
    start: &[VertexId],
    plane: PlaneId,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<VertexId>> {
    let mut walk = start.to_vec();
    while walk.len() <= len {
        let cur = *walk.last().unwrap();
        let mut opts: Vec<VertexId> = plane_neighbors(c, cur, plane).filter(|w| !walk.contains(w)).collect();
        opts.sort_unstable();
        opts.dedup();
        walk.push(*opts.choose(rng)?);
    }
    Some(walk)
}

pub(super) fn coin(rng: &mut ChaCha8Rng) -> bool {
    rng.gen_bool(0.5)
}

pub(super) fn is_simple(v: &[VertexId]) -> bool {
    let mut s: Vec<VertexId> = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}
