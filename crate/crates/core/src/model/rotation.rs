//! Rotation systems, derived from the clockwise corner order of minimal tiles.
//!
//! A tile listed clockwise as `.., prev, v, next, ..` occupies the wedge at
//! `v` that runs clockwise from the ray towards `next` to the ray towards
//! `prev`. Chaining wedges gives the clockwise order around `v`; on the
//! boundary of a plane the chain is open and starts at the ray that no wedge
//! ends on.

use std::collections::BTreeMap;

use super::{Complex, PlaneId, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub plane: PlaneId,
    /// Neighbours in clockwise order.
    pub order: Vec<VertexId>,
    /// False when `v` is on the boundary of the plane.
    pub closed: bool,
    /// Wedges could not be chained into a single fan.
    pub broken: bool,
}

impl Complex {
    /// Clockwise order of the neighbours of `v` within one plane.
    pub fn rotation_in(&self, v: VertexId, plane: PlaneId) -> Result<Rotation> {
        self.vertex(v)?;
        if plane.index() >= self.planes.len() {
            return Err(Error::UnknownPlane(plane));
        }
        let mut succ: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut has_pred: BTreeMap<VertexId, bool> = BTreeMap::new();
        let mut broken = false;
        for &t in self.tiles_at(v) {
            let tile = self.t(t);
            if !tile.is_minimal() || tile.plane != plane {
                continue;
            }
            let i = tile.corner_index(v).unwrap();
            let next = tile.corners[(i + 1) % 4];
            let prev = tile.corners[(i + 3) % 4];
            if succ.insert(next, prev).is_some() {
                broken = true;
            }
            has_pred.entry(next).or_insert(false);
            if has_pred.insert(prev, true) == Some(true) {
                broken = true;
            }
        }
        if succ.is_empty() {
            return Ok(Rotation { plane, order: Vec::new(), closed: false, broken });
        }
        let starts: Vec<VertexId> = has_pred.iter().filter(|(_, &p)| !p).map(|(&n, _)| n).collect();
        let (start, closed) = match starts.as_slice() {
            [] => (*succ.keys().next().unwrap(), true),
            [s] => (*s, false),
            _ => {
                broken = true;
                (starts[0], false)
            }
        };
        let mut order = vec![start];
        let mut cur = start;
        while let Some(&n) = succ.get(&cur) {
            if n == start {
                break;
            }
            if order.len() > has_pred.len() {
                broken = true;
                break;
            }
            order.push(n);
            cur = n;
        }
        if order.len() != has_pred.len() {
            broken = true;
        }
        Ok(Rotation { plane, order, closed, broken })
    }

    /// One rotation per plane in which `v` lies, ordered by plane id.
    pub fn rotation_order(&self, v: VertexId) -> Result<Vec<Rotation>> {
        self.vertex(v)?;
        let mut planes: Vec<PlaneId> =
            self.tiles_at(v).iter().map(|&t| self.t(t)).filter(|t| t.is_minimal()).map(|t| t.plane).collect();
        planes.sort_unstable();
        planes.dedup();
        planes.into_iter().map(|p| self.rotation_in(v, p)).collect()
    }
}
