//! Moving the middle of a tile side into the pasting glued over it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Complex, TileId, VertexId};

use super::{macro_flip, Move, Path};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wiggle {
    pub moves: Vec<Move>,
    /// Midpoint of the side.
    pub h: VertexId,
    /// Quarter points.
    pub g1: VertexId,
    pub g2: VertexId,
    /// Far corner of the pasted tile.
    pub f: VertexId,
    pub pasted_tile: TileId,
}

/// For a path running along one full side of a macrotile, finds the pasting
/// whose core is the side's midpoint and whose arms end at the quarter
/// points, and flips the middle half of the path across that pasted tile.
pub fn wiggle_into_pasting(c: &Complex, path: &Path) -> Result<Wiggle> {
    let v = path.vertices();
    let n = path.len();
    if n < 4 || !n.is_multiple_of(4) {
        return Err(Error::NoPasting(format!("side of length {n} has no quarter points")));
    }
    let (g1, h, g2) = (v[n / 4], v[n / 2], v[3 * n / 4]);
    let rec = c
        .pasting_log()
        .iter()
        .find(|r| r.site.y == h && ((r.site.x1, r.site.z1) == (g1, g2) || (r.site.x1, r.site.z1) == (g2, g1)))
        .ok_or_else(|| Error::NoPasting(format!("no pasting with core {h} over {g1}, {g2}")))?;
    let middle = Path::trusted(v[n / 4..=3 * n / 4].to_vec());
    let inner = macro_flip(c, &middle, rec.tile)?;
    let moves = inner.into_iter().map(|m| Move { index: m.index + n / 4, ..m }).collect();
    Ok(Wiggle { moves, h, g1, g2, f: rec.t1, pasted_tile: rec.tile })
}

/// Full side `i` of tile `t` as a path, from corner `i` to corner `i + 1`.
pub fn tile_side(c: &Complex, t: TileId, i: usize) -> Path {
    Path::trusted(c.tile_side_chain(t, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::replay;

    #[test]
    fn root_sides_of_level_four() {
        let c = crate::build(4).unwrap();
        let t = c.root();
        let mut done = 0;
        for i in 0..4 {
            let side = tile_side(&c, t, i);
            if let Ok(w) = wiggle_into_pasting(&c, &side) {
                let steps = replay(&c, &side, &w.moves).unwrap();
                let last = steps.last().unwrap();
                assert!(last.vertices().contains(&w.f));
                assert!(!last.vertices().contains(&w.h));
                done += 1;
            }
        }
        assert!(done > 0);
    }

    #[test]
    fn short_side_has_no_pasting() {
        let c = crate::build(5).unwrap();
        let lvl3 = c.tiles().iter().find(|t| !t.pasted && c.level_of(t.id) == 3).unwrap().id;
        let side = tile_side(&c, lvl3, 0);
        assert!(matches!(wiggle_into_pasting(&c, &side), Err(Error::NoPasting(_))));
    }
}
