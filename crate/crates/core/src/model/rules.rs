use serde::{Deserialize, Serialize};
use std::fmt;

use super::kind::{ChildPos, CornerPos, Point, CHILD_CYCLES, INTERIOR_EDGES};

/// Orientation of every child and the interior-edge conventions used when a
/// tile is subdivided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTable {
    /// Logical corners (UL, UR, LR, LL) of each child, in `ChildPos` order,
    /// named by the parent point they sit on.
    pub children: [[Point; 4]; 6],
    /// Macro-edge type of each interior slot of `INTERIOR_EDGES`.
    pub edge_types: [u8; 8],
    /// The child lying on the A-side of each interior slot.
    pub a_side: [ChildPos; 8],
}

impl Default for RuleTable {
    fn default() -> Self {
        use Point::*;
        RuleTable {
            children: [[UL, U, A, L], [U, B, C, A], [UR, R, B, U], [LR, C, B, R], [LR, D, LL, C], [C, LL, L, A]],
            edge_types: [1, 2, 3, 4, 5, 6, 7, 8],
            a_side: [
                ChildPos::LeftUpper,
                ChildPos::LeftUpper,
                ChildPos::Middle,
                ChildPos::Middle,
                ChildPos::RightUpper,
                ChildPos::Middle,
                ChildPos::Lower,
                ChildPos::RightLower,
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    pub child: Option<ChildPos>,
    pub message: String,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.child {
            Some(c) => write!(f, "{c:?}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

fn rotation_of(cycle: &[Point; 4], corners: &[Point; 4]) -> Option<usize> {
    (0..4).find(|&k| (0..4).all(|i| corners[i] == cycle[(i + k) % 4]))
}

impl RuleTable {
    pub fn child_corners(&self, pos: ChildPos) -> [Point; 4] {
        self.children[pos.index()]
    }

    /// Quarter turns between the canonical clockwise cycle of the child and
    /// its logical frame. `None` for a malformed entry.
    pub fn rotation(&self, pos: ChildPos) -> Option<u8> {
        rotation_of(&CHILD_CYCLES[pos.index()], &self.children[pos.index()]).map(|k| k as u8)
    }

    pub fn edge_type(&self, slot: usize) -> u8 {
        self.edge_types[slot]
    }

    /// Checks the table against the corner constraints of the subdivision.
    pub fn validate(&self) -> Vec<RuleViolation> {
        let mut out = Vec::new();
        let mut bad = |child: Option<ChildPos>, message: String| out.push(RuleViolation { child, message });
        for pos in ChildPos::ALL {
            let corners = &self.children[pos.index()];
            let cycle = &CHILD_CYCLES[pos.index()];
            if rotation_of(cycle, corners).is_some() {
                continue;
            }
            let mut reversed = *cycle;
            reversed.reverse();
            if rotation_of(&reversed, corners).is_some() {
                bad(Some(pos), "reflection".into());
            } else {
                bad(Some(pos), format!("corners {corners:?} are not the child's cycle {cycle:?}"));
            }
        }
        let at = |pos: ChildPos, c: CornerPos| self.children[pos.index()][c.index()];
        if at(ChildPos::LeftUpper, CornerPos::UL) != Point::UL {
            bad(Some(ChildPos::LeftUpper), "logical UL must be the parent's UL".into());
        }
        if at(ChildPos::RightUpper, CornerPos::UL) != Point::UR {
            bad(Some(ChildPos::RightUpper), "logical UL must be the parent's UR".into());
        }
        for pos in [ChildPos::RightLower, ChildPos::Lower] {
            if at(pos, CornerPos::UL) != Point::LR {
                bad(Some(pos), "logical UL must be the parent's LR".into());
            }
        }
        if at(ChildPos::LeftLower, CornerPos::UR) != Point::LL {
            bad(Some(ChildPos::LeftLower), "must meet the parent's LL with its logical UR".into());
        }
        if at(ChildPos::Lower, CornerPos::LR) != Point::LL {
            bad(Some(ChildPos::Lower), "must meet the parent's LL with its logical LR".into());
        }

        let mut seen = [false; 9];
        for (slot, &t) in self.edge_types.iter().enumerate() {
            if !(1..=8).contains(&t) || seen[t as usize] {
                bad(None, format!("interior slot {slot} has invalid or repeated type {t}"));
            } else {
                seen[t as usize] = true;
            }
        }
        if self.edge_types[0] != 1 {
            bad(None, "the U-A interior edge must have type 1".into());
        }
        for (slot, &(p, q)) in INTERIOR_EDGES.iter().enumerate() {
            let child = self.a_side[slot];
            let cycle = &CHILD_CYCLES[child.index()];
            let has = (0..4).any(|i| {
                let (x, y) = (cycle[i], cycle[(i + 1) % 4]);
                (x, y) == (p, q) || (x, y) == (q, p)
            });
            if !has {
                bad(Some(child), format!("is not adjacent to interior slot {slot} ({p:?}-{q:?})"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_is_valid() {
        assert!(RuleTable::default().validate().is_empty());
    }

    #[test]
    fn right_upper_anchored_at_top_mid_is_rejected() {
        let mut t = RuleTable::default();
        // rotate RightUpper so its UL is U
        t.children[ChildPos::RightUpper.index()] = [Point::U, Point::UR, Point::R, Point::B];
        let v = t.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].child, Some(ChildPos::RightUpper));
    }

    #[test]
    fn reflected_middle_is_rejected() {
        let mut t = RuleTable::default();
        t.children[ChildPos::Middle.index()] = [Point::U, Point::A, Point::C, Point::B];
        let v = t.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].message, "reflection");
    }

    #[test]
    fn every_middle_rotation_is_accepted() {
        for k in 0..4 {
            let mut t = RuleTable::default();
            let c = CHILD_CYCLES[ChildPos::Middle.index()];
            t.children[1] = [c[k], c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]];
            assert!(t.validate().is_empty());
        }
    }

    #[test]
    fn default_rotations() {
        let t = RuleTable::default();
        let r: Vec<_> = ChildPos::ALL.iter().map(|&p| t.rotation(p).unwrap()).collect();
        assert_eq!(r, vec![0, 0, 1, 2, 1, 2]);
    }
}
