//! Complexes of a given level.

use crate::error::{Error, Result};
use crate::model::{Complex, RuleTable};

/// The complex of level `level` under the default rule table.
///
/// Levels 1 to 3 are pure subdivisions of one tile. Every further level adds
/// a subdivision round followed by a pasting round.
pub fn build(level: u32) -> Result<Complex> {
    build_with(level, RuleTable::default(), true)
}

/// Like [`build`], with explicit rules. With `pastings` off the result is the
/// pure macrotile of that level.
pub fn build_with(level: u32, rules: RuleTable, pastings: bool) -> Result<Complex> {
    if level == 0 {
        return Err(Error::InvalidLevel(level));
    }
    let mut c = Complex::new(rules)?;
    extend(&mut c, level, pastings);
    Ok(c)
}

/// Advances `c` to `level`, pasting after every round from the third on.
pub fn extend(c: &mut Complex, level: u32, pastings: bool) {
    while c.level() < level {
        c.subdivide_round();
        if pastings && c.round() >= 3 {
            c.pasting_round();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_is_rejected() {
        assert!(matches!(build(0), Err(Error::InvalidLevel(0))));
    }

    #[test]
    fn pastings_start_at_level_four() {
        assert!(build(3).unwrap().pasting_log().is_empty());
        let c = build(4).unwrap();
        assert!(!c.pasting_log().is_empty());
        assert_eq!(c.level(), 4);
        let r = c.validate();
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(r.planes.len(), 1 + c.pasting_log().len());
    }
}
