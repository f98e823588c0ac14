use serde::Serialize;

use super::{harmonic, GameParams};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Smallest `rhs - lhs` over the condition's range; `None` for an empty range.
    pub slack: Option<f64>,
}

impl ConditionReport {
    fn from_slacks(slacks: impl Iterator<Item = f64>) -> Self {
        let slack = slacks.fold(None, |m: Option<f64>, s| Some(m.map_or(s, |m| m.min(s))));
        ConditionReport {
            holds: slack.is_none_or(|s| s >= 0.0),
            slack,
        }
    }
}

/// The three sufficient conditions for a star with `gp.n` leaves to be stable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarConditions {
    pub holds: bool,
    pub c1: ConditionReport,
    pub c2: ConditionReport,
    pub c3: ConditionReport,
}

/// Evaluates, with `H = H_n^s` and `n` the number of leaves,
///
/// 1. `a / H <= 2^s * l`
/// 2. `b (i/2) (H_{i+1}^s - 1 - 2^-s) / H + a (H_{i+1}^s - 1) / H <= l i`
/// 3. `b (i/2) (H - 1 - 2^-s) / H + a (H_{i+1}^s - 2) / H <= l (i - 1)`
///
/// for every `2 <= i <= n - 1`.
pub fn star_ne_conditions(gp: &GameParams) -> Result<StarConditions> {
    gp.validate()?;
    let n = gp.n;
    if n < 2 {
        return Err(Error::BadSize(format!("a star needs at least 2 leaves, got {n}")));
    }
    let (a, b, l, s) = (gp.a, gp.b, gp.l, gp.s);
    let h = harmonic(n, s);
    let half_s = 2f64.powf(-s);
    let c1 = ConditionReport::from_slacks(std::iter::once(2f64.powf(s) * l - a / h));
    let c2 = ConditionReport::from_slacks((2..n).map(|i| {
        let hi = harmonic(i + 1, s);
        let fi = i as f64;
        l * fi - (b * fi / 2.0 * (hi - 1.0 - half_s) / h + a * (hi - 1.0) / h)
    }));
    let c3 = ConditionReport::from_slacks((2..n).map(|i| {
        let hi = harmonic(i + 1, s);
        let fi = i as f64;
        l * (fi - 1.0) - (b * fi / 2.0 * (h - 1.0 - half_s) / h + a * (hi - 2.0) / h)
    }));
    Ok(StarConditions {
        holds: c1.holds && c2.holds && c3.holds,
        c1,
        c2,
        c3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_transactions_always_qualify() {
        let r = star_ne_conditions(&GameParams::new(0.0, 0.0, 1.0, 0.7, 6)).unwrap();
        assert!(r.holds);
        // c3 at i = 2 has slack l * (i - 1) = 1.
        assert_eq!(r.c3.slack, Some(1.0));
        assert_eq!(r.c2.slack, Some(2.0));
    }

    #[test]
    fn two_leaves_leave_the_ranges_empty() {
        let r = star_ne_conditions(&GameParams::new(1.0, 1.0, 1.0, 1.0, 2)).unwrap();
        assert_eq!(r.c2.slack, None);
        assert!(r.c2.holds && r.c3.holds);
    }

    #[test]
    fn moderate_bias_regime() {
        for n in 2..12 {
            let s = 2.0;
            let h = harmonic(n, s);
            let gp = GameParams::new(h, h, 1.0, s, n);
            assert!(star_ne_conditions(&gp).unwrap().holds, "n = {n}");
        }
    }
}
