//! Truncated sums of positive decreasing series with integral-test tails.

use serde::{Deserialize, Serialize};

/// A partial sum plus a certified upper bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesBound {
    pub partial: f64,
    pub tail_upper: f64,
    /// Number of terms in `partial`.
    pub terms: usize,
}

impl SeriesBound {
    pub fn finite(partial: f64, terms: usize) -> Self {
        SeriesBound {
            partial,
            tail_upper: 0.0,
            terms,
        }
    }

    /// Upper bound on the full series.
    pub fn total(&self) -> f64 {
        self.partial + self.tail_upper
    }
}

/// Upper bound on `Σ_{i ≥ start} i^{-e}` for `e > 1`, `start ≥ 2`, by
/// `∫_{start-1}^∞ x^{-e} dx`.
pub fn power_tail_upper(start: f64, e: f64) -> f64 {
    debug_assert!(e > 1.0 && start >= 2.0);
    (start - 1.0).powf(1.0 - e) / (e - 1.0)
}

/// Lower bound on `Σ_{i ≥ start} i^{-e}` by `∫_start^∞ x^{-e} dx`.
pub fn power_tail_lower(start: f64, e: f64) -> f64 {
    debug_assert!(e > 1.0 && start >= 1.0);
    start.powf(1.0 - e) / (e - 1.0)
}

/// `Σ_{i ≥ 1} i^{-e}` summed directly to `n` terms, with the integral tail.
pub fn zeta_upper(e: f64, n: usize) -> SeriesBound {
    let partial: f64 = (1..=n).rev().map(|i| (i as f64).powf(-e)).sum();
    SeriesBound {
        partial,
        tail_upper: power_tail_upper(n as f64 + 1.0, e),
        terms: n,
    }
}

/// `∫_a^b x^{-s} dx`.
fn power_integral(a: f64, b: f64, s: f64) -> f64 {
    if s == 1.0 {
        (b / a).ln()
    } else {
        (b.powf(1.0 - s) - a.powf(1.0 - s)) / (1.0 - s)
    }
}

/// Bracket `[lo, hi]` on `Σ_{m=1}^{d} m^{-s}` for `s > 0` without summing
/// every term: the first `direct` terms exactly, the rest by integral bounds.
pub fn power_partial_bracket(s: f64, d: u64, direct: u64) -> (f64, f64) {
    debug_assert!(s > 0.0);
    let m = direct.min(d);
    let head: f64 = (1..=m).rev().map(|i| (i as f64).powf(-s)).sum();
    if m == d {
        return (head, head);
    }
    let (mf, df) = (m as f64, d as f64);
    (
        head + power_integral(mf + 1.0, df + 1.0, s),
        head + power_integral(mf, df, s),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_bracket_contains_direct_sum() {
        for s in [0.5, 1.0, 1.5, 2.5] {
            let direct: f64 = (1..=50_000u64).rev().map(|i| (i as f64).powf(-s)).sum();
            let (lo, hi) = power_partial_bracket(s, 50_000, 100);
            assert!(lo <= direct && direct <= hi, "s={s}: {lo} {direct} {hi}");
            assert!(hi - lo <= 100f64.powf(-s));
        }
        assert_eq!(power_partial_bracket(2.0, 10, 100).0, power_partial_bracket(2.0, 10, 100).1);
    }

    #[test]
    fn zeta_two_is_bracketed() {
        let z = zeta_upper(2.0, 10_000);
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(z.partial < exact);
        assert!(z.total() >= exact);
        assert!(z.total() - exact < 1e-7);
    }

    #[test]
    fn tails_bracket_the_sum() {
        let direct: f64 = (50..2_000_000).map(|i| (i as f64).powf(-3.0)).sum();
        assert!(power_tail_lower(50.0, 3.0) <= direct + 1e-12);
        assert!(power_tail_upper(50.0, 3.0) >= direct);
    }
}
