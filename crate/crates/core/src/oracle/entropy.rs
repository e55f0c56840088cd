//! Brute-force minimization of relative entropy over finitely supported laws.

use crate::error::{Error, Result};
use crate::ldp::hbar;

use super::law::DiscreteLaw;

/// Simplex resolution within each side of expiry.
const SIMPLEX_POINTS: u32 = 200;
const MAX_SIDE_ATOMS: usize = 2;

/// Result of a brute-force scan.
#[derive(Debug, Clone, PartialEq)]
pub struct RateScan {
    pub minimum: f64,
    /// Mass `α′` before expiry of the minimizer.
    pub level: f64,
    /// Minimizing masses, atom by atom.
    pub allocation: Vec<f64>,
    /// Masses of the proportionally rescaled law at level `α`.
    pub proportional: Vec<f64>,
    /// `ℏ(α, μ[0,T))`.
    pub hbar: f64,
    /// Best value found at each scanned level, in increasing level order.
    pub by_level: Vec<(f64, f64)>,
}

fn entropy_term(new: f64, base: f64) -> f64 {
    if new == 0.0 {
        0.0
    } else {
        new * (new / base).ln()
    }
}

/// Best split of `total` over the (at most two) atoms of one side.
fn best_side(total: f64, masses: &[f64]) -> (f64, Vec<f64>) {
    match masses {
        [] => (if total == 0.0 { 0.0 } else { f64::INFINITY }, vec![]),
        [m] => (entropy_term(total, *m), vec![total]),
        [m0, m1] => {
            let mut best = (f64::INFINITY, vec![0.0, 0.0]);
            for j in 0..=SIMPLEX_POINTS {
                let w = j as f64 / SIMPLEX_POINTS as f64;
                let (a, b) = (total * w, total * (1.0 - w));
                let h = entropy_term(a, *m0) + entropy_term(b, *m1);
                if h < best.0 {
                    best = (h, vec![a, b]);
                }
            }
            best
        }
        _ => unreachable!("side sizes are checked"),
    }
}

/// Minimizes `H(μ′|μ)` over laws `μ′` on the support of `base` with
/// `μ′[0,T) ≥ α`, scanning `grid` levels `α′ ∈ [α, 1]` and a
/// 200-point simplex within each side of expiry.
pub fn rate_min_bruteforce(alpha: f64, base: &DiscreteLaw, t_expiry: f64, grid: u32) -> Result<RateScan> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("attachment α must lie in (0,1), got {alpha}")));
    }
    if grid < 2 {
        return Err(Error::invalid("the level grid needs at least two points"));
    }
    let before: Vec<f64> = base.atoms().iter().filter(|a| a.0 < t_expiry).map(|a| a.1).collect();
    let after: Vec<f64> = base.atoms().iter().filter(|a| a.0 >= t_expiry).map(|a| a.1).collect();
    if before.len() > MAX_SIDE_ATOMS || after.len() > MAX_SIDE_ATOMS {
        return Err(Error::invalid("at most two atoms on each side of expiry are scanned"));
    }
    let f = base.mass_before(t_expiry);
    if f == 0.0 {
        return Err(Error::DegenerateCurve(f));
    }
    if alpha < f * (1.0 - 1e-14) {
        return Err(Error::not_investment_grade(alpha, f));
    }
    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    let mut by_level = Vec::with_capacity(grid as usize);
    for i in 0..grid {
        let level = if i + 1 == grid {
            1.0
        } else {
            alpha + (1.0 - alpha) * i as f64 / (grid - 1) as f64
        };
        let (hb, ab) = best_side(level, &before);
        let (ha, aa) = best_side(1.0 - level, &after);
        let h = hb + ha;
        by_level.push((level, h));
        if best.as_ref().is_none_or(|b| h < b.0) {
            best = Some((h, level, ab.into_iter().chain(aa).collect()));
        }
    }
    let (minimum, level, allocation) = best.expect("grid is non-empty");
    let proportional = base
        .atoms()
        .iter()
        .map(|&(t, m)| if t < t_expiry { m * alpha / f } else { m * (1.0 - alpha) / (1.0 - f) })
        .collect();
    Ok(RateScan {
        minimum,
        level,
        allocation,
        proportional,
        hbar: hbar(alpha, f),
        by_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::NEVER;

    fn base() -> DiscreteLaw {
        DiscreteLaw::new(vec![(0.3, 0.02), (0.8, 0.03), (NEVER, 0.95)]).unwrap()
    }

    #[test]
    fn matches_two_point_entropy() {
        let scan = rate_min_bruteforce(0.1, &base(), 1.0, 201).unwrap();
        assert!((scan.minimum - 0.02065421891274634).abs() < 1e-12);
        assert!((scan.minimum - scan.hbar).abs() < 1e-12);
        assert_eq!(scan.level, 0.1);
        for (a, p) in scan.allocation.iter().zip(&scan.proportional) {
            assert!((a - p).abs() < 1e-12);
        }
    }

    #[test]
    fn increasing_in_level() {
        let scan = rate_min_bruteforce(0.1, &base(), 1.0, 50).unwrap();
        assert!(scan.by_level.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn zero_at_base_law() {
        let law = DiscreteLaw::new(vec![(0.3, 0.25), (0.8, 0.25), (NEVER, 0.5)]).unwrap();
        let scan = rate_min_bruteforce(0.5, &law, 1.0, 10).unwrap();
        assert!(scan.minimum.abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            rate_min_bruteforce(0.03, &base(), 1.0, 10),
            Err(Error::AssumptionViolated { .. })
        ));
        let after_only = DiscreteLaw::new(vec![(2.0, 1.0)]).unwrap();
        assert!(rate_min_bruteforce(0.1, &after_only, 1.0, 10).is_err());
    }
}
