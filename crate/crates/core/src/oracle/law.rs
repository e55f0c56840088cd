use crate::error::{Error, Result};
use crate::models::{DefaultCurve, Interpolation, Time};

/// Finitely supported default-time law; times may include [`crate::NEVER`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw {
    atoms: Vec<(Time, f64)>,
}

impl DiscreteLaw {
    /// Atoms `(time, mass)` with distinct non-negative times in increasing
    /// order and positive masses summing to one within `1e−14`.
    pub fn new(atoms: Vec<(Time, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::invalid("a discrete law needs at least one atom"));
        }
        if atoms.iter().any(|&(t, m)| !(t >= 0.0) || !(m > 0.0)) {
            return Err(Error::invalid("atom times must be non-negative and masses positive"));
        }
        if atoms.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::invalid("atom times must be distinct and increasing"));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > 1e-14 {
            return Err(Error::invalid(format!("atom masses sum to {total}, not 1")));
        }
        Ok(DiscreteLaw { atoms })
    }

    pub fn atoms(&self) -> &[(Time, f64)] {
        &self.atoms
    }

    /// `μ[0, t)`.
    pub fn mass_before(&self, t: Time) -> f64 {
        self.atoms.iter().filter(|a| a.0 < t).map(|a| a.1).sum()
    }

    /// The same law as a right-continuous step curve.
    pub fn to_curve(&self) -> Result<DefaultCurve> {
        let mut times = vec![0.0];
        let mut cdf = vec![0.0];
        let mut acc = 0.0;
        for &(t, m) in self.atoms.iter().filter(|a| a.0.is_finite()) {
            acc += m;
            if t == 0.0 {
                cdf[0] = acc;
            } else {
                times.push(t);
                cdf.push(acc.min(1.0));
            }
        }
        DefaultCurve::tabulated(times, cdf, Interpolation::Step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::NEVER;

    #[test]
    fn curve_round_trip() {
        let law = DiscreteLaw::new(vec![(0.5, 0.2), (2.0, 0.3), (NEVER, 0.5)]).unwrap();
        let c = law.to_curve().unwrap();
        assert_eq!(c.cdf(0.49), 0.0);
        assert_eq!(c.cdf(0.5), 0.2);
        assert_eq!(c.cdf_left_limit(2.0), 0.2);
        assert_eq!(c.cdf(3.0), 0.5);
        assert!((c.mass_at_infinity() - 0.5).abs() < 1e-15);
        assert_eq!(c.quantile(0.1), 0.5);
        assert_eq!(c.quantile(0.7), NEVER);
        assert_eq!(law.mass_before(2.0), 0.2);
    }

    #[test]
    fn atom_at_zero() {
        let law = DiscreteLaw::new(vec![(0.0, 0.25), (1.0, 0.75)]).unwrap();
        let c = law.to_curve().unwrap();
        assert_eq!(c.cdf(0.0), 0.25);
        assert_eq!(c.quantile(0.2), 0.0);
    }

    #[test]
    fn validation() {
        assert!(DiscreteLaw::new(vec![(1.0, 0.5), (1.0, 0.5)]).is_err());
        assert!(DiscreteLaw::new(vec![(1.0, 0.5), (2.0, 0.4)]).is_err());
        assert!(DiscreteLaw::new(vec![(2.0, 0.5), (1.0, 0.5)]).is_err());
        assert!(DiscreteLaw::new(vec![]).is_err());
    }
}
