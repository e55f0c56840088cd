//! Standard normal distribution function and its inverse.

use libm::erfc;
use statrs::function::erf::erfc_inv;

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

/// `Φ(x)`.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// `1 − Φ(x)`, accurate in the upper tail.
pub fn std_normal_sf(x: f64) -> f64 {
    std_normal_cdf(-x)
}

/// `Φ⁻¹(p)` for `p ∈ (0,1)`.
pub fn inverse_std_normal_cdf(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("normal quantile needs p in (0,1), got {p}")));
    }
    if p > 0.5 {
        return Ok(-lower_quantile(1.0 - p));
    }
    Ok(lower_quantile(p))
}

/// `x` with `1 − Φ(x) = q`, for `q ∈ (0,1)`.
pub fn inverse_std_normal_sf(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::invalid(format!("normal quantile needs q in (0,1), got {q}")));
    }
    if q > 0.5 {
        return Ok(lower_quantile(1.0 - q));
    }
    Ok(-lower_quantile(q))
}

/// Quantile for `p ≤ 1/2`, polished with Halley steps.
fn lower_quantile(p: f64) -> f64 {
    let mut x = -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p);
    for _ in 0..3 {
        let density = std_normal_pdf(x);
        if density == 0.0 {
            break;
        }
        let r = (std_normal_cdf(x) - p) / density;
        let step = r / (1.0 + 0.5 * x * r);
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::quadrature::integrate;

    #[test]
    fn symmetry_point() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        assert_eq!(inverse_std_normal_cdf(0.5).unwrap(), 0.0);
    }

    #[test]
    fn quadrature_oracle() {
        assert!((std_normal_cdf(1.96) - 0.97500210485177956).abs() <= 1e-15);
        for x in [-6.0f64, -2.5, -0.3, 0.7, 1.96, 3.0] {
            let tail = integrate(std_normal_pdf, x.min(0.0), x.max(0.0), 1e-16);
            let expect = if x < 0.0 { 0.5 - tail } else { 0.5 + tail };
            assert!((std_normal_cdf(x) - expect).abs() <= 2e-15, "x={x}");
        }
    }

    #[test]
    fn round_trip() {
        let mut x = -8.0;
        while x <= 8.0 {
            let back = if x <= 0.0 {
                inverse_std_normal_cdf(std_normal_cdf(x)).unwrap()
            } else {
                inverse_std_normal_sf(std_normal_sf(x)).unwrap()
            };
            assert!((back - x).abs() <= 1e-10, "x={x} back={back}");
            x += 0.0625;
        }
        for x in [-1.0, 0.5, 2.0, 4.0] {
            assert!((inverse_std_normal_cdf(std_normal_cdf(x)).unwrap() - x).abs() <= 1e-10);
        }
    }

    #[test]
    fn extreme_quantiles() {
        let x = inverse_std_normal_cdf(1e-300).unwrap();
        assert!(((std_normal_cdf(x) - 1e-300) / 1e-300).abs() < 1e-12);
        let y = inverse_std_normal_cdf(1.0 - 1e-16).unwrap();
        assert!(y > 8.0 && y.is_finite());
    }

    #[test]
    fn rejects_outside_unit_interval() {
        assert!(inverse_std_normal_cdf(0.0).is_err());
        assert!(inverse_std_normal_cdf(1.0).is_err());
        assert!(inverse_std_normal_sf(f64::NAN).is_err());
    }
}
