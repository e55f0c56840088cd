//! Binomial probabilities accurate far into the tails, via Loader's
//! saddle-point form of Stirling's series.

use crate::scalar::AttachmentLattice;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(x)` for `x > 0` (Lanczos, `g = 7`).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln n! − [(n+½) ln n − n + ln √(2π)]`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        // n! is exact in f64 here.
        let factorial: f64 = (1..=n as u64).map(|i| i as f64).product();
        return factorial.ln() - (n + 0.5) * n.ln() + n - LN_SQRT_2PI;
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance `x ln(x/m) + m − x`, without cancellation when `x ≈ m`.
fn bd0(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let mut v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return next;
            }
            s = next;
        }
        return s;
    }
    x * (x / m).ln() + m - x
}

/// `P{Bin(n, p) = k}`.
pub fn binomial_pmf(n: u64, p: f64, k: u64) -> f64 {
    if k > n || !(0.0..=1.0).contains(&p) {
        return 0.0;
    }
    let q = 1.0 - p;
    if p == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if q == 0.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    let (nf, kf) = (n as f64, k as f64);
    if k == 0 {
        return (nf * (-p).ln_1p()).exp();
    }
    if k == n {
        return (nf * p.ln()).exp();
    }
    let rest = nf - kf;
    let lc = stirlerr(nf) - stirlerr(kf) - stirlerr(rest) - bd0(kf, nf * p) - bd0(rest, nf * q);
    let lf = (2.0 * std::f64::consts::PI).ln() + kf.ln() + (-kf / nf).ln_1p();
    (lc - 0.5 * lf).exp()
}

fn neumaier(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in terms {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

/// `P{Bin(n, p) > n·threshold}`, summed over whichever tail is smaller.
pub fn binomial_tail(n: u64, p: f64, threshold: f64) -> f64 {
    if threshold >= 1.0 {
        return 0.0;
    }
    if threshold < 0.0 {
        return 1.0;
    }
    let first = AttachmentLattice::new(n, threshold).first_loss_count();
    if first > n {
        return 0.0;
    }
    if first as f64 > n as f64 * p {
        neumaier((first..=n).rev().map(|k| binomial_pmf(n, p, k)))
    } else {
        1.0 - neumaier((0..first).map(|k| binomial_pmf(n, p, k)))
    }
}

/// `max |P{Bin(n,α) = k} √(2πnα(1−α)) − 1|` over `0 ≤ k − nα ≤ n^{1/4}`.
pub fn local_clt_scan(n: u64, alpha: f64) -> f64 {
    let lattice = AttachmentLattice::new(n, alpha);
    let scale = (2.0 * std::f64::consts::PI * n as f64 * alpha * (1.0 - alpha)).sqrt();
    let window = (n as f64).sqrt().sqrt();
    let mut worst = 0.0f64;
    let mut k = lattice.ceil;
    while k <= n && lattice.excess(k) <= window {
        worst = worst.max((binomial_pmf(n, alpha, k) * scale - 1.0).abs());
        k += 1;
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use statrs::function::beta::beta_reg;

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma(1.0).abs() < 1e-15);
        assert!(ln_gamma(2.0).abs() < 1e-15);
        assert_relative_eq!(ln_gamma(0.5), 0.5 * std::f64::consts::PI.ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(11.0), 3_628_800f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn pmf_examples() {
        assert_relative_eq!(binomial_pmf(2, 0.5, 1), 0.5, max_relative = 1e-15);
        assert_relative_eq!(binomial_pmf(10_000, 0.1, 1000), 0.013296955574587914, max_relative = 1e-13);
        assert_eq!(binomial_pmf(5, 0.0, 0), 1.0);
        assert_eq!(binomial_pmf(5, 1.0, 5), 1.0);
        assert_eq!(binomial_pmf(5, 0.3, 6), 0.0);
    }

    #[test]
    fn pmf_matches_recurrence() {
        let (n, p) = (1000u64, 0.1f64);
        let mut exact = (n as f64 * (-p).ln_1p()).exp();
        for k in 0..=200 {
            if k > 0 {
                exact *= (n - k + 1) as f64 / k as f64 * p / (1.0 - p);
            }
            assert_relative_eq!(binomial_pmf(n, p, k), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn pmf_normalized() {
        let total = neumaier((0..=10_000).map(|k| binomial_pmf(10_000, 0.1, k)));
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tail_examples() {
        assert_eq!(binomial_tail(50, 0.08, 1.0), 0.0);
        assert_relative_eq!(binomial_tail(50, 0.08, 0.12), 0.10187178095729703, max_relative = 1e-13);
    }

    #[test]
    fn tail_matches_incomplete_beta() {
        for &(n, p, thr) in &[(50u64, 0.08, 0.12), (200, 0.3, 0.25), (1000, 0.05, 0.1), (30, 0.5, 0.5)] {
            let first = AttachmentLattice::new(n, thr).first_loss_count();
            let expect = beta_reg(first as f64, (n - first + 1) as f64, p);
            assert!((binomial_tail(n, p, thr) - expect).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn local_clt_values() {
        assert_relative_eq!(local_clt_scan(100, 0.1), 0.44125680522903326, max_relative = 1e-10);
        assert_relative_eq!(local_clt_scan(10_000, 0.1), 0.058136125253285404, max_relative = 1e-10);
        assert!(local_clt_scan(10_000, 0.1) < local_clt_scan(100, 0.1));
        let centre = (binomial_pmf(10_000, 0.5, 5000) * (2.0 * std::f64::consts::PI * 2500.0).sqrt() - 1.0).abs();
        assert!((centre - 2.4999687e-5).abs() < 1e-11);
    }
}
