//! The acceptance criteria, runnable from `ldpcdo verify` and the test suite.

use std::fmt;
use std::io::Write;

use ldpcdo::ldp::{hbar, rate_function};
use ldpcdo::oracle::{
    binomial_tail, enumerate_exact_price, local_clt_scan, rate_min_bruteforce, DiscreteLaw,
};
use ldpcdo::pricer::{
    gaussian_copula_states, mixture_protection_asymptotic, protection_leg_asymptotic, tilted_geometric_sum,
    MixtureStates,
};
use ldpcdo::sim::{is_price, mc_price, tilt_diagnostics};
use ldpcdo::{DefaultCurve, TrancheSpec, NEVER};

use crate::commands::{sweep_rows, SweepQuantity, SweepRow};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    /// Analytic and light simulation checks.
    Quick,
    /// Every criterion, including the large Monte Carlo runs.
    Full,
}

const SEED: u64 = 20_240_601;

fn quarterly(alpha: f64, beta: f64, rate: f64) -> TrancheSpec {
    TrancheSpec::quarterly(alpha, beta, 5.0, rate).expect("valid tranche")
}

fn flat(f: f64) -> DefaultCurve {
    DefaultCurve::flat_hazard_hitting(f, 5.0).expect("valid curve")
}

/// Importance sampling against plain Monte Carlo on a small pool.
pub fn is_mc_consistency(mc_paths: u64, is_paths: u64) -> Result<Criterion, CliError> {
    let (n, alpha, f) = (50, 0.12, 0.08);
    let curve = flat(f);
    let tranche = quarterly(alpha, 0.2, 0.03);
    let mc = mc_price(&curve, &tranche, n, mc_paths, SEED)?;
    let is = is_price(&curve, &tranche, n, is_paths, SEED + 1)?;
    let tail = binomial_tail(n, curve.cdf_left_limit(5.0), alpha);
    let combined = mc.protection.std_error.hypot(is.std_error);
    let gap = (mc.protection.mean - is.price).abs();
    let passed = gap <= 3.0 * combined && mc.protection.mean <= tail && is.price <= tail;
    Ok(Criterion {
        id: 1,
        name: "IS/MC consistency",
        passed,
        detail: format!(
            "MC {:.6e}±{:.1e}, IS {:.6e}±{:.1e}, gap {:.2}σ, tail bound {:.6e}",
            mc.protection.mean,
            mc.protection.std_error,
            is.price,
            is.std_error,
            gap / combined,
            tail
        ),
    })
}

/// Asymptotic over importance-sampled protection leg as the pool grows.
pub fn asymptotic_convergence(start_paths: u64) -> Result<Criterion, CliError> {
    let (alpha, f) = (0.1, 0.05);
    let curve = flat(f);
    let tranche = quarterly(alpha, 0.15, 0.0);
    let mut errors = Vec::new();
    let mut parts = Vec::new();
    let mut precise = true;
    for n in [200u64, 400, 800, 1600] {
        let mut paths = start_paths;
        let mut est = is_price(&curve, &tranche, n, paths, SEED)?;
        while est.relative_error >= 0.01 && paths < 64 * start_paths {
            paths *= 2;
            est = is_price(&curve, &tranche, n, paths, SEED)?;
        }
        precise &= est.relative_error < 0.01;
        let asym = protection_leg_asymptotic(n, &tranche, f)?;
        let ratio = (asym.log_value - est.log_price).exp();
        errors.push((ratio - 1.0).abs());
        parts.push(format!("N={n}: {ratio:.4} (±{:.2}%)", 100.0 * est.relative_error));
    }
    let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
    let last = *errors.last().expect("four pool sizes");
    Ok(Criterion {
        id: 2,
        name: "asymptotic convergence",
        passed: monotone && last <= 0.10 && precise,
        detail: format!("ratios {}", parts.join(", ")),
    })
}

pub const CLT_SIZES: [u64; 3] = [100, 1000, 10_000];
pub const CLT_CAP: f64 = 0.02;

/// Local CLT scan errors at `α = 0.1`.
pub fn local_clt() -> Criterion {
    let errs: Vec<f64> = CLT_SIZES.iter().map(|&n| local_clt_scan(n, 0.1)).collect();
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    let capped = errs[2] <= CLT_CAP;
    Criterion {
        id: 3,
        name: "local CLT",
        passed: decreasing && capped,
        detail: format!(
            "max error {:.5} > {:.5} > {:.5} (decreasing: {decreasing}), n=10^4 cap {CLT_CAP}: {capped}",
            errs[0], errs[1], errs[2]
        ),
    }
}

/// Brute-force entropy minimum against the two-point formula.
pub fn rate_minimizer() -> Result<Criterion, CliError> {
    let alpha = 0.1;
    let base = DiscreteLaw::new(vec![(0.3, 0.02), (0.8, 0.03), (NEVER, 0.95)])?;
    let scan = rate_min_bruteforce(alpha, &base, 1.0, 201)?;
    let target = hbar(alpha, 0.05);
    let resolution = alpha / 200.0;
    let proportional = scan
        .allocation
        .iter()
        .zip(&scan.proportional)
        .all(|(a, p)| (a - p).abs() <= resolution);
    let close = (scan.minimum - target).abs() <= 1e-6;
    Ok(Criterion {
        id: 4,
        name: "rate-function minimizer",
        passed: close && proportional && scan.level == alpha,
        detail: format!(
            "min {:.10} vs ℏ {:.10}, level {}, allocation {:?}",
            scan.minimum, target, scan.level, scan.allocation
        ),
    })
}

/// Truncated geometric sums against their closed form. `kappa_shift`
/// perturbs `κ` in the truncated sum only, to check that the test bites.
pub fn geometric_sum_bound(kappa_shift: f64) -> Result<Criterion, CliError> {
    let alphas = [0.03, 0.07, 0.1, 0.25, 0.5];
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in [16u64, 100, 10_000] {
        for &alpha in &alphas {
            for step in 1..=15 {
                let k = 0.2 * step as f64;
                let exact = tilted_geometric_sum(n, alpha, k)?;
                let truncated = tilted_geometric_sum(n, alpha, k * (1.0 + kappa_shift))?.truncated;
                let gap = (truncated - exact.closed_form).abs();
                let ok = gap <= exact.bound && (exact.bound >= 1e-12 || gap <= 1e-12);
                checked += 1;
                if !ok {
                    failures.push(format!("N={n} α={alpha} κ={k:.1}: gap {gap:.3e} > {:.3e}", exact.bound));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} (N, α, κ) points within bound")
    } else {
        format!("{} of {checked} outside bound, e.g. {}", failures.len(), failures[0])
    };
    Ok(Criterion {
        id: 5,
        name: "geometric-sum bound",
        passed: failures.is_empty(),
        detail,
    })
}

/// Plain MC premium leg against the annuity on an investment-grade tranche.
pub fn premium_limit(paths: u64) -> Result<Criterion, CliError> {
    let curve = flat(0.05);
    let tranche = quarterly(0.1, 0.15, 0.0);
    let mc = mc_price(&curve, &tranche, 1000, paths, SEED)?;
    let annuity = tranche.annuity();
    let rel = (mc.premium.mean - annuity).abs() / annuity;
    Ok(Criterion {
        id: 6,
        name: "premium limit",
        passed: rel <= 0.005,
        detail: format!("E[prem] {:.8} vs annuity {annuity}, rel. diff {rel:.2e}", mc.premium.mean),
    })
}

pub const PAYOFF_BUCKETS: std::ops::RangeInclusive<u64> = 1..=5;

/// Conditional protection leg given the excess count, under the tilt.
pub fn conditional_payoff(paths: u64) -> Result<Criterion, CliError> {
    let n = 2000;
    let curve = flat(0.05);
    let tranche = quarterly(0.1, 0.15, 0.03);
    let report = tilt_diagnostics(&curve, &tranche, n, paths, SEED)?;
    let base = (n as f64 * tranche.alpha()).round() as u64;
    let mut passed = true;
    let mut parts = Vec::new();
    for s in PAYOFF_BUCKETS {
        match report.buckets.get(&(base + s)) {
            Some(b) => {
                let ratio = b.protection_ratio.unwrap_or(f64::NAN);
                passed &= b.hits >= 10_000 && (0.9..=1.1).contains(&ratio);
                parts.push(format!("s={s}: {ratio:.4} ({} hits)", b.hits));
            }
            None => {
                passed = false;
                parts.push(format!("s={s}: empty"));
            }
        }
    }
    Ok(Criterion {
        id: 7,
        name: "conditional payoff",
        passed,
        detail: parts.join(", "),
    })
}

/// Exhaustive enumeration against plain MC on a ten-name pool.
pub fn small_pool_exactness(paths: u64) -> Result<Criterion, CliError> {
    let law = DiscreteLaw::new(vec![(1.0, 0.1), (3.0, 0.15), (NEVER, 0.75)])?;
    let tranche = quarterly(0.1, 0.3, 0.03);
    let exact = enumerate_exact_price(&law, &tranche, 10)?;
    let mc = mc_price(&law.to_curve()?, &tranche, 10, paths, SEED)?;
    let z = [
        (mc.protection.mean - exact.prot) / mc.protection.std_error,
        (mc.premium.mean - exact.prem) / mc.premium.std_error,
        (mc.spread - exact.spread) / mc.spread_std_error,
    ];
    Ok(Criterion {
        id: 8,
        name: "small-pool exactness",
        passed: z.iter().all(|x| x.abs() <= 3.0),
        detail: format!(
            "exact prot {:.6} prem {:.6} spread {:.6}; MC z-scores {:.2}, {:.2}, {:.2}",
            exact.prot, exact.prem, exact.spread, z[0], z[1], z[2]
        ),
    })
}

/// Mixture pricing degenerating to the homogeneous pool.
pub fn mixture_degeneracy() -> Result<Criterion, CliError> {
    let tranche = TrancheSpec::new(0.1, 0.2, 1.0, vec![1.0], 0.0)?;
    let single = MixtureStates::from_pairs(&[(1.0, 0.03)])?;
    let mix = mixture_protection_asymptotic(400, &tranche, &single)?.value;
    let hom = protection_leg_asymptotic(400, &tranche, 0.03)?.value;
    let bitwise = mix.to_bits() == hom.to_bits();

    let p = 0.03;
    let flat_states = gaussian_copula_states(p, 1e-12, 4)?;
    let collapse = flat_states.states().iter().map(|s| (s.f_t_minus - p).abs()).fold(0.0, f64::max);

    let errs = [4, 8, 16]
        .iter()
        .map(|&m| Ok((gaussian_copula_states(p, 0.3, m)?.mean_default_probability() - p).abs()))
        .collect::<Result<Vec<f64>, CliError>>()?;
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    Ok(Criterion {
        id: 9,
        name: "mixture degeneracy",
        passed: bitwise && collapse <= 1e-10 && decreasing,
        detail: format!(
            "single state bitwise: {bitwise}; ρ→0 max |f−p| {collapse:.1e}; Σpf error at M=4,8,16: {:.2e}, {:.2e}, {:.2e}",
            errs[0], errs[1], errs[2]
        ),
    })
}

/// Least-squares fit of `y ≈ c₀ + c₁x + c₂ log₁₀x`; returns the
/// coefficients and the largest residual relative to `|y|`.
pub fn fit_log_linear(points: &[(f64, f64)]) -> ([f64; 3], f64) {
    let basis = |x: f64| [1.0, x, x.log10()];
    let mut a = [[0.0f64; 4]; 3];
    for &(x, y) in points {
        let b = basis(x);
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += b[i] * b[j];
            }
            a[i][3] += b[i] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty");
        a.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / a[col][col];
                let pivot_row = a[col];
                for (x, p) in a[row].iter_mut().zip(pivot_row).skip(col) {
                    *x -= factor * p;
                }
            }
        }
    }
    let c = [a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]];
    let worst = points
        .iter()
        .map(|&(x, y)| {
            let b = basis(x);
            ((c[0] * b[0] + c[1] * b[1] + c[2] * b[2] - y) / y).abs()
        })
        .fold(0.0, f64::max);
    (c, worst)
}

/// `⌈nα⌉` for a rational `α = num/den`, in integers.
fn ceil_rational(n: u64, num: u64, den: u64) -> u64 {
    (n * num).div_ceil(den)
}

/// Sweep rows of `S*_N` used by the sawtooth check.
pub fn sawtooth_rows(alpha: f64) -> Result<Vec<SweepRow>, CliError> {
    let tranche = quarterly(alpha, alpha + 0.05, 0.0);
    sweep_rows(&flat(0.03), &tranche, 50, 500, 1, SweepQuantity::Star)
}

/// Sawtooth shape of `S*_N`: granularity resets exactly where `⌈Nα⌉`
/// steps, and the log price decays with slope `−𝔍(α)/ln 10`.
pub fn sawtooth() -> Result<Criterion, CliError> {
    let mut passed = true;
    let mut parts = Vec::new();
    let mut slopes = Vec::new();
    for (alpha, num, den) in [(0.06, 3u64, 50u64), (0.1, 1, 10)] {
        let rows = sawtooth_rows(alpha)?;
        let mut mismatches = 0;
        let mut jumps = 0;
        for w in rows.windows(2) {
            let steps = ceil_rational(w[1].n, num, den) > ceil_rational(w[0].n, num, den);
            let resets = w[1].granularity > w[0].granularity;
            jumps += steps as u32;
            mismatches += (steps != resets) as u32;
        }
        let tail: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.n >= 200)
            .map(|r| (r.n as f64, r.log10_value))
            .collect();
        let (c, residual) = fit_log_linear(&tail);
        let expected = -rate_function(alpha, 0.03)? / std::f64::consts::LN_10;
        let slope_err = ((c[1] - expected) / expected).abs();
        passed &= mismatches == 0 && slope_err < 0.01 && residual < 0.01;
        slopes.push(c[1]);
        parts.push(format!(
            "α={alpha}: {jumps} jumps, {mismatches} misplaced, slope {:.6} vs {expected:.6} ({:.2}%), residual {:.2}%",
            c[1],
            100.0 * slope_err,
            100.0 * residual
        ));
    }
    let steeper = slopes[1] < slopes[0];
    Ok(Criterion {
        id: 10,
        name: "sawtooth reproduction",
        passed: passed && steeper,
        detail: format!("{}; larger α steeper: {steeper}", parts.join("; ")),
    })
}

/// Local CLT scan table written by `verify --level full`.
pub fn clt_table(out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "n,alpha,max_abs_error")?;
    for alpha in [0.05, 0.1, 0.25, 0.5] {
        for n in [100u64, 1000, 10_000, 100_000, 1_000_000] {
            writeln!(out, "{n},{alpha},{}", local_clt_scan(n, alpha))?;
        }
    }
    Ok(())
}

/// Criterion ids run at each level.
pub fn criteria_for(level: Level) -> &'static [u8] {
    match level {
        Level::Quick => &[3, 4, 5, 6, 9, 10],
        Level::Full => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    }
}

pub fn run_criterion(id: u8) -> Result<Criterion, CliError> {
    match id {
        1 => is_mc_consistency(1_000_000, 100_000),
        2 => asymptotic_convergence(20_000),
        3 => Ok(local_clt()),
        4 => rate_minimizer(),
        5 => geometric_sum_bound(0.0),
        6 => premium_limit(20_000),
        7 => conditional_payoff(400_000),
        8 => small_pool_exactness(1_000_000),
        9 => mixture_degeneracy(),
        10 => sawtooth(),
        _ => Err(CliError::Config(format!("no acceptance criterion {id}"))),
    }
}

/// Runs a level, printing one line per criterion; fails naming the red ones.
pub fn verify(level: Level, out: &mut dyn Write) -> Result<(), CliError> {
    let mut failed = Vec::new();
    for &id in criteria_for(level) {
        let c = run_criterion(id)?;
        writeln!(out, "{c}")?;
        if !c.passed {
            failed.push(format!("criterion {} ({})", c.id, c.name));
        }
    }
    if level == Level::Full {
        writeln!(out)?;
        clt_table(out)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed))
    }
}
