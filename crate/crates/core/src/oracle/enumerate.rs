//! Exhaustive pricing of tiny pools over all multinomial outcomes.

use crate::error::{Error, Result};
use crate::pricer::TrancheSpec;
use crate::sim::TrancheLadder;

use super::law::DiscreteLaw;

pub const MAX_POOL: u64 = 12;
pub const MAX_ATOMS: usize = 5;
pub const OUTCOME_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactPrice {
    pub prot: f64,
    pub prem: f64,
    pub spread: f64,
    /// Sum of all outcome probabilities.
    pub total_probability: f64,
    pub outcomes: u64,
}

/// `C(n + m − 1, m − 1)`, the number of count vectors.
fn outcome_count(n: u64, m: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..m as u128 {
        c = c * (n as u128 + i) / i;
    }
    c
}

struct Sums {
    prot: f64,
    prot_comp: f64,
    prem: f64,
    prem_comp: f64,
    prob: f64,
    prob_comp: f64,
    outcomes: u64,
}

fn add(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    *comp += if sum.abs() >= x.abs() { (*sum - t) + x } else { (x - t) + *sum };
    *sum = t;
}

/// Exact expected legs for `n ≤ 12` names drawn from `base`.
pub fn enumerate_exact_price(base: &DiscreteLaw, tranche: &TrancheSpec<f64>, n: u64) -> Result<ExactPrice> {
    enumerate_exact_price_capped(base, tranche, n, OUTCOME_CAP)
}

/// As [`enumerate_exact_price`] with an explicit cap on the outcome count.
pub fn enumerate_exact_price_capped(
    base: &DiscreteLaw,
    tranche: &TrancheSpec<f64>,
    n: u64,
    cap: u128,
) -> Result<ExactPrice> {
    if n == 0 || n > MAX_POOL {
        return Err(Error::invalid(format!("enumeration supports 1 ≤ n ≤ {MAX_POOL}, got {n}")));
    }
    let atoms = base.atoms();
    if atoms.len() > MAX_ATOMS {
        return Err(Error::invalid(format!("enumeration supports at most {MAX_ATOMS} atoms")));
    }
    let outcomes = outcome_count(n, atoms.len());
    if outcomes > cap {
        return Err(Error::CombinatorialBlowup { outcomes, cap });
    }
    let ladder = TrancheLadder::new(tranche, n);
    let t_expiry = tranche.t_expiry();
    let mut factorial = vec![1.0f64; n as usize + 1];
    for i in 1..=n as usize {
        factorial[i] = factorial[i - 1] * i as f64;
    }
    let mut sums = Sums {
        prot: 0.0,
        prot_comp: 0.0,
        prem: 0.0,
        prem_comp: 0.0,
        prob: 0.0,
        prob_comp: 0.0,
        outcomes: 0,
    };
    let mut counts = vec![0u64; atoms.len()];
    let mut times = Vec::with_capacity(n as usize);
    let mut visit = |counts: &[u64]| {
        let mut prob = factorial[n as usize];
        times.clear();
        for (&(t, m), &c) in atoms.iter().zip(counts) {
            prob *= m.powi(c as i32) / factorial[c as usize];
            if t <= t_expiry {
                times.extend(std::iter::repeat_n(t, c as usize));
            }
        }
        add(&mut sums.prot, &mut sums.prot_comp, prob * ladder.protection(&times));
        add(&mut sums.prem, &mut sums.prem_comp, prob * ladder.premium(&times));
        add(&mut sums.prob, &mut sums.prob_comp, prob);
        sums.outcomes += 1;
    };
    lexicographic(&mut counts, 0, n, &mut visit);
    let prot = sums.prot + sums.prot_comp;
    let prem = sums.prem + sums.prem_comp;
    if prem <= 0.0 {
        return Err(Error::UndefinedSpread);
    }
    Ok(ExactPrice {
        prot,
        prem,
        spread: prot / prem,
        total_probability: sums.prob + sums.prob_comp,
        outcomes: sums.outcomes,
    })
}

/// Visits every count vector summing to `remaining` over `counts[slot..]`,
/// in decreasing lexicographic order of the leading counts.
fn lexicographic(counts: &mut [u64], slot: usize, remaining: u64, visit: &mut impl FnMut(&[u64])) {
    if slot + 1 == counts.len() {
        counts[slot] = remaining;
        visit(counts);
        return;
    }
    for c in (0..=remaining).rev() {
        counts[slot] = c;
        lexicographic(counts, slot + 1, remaining - c, visit);
    }
}
