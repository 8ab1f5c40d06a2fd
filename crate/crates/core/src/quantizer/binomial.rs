use statrs::function::factorial::ln_binomial;

use super::{check_copies, check_delta, QuantizerDesign, RunLengthModel, SumDistribution};
use crate::error::{Error, Result};
use crate::prob::BinomialSum;

/// Log-likelihood ratios within this of zero count as ties.
const TIE_TOLERANCE: f64 = 1e-12;

/// Designs the quantizer for `Binomial(t, p)` run lengths observed over
/// `copies` independent strands, with every duration at most `max_duration`.
///
/// `t^(1)` is the shortest duration whose run survives in at least one copy
/// with probability `1 - delta`. Each later `t^(i)` is the shortest duration
/// past `t^(i-1)` at which the copy sum `tau_{i-1}` has become at least as
/// likely under `t^(i-1)` as under `t^(i)`, and whose lower tail up to
/// `tau_{i-1}` stays within `delta` so that `tau_i` exists.
pub fn design_binomial(
    p: f64,
    delta: f64,
    copies: usize,
    max_duration: u64,
) -> Result<QuantizerDesign> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param("p", p, "0 < p < 1"));
    }
    check_delta(delta)?;
    check_copies(copies)?;
    if max_duration < 1 {
        return Err(Error::param("M", max_duration, "M >= 1"));
    }
    let n = copies as u64;
    let sum = |t: u64| BinomialSum::new(n * t, p);

    let first = (1..=max_duration).find(|&t| sum(t).lower_tail(0) <= delta).ok_or_else(|| {
        Error::Infeasible(format!(
            "no duration t <= {max_duration} keeps the deletion probability (1-p)^(Nt) within delta = {delta} (p = {p}, N = {copies})"
        ))
    })?;
    let tau1 = upper_threshold(sum(first), 0, delta).expect("lower tail already within delta");

    let mut durations = vec![first];
    let mut sum_tau = vec![0, tau1];
    let ln_q = (-p).ln_1p();
    loop {
        let prev = *durations.last().unwrap();
        let tau = *sum_tau.last().unwrap();
        let next = (prev + 1..=max_duration).find(|&t| {
            let ratio = ln_binomial(n * t, tau) - ln_binomial(n * prev, tau)
                + (n * (t - prev)) as f64 * ln_q;
            ratio <= TIE_TOLERANCE && sum(t).lower_tail(tau) <= delta
        });
        let Some(t) = next else { break };
        let tau_next =
            upper_threshold(sum(t), tau, delta).expect("lower tail already within delta");
        durations.push(t);
        sum_tau.push(tau_next);
    }

    Ok(QuantizerDesign {
        model: RunLengthModel::Binomial { p },
        durations: durations.into_iter().map(|t| t as f64).collect(),
        sum_tau,
        delta,
        copies,
        max_duration: max_duration as f64,
    })
}

/// `min { x > lower : Pr(r <= lower) + Pr(r > x) <= delta }`.
fn upper_threshold(dist: BinomialSum, lower: u64, delta: f64) -> Option<u64> {
    let d = SumDistribution::Binomial(dist);
    let left = d.lower_tail(lower);
    if left > delta {
        return None;
    }
    (lower + 1..=dist.trials.max(lower + 1)).find(|&x| left + d.upper_tail(x) <= delta)
}
