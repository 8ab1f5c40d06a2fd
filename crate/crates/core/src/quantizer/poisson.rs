use super::{check_copies, check_delta, QuantizerDesign, RunLengthModel};
use crate::error::{Error, Result};
use crate::prob::PoissonSum;

const LAMBDA_TOLERANCE: f64 = 1e-9;
/// Upper bound on levels when stopping by duration only.
const MAX_LEVELS: usize = 1000;

/// When to stop adding Poisson levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PoissonStop {
    /// Exactly this many levels.
    Levels(usize),
    /// Every level whose duration `sqrt(lambda_j / lambda_1)` is at most `M`.
    MaxDuration(f64),
    /// Whichever of the two limits is reached first.
    LevelsWithin { levels: usize, max_duration: f64 },
}

impl Default for PoissonStop {
    fn default() -> Self {
        PoissonStop::Levels(10)
    }
}

/// Designs the Poisson quantizer on the copy mean `r = S / N`, where
/// `S ~ Poisson(N lambda)`. Each side of every decision interval is held to
/// `delta / 2`:
///
/// * `lambda_1 = ln(2/delta) / N`, so a run is lost in all copies with
///   probability exactly `delta / 2`;
/// * `tau_i` is the smallest multiple of `1/N` with `Pr(r > tau_i) <= delta/2`;
/// * `lambda_{i+1}` is the smallest rate with `Pr(r <= tau_i) <= delta/2`.
///
/// Durations are reported as `t^(j) = sqrt(lambda_j / lambda_1)`.
pub fn design_poisson(delta: f64, copies: usize, stop: PoissonStop) -> Result<QuantizerDesign> {
    check_delta(delta)?;
    check_copies(copies)?;
    let (max_levels, max_duration) = match stop {
        PoissonStop::Levels(l) if l >= 1 => (l, None),
        PoissonStop::Levels(l) => return Err(Error::param("ell", l, "ell >= 1")),
        PoissonStop::MaxDuration(m) if m.is_finite() && m >= 1.0 => (MAX_LEVELS, Some(m)),
        PoissonStop::MaxDuration(m) => return Err(Error::param("M", m, "finite M >= 1")),
        PoissonStop::LevelsWithin {
            levels,
            max_duration: m,
        } => {
            if levels < 1 {
                return Err(Error::param("ell", levels, "ell >= 1"));
            }
            if !(m.is_finite() && m >= 1.0) {
                return Err(Error::param("M", m, "finite M >= 1"));
            }
            (levels, Some(m))
        }
    };
    let n = copies as f64;
    let half = delta / 2.0;

    let lambda1 = (2.0 / delta).ln() / n;
    let mut lambdas = vec![lambda1];
    let mut sum_tau = vec![0u64];
    loop {
        let lambda = *lambdas.last().unwrap();
        let dist = PoissonSum::new(n * lambda);
        let from = *sum_tau.last().unwrap();
        let k = (from..)
            .find(|&k| dist.upper_tail(k) <= half)
            .expect("upper tail vanishes");
        sum_tau.push(k);
        if lambdas.len() == max_levels {
            break;
        }
        let next = next_rate(lambda, k, n, half);
        let t = (next / lambda1).sqrt();
        if max_duration.is_some_and(|m| t > m) {
            break;
        }
        lambdas.push(next);
    }

    let durations: Vec<f64> = lambdas.iter().map(|l| (l / lambda1).sqrt()).collect();
    let max_duration = max_duration.unwrap_or(*durations.last().unwrap());
    Ok(QuantizerDesign {
        model: RunLengthModel::Poisson { lambdas },
        durations,
        sum_tau,
        delta,
        copies,
        max_duration,
    })
}

/// Smallest `lambda > from` with `Pr(S <= k) <= half` for `S ~ Poisson(n lambda)`.
fn next_rate(from: f64, k: u64, n: f64, half: f64) -> f64 {
    let below = |lambda: f64| PoissonSum::new(n * lambda).lower_tail(k);
    let mut lo = from;
    let mut hi = from.max(1e-3) * 2.0;
    while below(hi) > half {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > LAMBDA_TOLERANCE * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if below(mid) <= half {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // hi satisfies the condition and nothing below lo does
    debug_assert!(below(hi) <= half && below(lo) > half);
    hi
}
