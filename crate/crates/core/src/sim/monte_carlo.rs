//! Sampled quantizer error rates, for comparison with the exact tails.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{trial_rng, Channel};
use crate::error::{Error, Result};
use crate::quantizer::QuantizerDesign;

const CHUNK: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub index: usize,
    pub trials: u64,
    pub errors: u64,
    pub empirical: f64,
    pub exact: f64,
    /// `sqrt(delta (1 - delta) / trials)`.
    pub sigma: f64,
}

impl McEstimate {
    pub fn within(&self, sigmas: f64) -> bool {
        (self.empirical - self.exact).abs() <= sigmas * self.sigma
    }
}

/// Writes each index `trials` times over `N` copies and counts wrong or
/// low-confidence decisions. Runs on the current rayon pool; the result does
/// not depend on how work is split.
pub fn monte_carlo_errors(
    design: &QuantizerDesign,
    trials: u64,
    seed: u64,
) -> Result<Vec<McEstimate>> {
    if trials == 0 {
        return Err(Error::param("trials", 0, "trials >= 1"));
    }
    let channel = Channel::new(design)?;
    let exact = design.exact_error_probabilities();
    let chunks = trials.div_ceil(CHUNK);
    let jobs: Vec<(usize, u64)> = (1..=design.ell())
        .flat_map(|i| (0..chunks).map(move |c| (i, c)))
        .collect();
    let counts: Vec<u64> = jobs
        .par_iter()
        .map(|&(i, c)| {
            let mut rng = trial_rng(seed, (i as u64) << 32 | c);
            let n = CHUNK.min(trials - c * CHUNK);
            let mut obs = vec![0u64; design.copies];
            let mut errors = 0;
            for _ in 0..n {
                for o in obs.iter_mut() {
                    *o = channel.sample(i, &mut rng);
                }
                let d = design.quantize(&obs);
                if d.index != i || d.low_confidence {
                    errors += 1;
                }
            }
            errors
        })
        .collect();
    let sigma = (design.delta * (1.0 - design.delta) / trials as f64).sqrt();
    Ok((1..=design.ell())
        .map(|i| {
            let errors: u64 = counts[(i - 1) * chunks as usize..i * chunks as usize]
                .iter()
                .sum();
            McEstimate {
                index: i,
                trials,
                errors,
                empirical: errors as f64 / trials as f64,
                exact: exact[i - 1],
                sigma,
            }
        })
        .collect())
}
