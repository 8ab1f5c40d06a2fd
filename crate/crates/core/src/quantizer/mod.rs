//! Run-length quantizers.
//!
//! A design fixes durations `t^(1) < ... < t^(ell)` and right-closed decision
//! intervals `tau_{i-1} < r <= tau_i` on the copy statistic (the sum of the
//! `N` observed run lengths for Binomial runs, their mean for Poisson runs),
//! such that every index is misdetected with probability at most `delta`.

mod binomial;
mod poisson;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use binomial::design_binomial;
pub use poisson::{design_poisson, PoissonStop};

use crate::error::{Error, Result};
use crate::prob::{BinomialSum, PoissonSum};

/// Run-length distribution family of one synthesis round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum RunLengthModel {
    /// A round of duration `t` yields `Binomial(t, p)` letters.
    Binomial { p: f64 },
    /// The round with index `j` yields `Poisson(lambdas[j-1])` letters.
    Poisson { lambdas: Vec<f64> },
}

impl RunLengthModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            RunLengthModel::Binomial { p } => {
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(Error::param("p", p, "0 < p < 1"));
                }
            }
            RunLengthModel::Poisson { lambdas } => {
                if lambdas.is_empty()
                    || lambdas[0] <= 0.0
                    || lambdas.windows(2).any(|w| w[1] <= w[0])
                {
                    return Err(Error::param(
                        "lambdas",
                        format!("{lambdas:?}"),
                        "positive, strictly increasing",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Exact distribution of the copy sum for one designed index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SumDistribution {
    Binomial(BinomialSum),
    Poisson(PoissonSum),
}

impl SumDistribution {
    pub fn lower_tail(&self, x: u64) -> f64 {
        match self {
            SumDistribution::Binomial(d) => d.lower_tail(x),
            SumDistribution::Poisson(d) => d.lower_tail(x),
        }
    }

    pub fn upper_tail(&self, x: u64) -> f64 {
        match self {
            SumDistribution::Binomial(d) => d.upper_tail(x),
            SumDistribution::Poisson(d) => d.upper_tail(x),
        }
    }

    pub fn ln_pmf(&self, k: u64) -> f64 {
        match self {
            SumDistribution::Binomial(d) => d.ln_pmf(k),
            SumDistribution::Poisson(d) => d.ln_pmf(k),
        }
    }
}

/// A quantizer shared by every letter pair.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantizerDesign {
    pub model: RunLengthModel,
    /// Designed durations `t^(1) < ... < t^(ell)`.
    pub durations: Vec<f64>,
    /// `tau_0 = 0 <= tau_1 <= ... <= tau_ell`, expressed on the copy sum
    /// (for Poisson designs `tau_i` on the mean equals `sum_tau[i] / N`).
    pub sum_tau: Vec<u64>,
    pub delta: f64,
    pub copies: usize,
    pub max_duration: f64,
}

/// Quantizer output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    /// 1-based duration index.
    pub index: usize,
    /// Set when every copy lost the run (the statistic equals `tau_0`).
    pub low_confidence: bool,
}

impl QuantizerDesign {
    pub fn ell(&self) -> usize {
        self.durations.len()
    }

    /// The first `ell` levels; statistics beyond `tau_ell` then clamp to `ell`.
    pub fn truncated(&self, ell: usize) -> QuantizerDesign {
        let ell = ell.clamp(1, self.ell());
        let mut d = self.clone();
        d.durations.truncate(ell);
        d.sum_tau.truncate(ell + 1);
        if let RunLengthModel::Poisson { lambdas } = &mut d.model {
            lambdas.truncate(ell);
        }
        d
    }

    /// Thresholds on the family's own statistic (sum or mean).
    pub fn tau(&self) -> Vec<f64> {
        match self.model {
            RunLengthModel::Binomial { .. } => self.sum_tau.iter().map(|&t| t as f64).collect(),
            RunLengthModel::Poisson { .. } => self
                .sum_tau
                .iter()
                .map(|&t| t as f64 / self.copies as f64)
                .collect(),
        }
    }

    /// Distribution of the copy sum when index `i` (1-based) was written.
    pub fn sum_distribution(&self, index: usize) -> SumDistribution {
        let n = self.copies as u64;
        match &self.model {
            RunLengthModel::Binomial { p } => {
                let t = self.durations[index - 1] as u64;
                SumDistribution::Binomial(BinomialSum::new(n * t, *p))
            }
            RunLengthModel::Poisson { lambdas } => {
                SumDistribution::Poisson(PoissonSum::new(n as f64 * lambdas[index - 1]))
            }
        }
    }

    /// Maps `N` observed run lengths to a duration index.
    pub fn quantize(&self, observations: &[u64]) -> Decision {
        let sum: u64 = observations.iter().sum();
        if sum == 0 {
            return Decision {
                index: 1,
                low_confidence: true,
            };
        }
        let within = |tau: u64| match self.model {
            RunLengthModel::Binomial { .. } => sum <= tau,
            // mean <= tau/N, compared exactly for any number of observations
            RunLengthModel::Poisson { .. } => {
                u128::from(sum) * self.copies as u128
                    <= u128::from(tau) * observations.len() as u128
            }
        };
        let index = (1..=self.ell())
            .find(|&i| within(self.sum_tau[i]))
            .unwrap_or(self.ell());
        Decision {
            index,
            low_confidence: false,
        }
    }

    /// Exact `Pr(decision != i | i)` for every index. The top index has no
    /// right neighbour because larger statistics clamp to it.
    pub fn exact_error_probabilities(&self) -> Vec<f64> {
        (1..=self.ell())
            .map(|i| {
                let d = self.sum_distribution(i);
                let left = d.lower_tail(self.sum_tau[i - 1]);
                let right = if i < self.ell() {
                    d.upper_tail(self.sum_tau[i])
                } else {
                    0.0
                };
                left + right
            })
            .collect()
    }

    /// Maximum-likelihood index for a copy sum over the designed grid; ties
    /// go to the smaller index. `None` when no index can produce `sum`.
    pub fn ml_index(&self, sum: u64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 1..=self.ell() {
            let ll = self.sum_distribution(i).ln_pmf(sum);
            if ll == f64::NEG_INFINITY {
                continue;
            }
            if best.is_none_or(|(_, b)| ll > b) {
                best = Some((i, ll));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Human-readable table of the design.
    pub fn table(&self) -> String {
        let errors = self.exact_error_probabilities();
        let tau = self.tau();
        let mut out = String::new();
        let family = match &self.model {
            RunLengthModel::Binomial { p } => format!("binomial p={p}"),
            RunLengthModel::Poisson { .. } => "poisson".to_string(),
        };
        let _ = writeln!(
            out,
            "{family} delta={} N={} M={} ell={}",
            self.delta,
            self.copies,
            self.max_duration,
            self.ell()
        );
        let _ = writeln!(
            out,
            "{:>3} {:>12} {:>12} {:>12} {:>14}",
            "i", "t", "lambda", "tau", "error"
        );
        for i in 1..=self.ell() {
            let lambda = match &self.model {
                RunLengthModel::Poisson { lambdas } => format!("{:.6}", lambdas[i - 1]),
                RunLengthModel::Binomial { .. } => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{:>3} {:>12.6} {:>12} {:>12.6} {:>14.6e}",
                i,
                self.durations[i - 1],
                lambda,
                tau[i],
                errors[i - 1]
            );
        }
        out
    }

    pub fn to_file(&self) -> DesignFile {
        let (family, p, lambda) = match &self.model {
            RunLengthModel::Binomial { p } => ("binomial".to_string(), Some(*p), None),
            RunLengthModel::Poisson { lambdas } => {
                ("poisson".to_string(), None, Some(lambdas.clone()))
            }
        };
        DesignFile {
            family,
            p,
            lambda,
            t: self.durations.clone(),
            tau: self.tau(),
            delta: self.delta,
            copies: self.copies,
            max_duration: self.max_duration,
        }
    }

    pub fn from_file(file: &DesignFile) -> Result<Self> {
        let model = match file.family.as_str() {
            "binomial" => RunLengthModel::Binomial {
                p: file
                    .p
                    .ok_or_else(|| Error::Parse("binomial design without p".into()))?,
            },
            "poisson" => RunLengthModel::Poisson {
                lambdas: file
                    .lambda
                    .clone()
                    .ok_or_else(|| Error::Parse("poisson design without lambda".into()))?,
            },
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        model.validate()?;
        if file.copies == 0 {
            return Err(Error::param("N", 0, "N >= 1"));
        }
        if file.t.is_empty() || file.tau.len() != file.t.len() + 1 {
            return Err(Error::Parse(format!(
                "design has {} durations and {} thresholds",
                file.t.len(),
                file.tau.len()
            )));
        }
        if let RunLengthModel::Poisson { lambdas } = &model {
            if lambdas.len() != file.t.len() {
                return Err(Error::Parse("lambda and t lists differ in length".into()));
            }
        }
        let scale = match model {
            RunLengthModel::Binomial { .. } => 1.0,
            RunLengthModel::Poisson { .. } => file.copies as f64,
        };
        let sum_tau: Vec<u64> = file
            .tau
            .iter()
            .map(|&t| (t * scale).round() as u64)
            .collect();
        if sum_tau[0] != 0 || sum_tau.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Parse(
                "thresholds must start at 0 and be nondecreasing".into(),
            ));
        }
        Ok(QuantizerDesign {
            model,
            durations: file.t.clone(),
            sum_tau,
            delta: file.delta,
            copies: file.copies,
            max_duration: file.max_duration,
        })
    }
}

/// JSON form of a design.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignFile {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    pub t: Vec<f64>,
    pub tau: Vec<f64>,
    pub delta: f64,
    #[serde(rename = "N")]
    pub copies: usize,
    #[serde(rename = "M")]
    pub max_duration: f64,
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::param("delta", delta, "0 < delta < 1"))
    }
}

pub(crate) fn check_copies(copies: usize) -> Result<()> {
    if copies >= 1 {
        Ok(())
    } else {
        Err(Error::param("N", copies, "N >= 1"))
    }
}
