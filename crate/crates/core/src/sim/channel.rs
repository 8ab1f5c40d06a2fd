//! Sampling run lengths for every copy of a strand.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantizer::{Decision, QuantizerDesign, RunLengthModel};
use crate::schedule::Schedule;

/// Independent stream for one `(seed, trial)` pair.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Per-index run-length samplers for one design.
#[derive(Clone, Debug)]
pub enum Channel {
    Binomial(Vec<Binomial>),
    Poisson(Vec<Poisson<f64>>),
}

impl Channel {
    pub fn new(design: &QuantizerDesign) -> Result<Self> {
        design.model.validate()?;
        Ok(match &design.model {
            RunLengthModel::Binomial { p } => Channel::Binomial(
                design
                    .durations
                    .iter()
                    .map(|&t| {
                        Binomial::new(t as u64, *p).map_err(|e| Error::param("p", p, e.to_string()))
                    })
                    .collect::<Result<_>>()?,
            ),
            RunLengthModel::Poisson { lambdas } => Channel::Poisson(
                lambdas
                    .iter()
                    .map(|&l| Poisson::new(l).map_err(|e| Error::param("lambda", l, e.to_string())))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn ell(&self) -> usize {
        match self {
            Channel::Binomial(d) => d.len(),
            Channel::Poisson(d) => d.len(),
        }
    }

    /// One run length for a round written with 1-based `index`.
    pub fn sample<R: Rng + ?Sized>(&self, index: usize, rng: &mut R) -> u64 {
        match self {
            Channel::Binomial(d) => d[index - 1].sample(rng),
            Channel::Poisson(d) => d[index - 1].sample(rng) as u64,
        }
    }
}

/// What `N` copies of one strand look like after synthesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelTrace {
    pub schedule: Schedule,
    /// `copies[c][j]`: run length of round `j` in copy `c`.
    pub copies: Vec<Vec<u64>>,
    /// Quantizer output for every round.
    pub decisions: Vec<Decision>,
    /// Rounds lost in at least one copy.
    pub partial_deletions: Vec<usize>,
    /// Rounds lost in every copy.
    pub full_deletions: Vec<usize>,
}

impl ChannelTrace {
    /// Recomputes decisions and deletion lists from `copies`, e.g. after
    /// editing run lengths by hand.
    pub fn requantize(&mut self, design: &QuantizerDesign) {
        let rounds = self.schedule.len();
        self.decisions.clear();
        self.partial_deletions.clear();
        self.full_deletions.clear();
        let mut column = vec![0u64; self.copies.len()];
        for j in 0..rounds {
            for (c, copy) in self.copies.iter().enumerate() {
                column[c] = copy[j];
            }
            let zeros = column.iter().filter(|&&r| r == 0).count();
            if zeros > 0 {
                self.partial_deletions.push(j);
            }
            if zeros == column.len() {
                self.full_deletions.push(j);
            }
            self.decisions.push(design.quantize(&column));
        }
    }
}

/// Synthesizes `design.copies` copies of `schedule` with a fresh stream.
pub fn synthesize(
    schedule: &Schedule,
    design: &QuantizerDesign,
    seed: u64,
) -> Result<ChannelTrace> {
    let channel = Channel::new(design)?;
    synthesize_with(schedule, design, &channel, &mut trial_rng(seed, 0))
}

pub fn synthesize_with<R: Rng + ?Sized>(
    schedule: &Schedule,
    design: &QuantizerDesign,
    channel: &Channel,
    rng: &mut R,
) -> Result<ChannelTrace> {
    if let Some(r) = schedule
        .rounds
        .iter()
        .find(|r| r.index == 0 || r.index > channel.ell())
    {
        return Err(Error::InvalidSchedule(format!(
            "duration index {} outside the design's 1..={}",
            r.index,
            channel.ell()
        )));
    }
    let copies: Vec<Vec<u64>> = (0..design.copies)
        .map(|_| {
            schedule
                .rounds
                .iter()
                .map(|r| channel.sample(r.index, rng))
                .collect()
        })
        .collect();
    let mut trace = ChannelTrace {
        schedule: schedule.clone(),
        copies,
        decisions: Vec::new(),
        partial_deletions: Vec::new(),
        full_deletions: Vec::new(),
    };
    trace.requantize(design);
    Ok(trace)
}
