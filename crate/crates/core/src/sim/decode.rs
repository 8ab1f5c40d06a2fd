//! End-to-end trials: encode, synthesize, quantize, correct, decode.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::{synthesize_with, trial_rng, Channel, ChannelTrace};
use crate::codec::{EncodedStrand, Pipeline, StrandHeader};
use crate::error::{Error, Result};
use crate::quantizer::QuantizerDesign;

/// Quantizes the payload rounds of `trace`, reads the parity letters and
/// decodes. Letters are taken as read correctly; with `strict_framing` a
/// parity run lost in every copy is reported as unrecoverable.
pub fn read_and_decode(
    trace: &ChannelTrace,
    header: &StrandHeader,
    pipeline: &Pipeline,
    strict_framing: bool,
) -> Result<Vec<bool>> {
    let s = header.payload_rounds;
    if strict_framing {
        if let Some(&j) = trace.full_deletions.iter().find(|&&j| j >= s) {
            return Err(Error::Unrecoverable(format!(
                "redundancy run {} lost in every copy",
                j - s + 1
            )));
        }
    }
    let mut schedule = trace.schedule.clone();
    for (r, d) in schedule.rounds.iter_mut().zip(&trace.decisions).take(s) {
        r.index = d.index;
    }
    pipeline.decode(&EncodedStrand {
        header: header.clone(),
        schedule,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub trials: usize,
    pub seed: u64,
    pub start: usize,
    /// Fixed payload; a fresh uniform payload per trial when `None`.
    pub payload: Option<Vec<bool>>,
    pub strict_framing: bool,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            trials: 100,
            seed: 0,
            start: 0,
            payload: None,
            strict_framing: false,
            jobs: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexErrorRate {
    pub index: usize,
    pub rounds: u64,
    pub errors: u64,
    pub rate: f64,
    /// `3 sqrt(rate (1 - rate) / rounds)`.
    pub radius: f64,
    pub exact: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub trials: usize,
    pub seed: u64,
    pub payload_bits: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Trials whose decoder reported an error rather than a wrong payload.
    pub decode_failures: usize,
    /// Payload rounds only; a low-confidence decision counts as an error.
    pub index_errors: Vec<IndexErrorRate>,
    pub partial_deletions: u64,
    pub full_deletions: u64,
    pub mean_payload_rounds: f64,
    pub mean_redundancy_rounds: f64,
    pub mean_synthesis_time: f64,
    /// Payload bits over mean synthesis time of the whole strand.
    pub bits_per_time: f64,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    successes: usize,
    failures: usize,
    rounds: Vec<u64>,
    errors: Vec<u64>,
    partial: u64,
    full: u64,
    payload_rounds: u64,
    redundancy_rounds: u64,
    time: f64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.successes += other.successes;
        self.failures += other.failures;
        for (a, b) in self.rounds.iter_mut().zip(other.rounds) {
            *a += b;
        }
        for (a, b) in self.errors.iter_mut().zip(other.errors) {
            *a += b;
        }
        self.partial += other.partial;
        self.full += other.full;
        self.payload_rounds += other.payload_rounds;
        self.redundancy_rounds += other.redundancy_rounds;
        self.time += other.time;
        self
    }
}

/// Runs `config.trials` independent strands through the channel.
pub fn simulate(
    pipeline: &Pipeline,
    design: &QuantizerDesign,
    config: &SimulationConfig,
) -> Result<SimulationReport> {
    let graph = pipeline.codec().graph();
    if design.ell() != graph.ell() {
        return Err(Error::param(
            "design",
            format!("ell = {}", design.ell()),
            format!("ell = {} to match the graph", graph.ell()),
        ));
    }
    if config.trials == 0 {
        return Err(Error::param("trials", 0, "trials >= 1"));
    }
    let payload_bits = match &config.payload {
        Some(p) => p.len(),
        None => pipeline.payload_capacity(config.start),
    };
    let channel = Channel::new(design)?;
    let ell = design.ell();
    let empty = || Tally {
        rounds: vec![0; ell],
        errors: vec![0; ell],
        ..Tally::default()
    };
    let trial = |t: usize| -> Result<Tally> {
        let mut rng = trial_rng(config.seed, t as u64);
        let bits: Vec<bool> = match &config.payload {
            Some(p) => p.clone(),
            None => (0..payload_bits).map(|_| rng.random()).collect(),
        };
        let strand = pipeline.encode(&bits, config.start)?;
        let trace = synthesize_with(&strand.schedule, design, &channel, &mut rng)?;
        let mut tally = empty();
        let s = strand.header.payload_rounds;
        for (r, d) in strand.schedule.rounds.iter().zip(&trace.decisions).take(s) {
            tally.rounds[r.index - 1] += 1;
            if d.index != r.index || d.low_confidence {
                tally.errors[r.index - 1] += 1;
            }
        }
        tally.partial = trace.partial_deletions.len() as u64;
        tally.full = trace.full_deletions.len() as u64;
        tally.payload_rounds = s as u64;
        tally.redundancy_rounds = strand.header.redundancy_rounds as u64;
        tally.time = strand.synthesis_time(graph);
        match read_and_decode(&trace, &strand.header, pipeline, config.strict_framing) {
            Ok(decoded) if decoded == bits => tally.successes = 1,
            Ok(_) => {}
            Err(
                Error::Unrecoverable(_) | Error::InvalidSchedule(_) | Error::ZeroDifference { .. },
            ) => tally.failures = 1,
            Err(e) => return Err(e),
        }
        Ok(tally)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::param("jobs", config.jobs, e.to_string()))?;
    let tally = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(trial)
            .try_reduce(empty, |a, b| Ok(a.merge(b)))
    })?;

    let exact = design.exact_error_probabilities();
    let n = config.trials as f64;
    let index_errors = (0..ell)
        .map(|i| {
            let rounds = tally.rounds[i];
            let rate = if rounds == 0 {
                0.0
            } else {
                tally.errors[i] as f64 / rounds as f64
            };
            IndexErrorRate {
                index: i + 1,
                rounds,
                errors: tally.errors[i],
                rate,
                radius: if rounds == 0 {
                    0.0
                } else {
                    3.0 * (rate * (1.0 - rate) / rounds as f64).sqrt()
                },
                exact: exact[i],
            }
        })
        .collect();
    let mean_time = tally.time / n;
    Ok(SimulationReport {
        trials: config.trials,
        seed: config.seed,
        payload_bits,
        successes: tally.successes,
        success_rate: tally.successes as f64 / n,
        decode_failures: tally.failures,
        index_errors,
        partial_deletions: tally.partial,
        full_deletions: tally.full,
        mean_payload_rounds: tally.payload_rounds as f64 / n,
        mean_redundancy_rounds: tally.redundancy_rounds as f64 / n,
        mean_synthesis_time: mean_time,
        bits_per_time: payload_bits as f64 / mean_time,
    })
}
