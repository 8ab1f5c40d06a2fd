//! Bits to a full strand schedule (payload rounds plus parity runs) and back.

use serde::{Deserialize, Serialize};

use super::ecc::{EccCode, EccKind};
use super::enumerative::EnumerativeCodec;
use super::redundancy::{
    append_redundancy, base_to_symbols, extract_redundancy, plan_redundancy, symbols_to_base,
    RedundancyPlan,
};
use crate::error::{Error, Result};
use crate::graph::SynthesisGraph;
use crate::schedule::Schedule;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub delta: f64,
    /// Multiplier `c` on `sqrt(s)` in the correctable radius.
    pub margin: f64,
    pub ecc: EccKind,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            delta: 0.02,
            margin: 3.0,
            ecc: EccKind::ReedSolomon,
        }
    }
}

/// Parameters a reader needs to split and decode a strand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrandHeader {
    pub q: usize,
    pub ell: usize,
    #[serde(rename = "T")]
    pub budget: u64,
    /// `s`.
    #[serde(rename = "s")]
    pub payload_rounds: usize,
    /// `s''`.
    #[serde(rename = "s_dd")]
    pub redundancy_rounds: usize,
    pub delta: f64,
    pub start: usize,
    pub margin: f64,
    pub payload_bits: usize,
    pub ecc: EccKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncodedStrand {
    pub header: StrandHeader,
    /// Payload rounds followed by the parity runs.
    pub schedule: Schedule,
}

impl EncodedStrand {
    pub fn payload(&self) -> Schedule {
        let s = self.header.payload_rounds.min(self.schedule.len());
        Schedule {
            start: self.schedule.start,
            rounds: self.schedule.rounds[..s].to_vec(),
        }
    }

    /// Synthesis time of the whole strand, parity runs included.
    pub fn synthesis_time(&self, graph: &SynthesisGraph) -> f64 {
        self.schedule.total_duration(graph)
    }
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    codec: EnumerativeCodec,
    config: PipelineConfig,
}

impl Pipeline {
    pub fn new(graph: &SynthesisGraph, budget: u64, config: PipelineConfig) -> Result<Self> {
        if graph.q() < 3 {
            return Err(Error::param("q", graph.q(), "q >= 3"));
        }
        Ok(Pipeline {
            codec: EnumerativeCodec::new(graph, budget)?,
            config,
        })
    }

    pub fn codec(&self) -> &EnumerativeCodec {
        &self.codec
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn payload_capacity(&self, start: usize) -> usize {
        self.codec.payload_capacity(start)
    }

    /// Plan and code for `s` payload rounds under this pipeline's settings.
    pub fn plan(&self, s: usize) -> Result<(RedundancyPlan, Option<Box<dyn EccCode>>)> {
        let g = self.codec.graph();
        plan_with_code(
            s,
            g.ell(),
            g.q(),
            self.config.delta,
            self.config.margin,
            self.config.ecc,
        )
    }

    pub fn encode(&self, bits: &[bool], start: usize) -> Result<EncodedStrand> {
        let payload = self.codec.encode(bits, start)?;
        let g = self.codec.graph();
        let (plan, code) = self.plan(payload.len())?;
        let schedule = match &code {
            Some(code) if plan.parity_symbols > 0 => {
                let digits: Vec<u32> = payload
                    .rounds
                    .iter()
                    .map(|r| (r.index - 1) as u32)
                    .collect();
                let mut parity: Vec<usize> = code
                    .encode(&digits)?
                    .into_iter()
                    .map(|d| d as usize + 1)
                    .collect();
                parity.resize(plan.parity_symbols, 1);
                append_redundancy(&payload, &symbols_to_base(&parity, g.ell(), g.q())?, g.q())?
            }
            _ => payload,
        };
        Ok(EncodedStrand {
            header: StrandHeader {
                q: g.q(),
                ell: g.ell(),
                budget: self.codec.budget(),
                payload_rounds: plan.payload_rounds,
                redundancy_rounds: plan.redundancy_rounds,
                delta: self.config.delta,
                start,
                margin: self.config.margin,
                payload_bits: bits.len(),
                ecc: self.config.ecc,
            },
            schedule,
        })
    }

    /// Recovers the payload. Payload duration indices may be wrong (up to the
    /// code radius); letters are taken as read correctly.
    pub fn decode(&self, strand: &EncodedStrand) -> Result<Vec<bool>> {
        let h = &strand.header;
        let g = self.codec.graph();
        if (h.q, h.ell, h.budget) != (g.q(), g.ell(), self.codec.budget()) {
            return Err(Error::InvalidSchedule(format!(
                "header (q, ell, T) = ({}, {}, {}) does not match the graph and budget ({}, {}, {})",
                h.q,
                h.ell,
                h.budget,
                g.q(),
                g.ell(),
                self.codec.budget()
            )));
        }
        let s = h.payload_rounds;
        if strand.schedule.len() != s + h.redundancy_rounds {
            return Err(Error::InvalidSchedule(format!(
                "{} rounds, header announces {} + {}",
                strand.schedule.len(),
                s,
                h.redundancy_rounds
            )));
        }
        if strand.schedule.start != h.start {
            return Err(Error::InvalidSchedule(
                "start letter differs from header".into(),
            ));
        }
        let (plan, code) = plan_with_code(s, h.ell, h.q, h.delta, h.margin, h.ecc)?;
        if plan.redundancy_rounds != h.redundancy_rounds {
            return Err(Error::InvalidSchedule(format!(
                "header announces {} redundancy runs, the plan needs {}",
                h.redundancy_rounds, plan.redundancy_rounds
            )));
        }
        let mut payload = strand.payload();
        payload.validate(g)?;
        if let Some(code) = code.filter(|c| c.parity_len() > 0) {
            let letters: Vec<usize> = std::iter::once(payload.last_letter())
                .chain(strand.schedule.rounds[s..].iter().map(|r| r.letter))
                .collect();
            let barred = extract_redundancy(&letters, h.q)?;
            let symbols = base_to_symbols(&barred, h.ell, h.q, plan.parity_symbols)?;
            let parity: Vec<u32> = symbols[..code.parity_len()]
                .iter()
                .map(|&d| (d - 1) as u32)
                .collect();
            let digits: Vec<u32> = payload
                .rounds
                .iter()
                .map(|r| (r.index - 1) as u32)
                .collect();
            let corrected = code.decode(&digits, &parity)?;
            for (r, d) in payload.rounds.iter_mut().zip(corrected) {
                r.index = d as usize + 1;
            }
        }
        self.codec.decode(&payload, h.payload_bits)
    }
}

/// Budget `T` whose schedules have about `rounds` payload rounds on average
/// under the max-entropic chain.
pub fn budget_for_rounds(graph: &SynthesisGraph, rounds: usize) -> Result<u64> {
    let cap = crate::capacity::capacity(graph)?;
    let mean = crate::capacity::max_entropic_chain(graph, &cap).mean_round_duration;
    Ok((rounds as f64 * mean).round() as u64)
}

/// `ell = 1` carries no information in durations and gets no code.
pub fn plan_with_code(
    s: usize,
    ell: usize,
    q: usize,
    delta: f64,
    margin: f64,
    ecc: EccKind,
) -> Result<(RedundancyPlan, Option<Box<dyn EccCode>>)> {
    let plan = plan_redundancy(s, delta, ell, q, margin)?;
    if ell == 1 {
        return Ok((plan, None));
    }
    let code = ecc.build(ell, s, plan.radius)?;
    Ok((plan.with_parity(code.parity_len()), Some(code)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Alphabet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(menu: &[f64]) -> SynthesisGraph {
        SynthesisGraph::uniform(Alphabet::dna(), menu, 10.0).unwrap()
    }

    #[test]
    fn noiseless_roundtrip() {
        let g = graph(&[1.0, 2.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for budget in [10u64, 23, 40] {
            let p = Pipeline::new(&g, budget, PipelineConfig::default()).unwrap();
            let k = p.payload_capacity(2);
            let bits: Vec<bool> = (0..k).map(|_| rng.random()).collect();
            let strand = p.encode(&bits, 2).unwrap();
            assert_eq!(
                strand.header.payload_rounds + strand.header.redundancy_rounds,
                strand.schedule.len()
            );
            strand.schedule.validate(&g).unwrap();
            assert_eq!(p.decode(&strand).unwrap(), bits);
        }
    }

    #[test]
    fn corrects_flipped_indices() {
        let g = graph(&[1.0, 2.0]);
        let p = Pipeline::new(&g, 60, PipelineConfig::default()).unwrap();
        let bits = vec![true; p.payload_capacity(0)];
        let mut strand = p.encode(&bits, 0).unwrap();
        let (plan, _) = p.plan(strand.header.payload_rounds).unwrap();
        for r in strand.schedule.rounds.iter_mut().take(plan.radius) {
            r.index = 3 - r.index;
        }
        assert_eq!(p.decode(&strand).unwrap(), bits);
    }

    #[test]
    fn repetition_code_and_single_level() {
        let g = graph(&[1.0, 2.0]);
        let config = PipelineConfig {
            ecc: EccKind::Repetition,
            ..PipelineConfig::default()
        };
        let p = Pipeline::new(&g, 12, config).unwrap();
        let bits = vec![false, true, true, false, true];
        assert_eq!(p.decode(&p.encode(&bits, 1).unwrap()).unwrap(), bits);

        let g = graph(&[2.0]);
        let p = Pipeline::new(&g, 12, PipelineConfig::default()).unwrap();
        let strand = p.encode(&[true, false], 1).unwrap();
        assert_eq!(strand.header.redundancy_rounds, 0);
        assert_eq!(p.decode(&strand).unwrap(), vec![true, false]);
    }

    #[test]
    fn budget_from_rounds() {
        assert_eq!(budget_for_rounds(&graph(&[1.0]), 37).unwrap(), 37);
        assert_eq!(budget_for_rounds(&graph(&[2.0]), 37).unwrap(), 74);
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let g = graph(&[1.0, 2.0]);
        let p = Pipeline::new(&g, 12, PipelineConfig::default()).unwrap();
        let mut strand = p.encode(&[true], 0).unwrap();
        strand.header.redundancy_rounds += 1;
        assert!(matches!(p.decode(&strand), Err(Error::InvalidSchedule(_))));
    }
}
