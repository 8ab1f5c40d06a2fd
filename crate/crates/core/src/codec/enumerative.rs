//! Enumerative coding of fixed-duration schedules.
//!
//! Schedules of total duration exactly `T` from a given start letter are
//! ordered lexicographically by (letter, duration index) round by round. A
//! payload of `k` bits is read as an integer and unranked into that order.

use num_bigint::BigUint;
use num_traits::Zero;

use super::bits::{biguint_to_bits, bits_to_biguint};
use crate::error::{Error, Result};
use crate::graph::SynthesisGraph;
use crate::schedule::{Schedule, ScheduleCounter};

#[derive(Clone, Debug)]
pub struct EnumerativeCodec {
    graph: SynthesisGraph,
    counter: ScheduleCounter,
    budget: u64,
}

impl EnumerativeCodec {
    /// Requires integer durations.
    pub fn new(graph: &SynthesisGraph, budget: u64) -> Result<Self> {
        Ok(EnumerativeCodec {
            graph: graph.clone(),
            counter: ScheduleCounter::new(graph, budget)?,
            budget,
        })
    }

    pub fn graph(&self) -> &SynthesisGraph {
        &self.graph
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Number of schedules of duration exactly `T` after a run of `start`.
    pub fn count(&self, start: usize) -> &BigUint {
        self.counter.count(start, self.budget)
    }

    /// `floor(log2 count)`: every payload of this many bits can be encoded.
    pub fn payload_capacity(&self, start: usize) -> usize {
        let n = self.count(start);
        if n.is_zero() {
            0
        } else {
            (n.bits() - 1) as usize
        }
    }

    pub fn unrank(&self, start: usize, rank: &BigUint) -> Result<Schedule> {
        self.check_start(start)?;
        if rank >= self.count(start) {
            return Err(Error::param(
                "rank",
                rank,
                format!("rank < {}", self.count(start)),
            ));
        }
        let menus = self.counter.menus();
        let mut rank = rank.clone();
        let mut schedule = Schedule::new(start);
        let mut remaining = self.budget;
        'round: while remaining > 0 {
            let b = schedule.last_letter();
            for a in (0..self.graph.q()).filter(|&a| a != b) {
                for (i, &t) in menus.menu(b, a).iter().enumerate() {
                    if t > remaining {
                        continue;
                    }
                    let n = self.counter.count(a, remaining - t);
                    if rank < *n {
                        schedule.push(a, i + 1);
                        remaining -= t;
                        continue 'round;
                    }
                    rank -= n;
                }
            }
            unreachable!("rank below the count always selects a branch");
        }
        Ok(schedule)
    }

    pub fn rank(&self, schedule: &Schedule) -> Result<BigUint> {
        schedule.validate(&self.graph)?;
        let menus = self.counter.menus();
        let total: u64 = schedule
            .transitions()
            .map(|(b, r)| menus.menu(b, r.letter)[r.index - 1])
            .sum();
        if total != self.budget {
            return Err(Error::InvalidSchedule(format!(
                "total duration {total} differs from the budget T = {}",
                self.budget
            )));
        }
        let mut rank = BigUint::zero();
        let mut remaining = self.budget;
        for (b, round) in schedule.transitions() {
            for a in (0..self.graph.q()).filter(|&a| a != b) {
                for (i, &t) in menus.menu(b, a).iter().enumerate() {
                    if (a, i + 1) == (round.letter, round.index) {
                        break;
                    }
                    if t <= remaining {
                        rank += self.counter.count(a, remaining - t);
                    }
                }
                if a == round.letter {
                    break;
                }
            }
            remaining -= menus.menu(b, round.letter)[round.index - 1];
        }
        Ok(rank)
    }

    pub fn encode(&self, bits: &[bool], start: usize) -> Result<Schedule> {
        self.check_start(start)?;
        let available = self.payload_capacity(start);
        if bits.len() > available || self.count(start).is_zero() {
            return Err(Error::BudgetTooSmall {
                bits: bits.len(),
                available,
                budget: self.budget,
            });
        }
        self.unrank(start, &bits_to_biguint(bits))
    }

    /// Inverse of [`encode`](Self::encode) for a payload of `bits` bits.
    pub fn decode(&self, schedule: &Schedule, bits: usize) -> Result<Vec<bool>> {
        let rank = self.rank(schedule)?;
        if rank.bits() > bits as u64 {
            return Err(Error::InvalidSchedule(format!(
                "schedule rank needs more than {bits} bits"
            )));
        }
        Ok(biguint_to_bits(&rank, bits))
    }

    fn check_start(&self, start: usize) -> Result<()> {
        if start >= self.graph.q() {
            return Err(Error::param(
                "start",
                start,
                format!("letter index < {}", self.graph.q()),
            ));
        }
        Ok(())
    }
}

/// Encodes `bits` as a schedule of total duration exactly `budget`.
pub fn encode_payload(
    bits: &[bool],
    graph: &SynthesisGraph,
    start: usize,
    budget: u64,
) -> Result<Schedule> {
    EnumerativeCodec::new(graph, budget)?.encode(bits, start)
}

/// Recovers a `bits`-bit payload from a schedule of total duration `budget`.
pub fn decode_payload(
    schedule: &Schedule,
    graph: &SynthesisGraph,
    budget: u64,
    bits: usize,
) -> Result<Vec<bool>> {
    EnumerativeCodec::new(graph, budget)?.decode(schedule, bits)
}
