//! Synthesis schedules (paths in the synthesis graph) and exact path counts.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{IntegerMenus, SynthesisGraph};

/// One synthesis round: write `letter` using the duration with 1-based `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round {
    pub letter: usize,
    pub index: usize,
}

/// A word of `S(G)`: the rounds performed after an initial run of `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Schedule {
    pub start: usize,
    pub rounds: Vec<Round>,
}

impl Schedule {
    pub fn new(start: usize) -> Self {
        Schedule {
            start,
            rounds: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn last_letter(&self) -> usize {
        self.rounds.last().map_or(self.start, |r| r.letter)
    }

    pub fn push(&mut self, letter: usize, index: usize) {
        self.rounds.push(Round { letter, index });
    }

    /// Pairs `(previous letter, round)` for every round.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Round)> + '_ {
        let prev = std::iter::once(self.start).chain(self.rounds.iter().map(|r| r.letter));
        prev.zip(self.rounds.iter().copied())
    }

    pub fn validate(&self, graph: &SynthesisGraph) -> Result<()> {
        let q = graph.q();
        if self.start >= q {
            return Err(Error::InvalidSchedule(format!(
                "start letter {} outside alphabet",
                self.start
            )));
        }
        for (j, (prev, r)) in self.transitions().enumerate() {
            if r.letter >= q {
                return Err(Error::InvalidSchedule(format!(
                    "round {j}: letter {} outside alphabet",
                    r.letter
                )));
            }
            if r.letter == prev {
                return Err(Error::InvalidSchedule(format!(
                    "round {j}: letter {} repeats the previous run",
                    graph.alphabet().name(prev)
                )));
            }
            if r.index == 0 || r.index > graph.ell() {
                return Err(Error::InvalidSchedule(format!(
                    "round {j}: duration index {} outside 1..={}",
                    r.index,
                    graph.ell()
                )));
            }
        }
        Ok(())
    }

    /// Total synthesis time. Assumes the schedule is valid for `graph`.
    pub fn total_duration(&self, graph: &SynthesisGraph) -> f64 {
        self.transitions()
            .map(|(b, r)| graph.duration(b, r.letter, r.index))
            .sum()
    }

    /// The label `a_1^{t_1} a_2^{t_2} ...` generated by the path.
    pub fn word(&self, menus: &IntegerMenus) -> Vec<usize> {
        let mut w = Vec::new();
        for (b, r) in self.transitions() {
            let t = menus.menu(b, r.letter)[r.index - 1];
            w.extend(std::iter::repeat_n(r.letter, t as usize));
        }
        w
    }
}

/// Exact counts `N(v, t)` of schedules that start after a run of `v` and
/// last exactly `t` time units, for all `t <= horizon`.
#[derive(Clone, Debug)]
pub struct ScheduleCounter {
    menus: IntegerMenus,
    table: Vec<Vec<BigUint>>,
}

impl ScheduleCounter {
    pub fn new(graph: &SynthesisGraph, horizon: u64) -> Result<Self> {
        let menus = graph.integer_menus()?;
        let q = graph.q();
        let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(horizon as usize + 1);
        table.push(vec![BigUint::one(); q]);
        for t in 1..=horizon {
            let row = (0..q)
                .map(|v| {
                    let mut n = BigUint::zero();
                    for a in (0..q).filter(|&a| a != v) {
                        for &d in menus.menu(v, a) {
                            if d <= t {
                                n += &table[(t - d) as usize][a];
                            }
                        }
                    }
                    n
                })
                .collect();
            table.push(row);
        }
        Ok(ScheduleCounter { menus, table })
    }

    pub fn horizon(&self) -> u64 {
        (self.table.len() - 1) as u64
    }

    pub fn menus(&self) -> &IntegerMenus {
        &self.menus
    }

    pub fn count(&self, start: usize, total: u64) -> &BigUint {
        &self.table[total as usize][start]
    }
}

/// Number of schedules from `start` with durations summing to exactly `total`.
pub fn count_schedules(graph: &SynthesisGraph, start: usize, total: u64) -> Result<BigUint> {
    Ok(ScheduleCounter::new(graph, total)?
        .count(start, total)
        .clone())
}

/// All schedules from `start` whose total duration is at most `max_total`.
pub fn enumerate_schedules(
    graph: &SynthesisGraph,
    start: usize,
    max_total: u64,
) -> Result<Vec<Schedule>> {
    let menus = graph.integer_menus()?;
    let mut out = Vec::new();
    let mut current = Schedule::new(start);
    extend(&menus, &mut current, max_total, &mut out);
    Ok(out)
}

fn extend(menus: &IntegerMenus, current: &mut Schedule, remaining: u64, out: &mut Vec<Schedule>) {
    out.push(current.clone());
    let b = current.last_letter();
    for a in (0..menus.q()).filter(|&a| a != b) {
        for (i, &t) in menus.menu(b, a).iter().enumerate() {
            if t <= remaining {
                current.push(a, i + 1);
                extend(menus, current, remaining - t, out);
                current.rounds.pop();
            }
        }
    }
}

/// Outcome of an exhaustive losslessness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LosslessReport {
    pub schedules: usize,
    pub endpoint_pairs: usize,
}

/// Checks that no two schedules between the same pair of letters generate the
/// same word, over every schedule of total duration at most `max_total`.
pub fn check_lossless(graph: &SynthesisGraph, max_total: u64) -> Result<LosslessReport> {
    let menus = graph.integer_menus()?;
    let mut seen: HashMap<(usize, usize, Vec<usize>), Schedule> = HashMap::new();
    let mut schedules = 0;
    let mut pairs = std::collections::HashSet::new();
    for start in 0..graph.q() {
        for s in enumerate_schedules(graph, start, max_total)? {
            schedules += 1;
            let key = (start, s.last_letter(), s.word(&menus));
            pairs.insert((key.0, key.1));
            if let Some(other) = seen.get(&key) {
                return Err(Error::InvalidGraph(format!(
                    "schedules {other:?} and {s:?} generate the same word"
                )));
            }
            seen.insert(key, s);
        }
    }
    Ok(LosslessReport {
        schedules,
        endpoint_pairs: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Alphabet;

    fn dna(menu: &[f64]) -> SynthesisGraph {
        SynthesisGraph::uniform(Alphabet::dna(), menu, 10.0).unwrap()
    }

    #[test]
    fn small_counts() {
        let g = dna(&[1.0]);
        for start in 0..4 {
            assert_eq!(count_schedules(&g, start, 3).unwrap(), BigUint::from(27u32));
        }
        let g = dna(&[1.0, 2.0]);
        assert_eq!(count_schedules(&g, 2, 2).unwrap(), BigUint::from(12u32));
        assert_eq!(count_schedules(&g, 0, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn counts_match_enumeration() {
        for menu in [&[1.0, 2.0][..], &[1.0, 3.0], &[2.0, 3.0]] {
            let g = dna(menu);
            let counter = ScheduleCounter::new(&g, 7).unwrap();
            for start in 0..4 {
                let all = enumerate_schedules(&g, start, 7).unwrap();
                for t in 0..=7u64 {
                    let n = all
                        .iter()
                        .filter(|s| s.total_duration(&g) == t as f64)
                        .count();
                    assert_eq!(
                        counter.count(start, t),
                        &BigUint::from(n),
                        "{menu:?} start {start} t {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn unreachable_totals_count_zero() {
        let g = dna(&[2.0]);
        assert!(count_schedules(&g, 0, 3).unwrap().is_zero());
    }

    #[test]
    fn validate_catches_repeats_and_bad_indices() {
        let g = dna(&[1.0, 2.0]);
        let mut s = Schedule::new(0);
        s.push(1, 2);
        s.push(3, 1);
        assert!(s.validate(&g).is_ok());
        assert_eq!(s.total_duration(&g), 3.0);
        s.push(3, 1);
        assert!(matches!(s.validate(&g), Err(Error::InvalidSchedule(_))));
        let mut s = Schedule::new(0);
        s.push(1, 3);
        assert!(s.validate(&g).is_err());
        let mut s = Schedule::new(0);
        s.push(0, 1);
        assert!(s.validate(&g).is_err());
    }

    #[test]
    fn word_expands_runs() {
        let g = dna(&[1.0, 3.0]);
        let mut s = Schedule::new(0);
        s.push(2, 2);
        s.push(1, 1);
        assert_eq!(s.word(&g.integer_menus().unwrap()), vec![2, 2, 2, 1]);
    }

    #[test]
    fn small_graphs_are_lossless() {
        let r = check_lossless(&dna(&[1.0, 2.0]), 5).unwrap();
        assert!(r.schedules > 0);
    }
}
