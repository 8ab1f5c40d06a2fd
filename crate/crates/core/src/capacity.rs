//! Capacity of the synthesis graph and its max-entropic Markov chain.
//!
//! For a graph whose edges carry durations, the capacity in bits per time
//! unit is `log2(lambda)` where `lambda >= 1` solves `rho(A(z)) = 1` with
//! `A(z)[b][a] = sum_i z^(-t_{b->a}^(i))`. For integer durations `lambda`
//! coincides with the spectral radius of the ordinary expansion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SynthesisGraph;

const POWER_MAX_ITERS: usize = 200_000;
const POWER_REL_TOL: f64 = 1e-15;
const ROOT_REL_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// Bits per synthesis time unit.
    pub capacity: f64,
    pub perron_root: f64,
    /// Right Perron vector of `A(perron_root)`, normalized to sum 1.
    pub right_vector: Vec<f64>,
    /// Left Perron vector of `A(perron_root)`, normalized to sum 1.
    pub left_vector: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeProbability {
    pub to: usize,
    /// 1-based duration index.
    pub index: usize,
    pub duration: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovAnalysis {
    /// Outgoing edge distribution per letter.
    pub edge_probabilities: Vec<Vec<EdgeProbability>>,
    /// Stationary distribution of the letter sequence (one step per round).
    pub stationary: Vec<f64>,
    /// Fraction of time steps at which a new round starts.
    pub alpha: f64,
    pub mean_round_duration: f64,
}

/// `A(z)` in row-major order.
pub fn transfer_matrix(graph: &SynthesisGraph, z: f64) -> Vec<f64> {
    let q = graph.q();
    let mut m = vec![0.0; q * q];
    for b in 0..q {
        for a in 0..q {
            if a != b {
                m[b * q + a] = graph.menu(b, a).iter().map(|&t| z.powf(-t)).sum();
            }
        }
    }
    m
}

/// Perron root and vector of an irreducible nonnegative `n x n` matrix.
///
/// Iterates on `M + I`, which is primitive, and stops once the
/// Collatz-Wielandt bounds `min (Mx)_i/x_i <= rho <= max (Mx)_i/x_i` meet.
pub fn perron(matrix: &[f64], n: usize, transpose: bool) -> (f64, Vec<f64>) {
    let at = |i: usize, j: usize| {
        if transpose {
            matrix[j * n + i]
        } else {
            matrix[i * n + j]
        }
    };
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for _ in 0..POWER_MAX_ITERS {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = x[i] + (0..n).map(|j| at(i, j) * x[j]).sum::<f64>();
        }
        lo = f64::INFINITY;
        hi = 0.0;
        for i in 0..n {
            let r = y[i] / x[i];
            lo = f64::min(lo, r);
            hi = f64::max(hi, r);
        }
        let norm: f64 = y.iter().sum();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        if hi - lo <= POWER_REL_TOL * hi {
            break;
        }
    }
    (0.5 * (lo + hi) - 1.0, x)
}

/// Capacity of `S(G)` in bits per synthesis time unit.
pub fn capacity(graph: &SynthesisGraph) -> Result<CapacityResult> {
    let q = graph.q();
    if graph.edge_count() == 0 {
        return Err(Error::InvalidGraph("graph has no cycle".into()));
    }
    let rho = |z: f64| perron(&transfer_matrix(graph, z), q, false).0;

    let root = if rho(1.0) <= 1.0 + POWER_REL_TOL {
        1.0
    } else {
        // rho(A(z)) is strictly decreasing in z, and below 1 once
        // z > (q-1)*ell because every duration is at least 1.
        let mut lo = 1.0;
        let mut hi = (q * graph.ell()) as f64 + 1.0;
        while hi - lo > ROOT_REL_TOL * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if rho(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let m = transfer_matrix(graph, root);
    let (_, right) = perron(&m, q, false);
    let (_, left) = perron(&m, q, true);
    Ok(CapacityResult {
        capacity: root.log2(),
        perron_root: root,
        right_vector: right,
        left_vector: left,
    })
}

/// Max-entropic chain over `G`: edge `b -> a` of duration `t` is taken with
/// probability `lambda^(-t) x[a] / x[b]`.
pub fn max_entropic_chain(graph: &SynthesisGraph, cap: &CapacityResult) -> MarkovAnalysis {
    let q = graph.q();
    let lambda = cap.perron_root;
    let x = &cap.right_vector;
    let y = &cap.left_vector;

    let edge_probabilities: Vec<Vec<EdgeProbability>> = (0..q)
        .map(|b| {
            (0..q)
                .filter(|&a| a != b)
                .flat_map(|a| {
                    graph
                        .menu(b, a)
                        .iter()
                        .enumerate()
                        .map(move |(i, &t)| EdgeProbability {
                            to: a,
                            index: i + 1,
                            duration: t,
                            probability: lambda.powf(-t) * x[a] / x[b],
                        })
                })
                .collect()
        })
        .collect();

    // The letter chain P[b][a] = A(lambda)[b][a] x[a] / x[b] has stationary
    // distribution proportional to y[a] x[a].
    let weights: Vec<f64> = x.iter().zip(y).map(|(xi, yi)| xi * yi).collect();
    let total: f64 = weights.iter().sum();
    let stationary: Vec<f64> = weights.iter().map(|w| w / total).collect();

    let mean_round_duration: f64 = stationary
        .iter()
        .zip(&edge_probabilities)
        .map(|(pi, edges)| {
            pi * edges
                .iter()
                .map(|e| e.probability * e.duration)
                .sum::<f64>()
        })
        .sum();

    MarkovAnalysis {
        edge_probabilities,
        stationary,
        alpha: 1.0 / mean_round_duration,
        mean_round_duration,
    }
}
