//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use prdna::graph::{Alphabet, OrdinaryGraph, SynthesisGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn uniform(q: usize, menu: &[f64]) -> SynthesisGraph {
    SynthesisGraph::uniform(Alphabet::with_size(q).unwrap(), menu, 10.0).unwrap()
}

pub fn adjacency(g: &OrdinaryGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.from][e.to] += 1.0;
    }
    a
}

/// Spectral radius and Perron vector of a nonnegative irreducible matrix by
/// plain power iteration on `A + I` (the shift removes periodicity).
pub fn power_iteration(a: &[Vec<f64>], transpose: bool) -> (f64, Vec<f64>) {
    let n = a.len();
    let mut v = vec![1.0 / n as f64; n];
    let mut rho = 0.0;
    for _ in 0..1_000_000 {
        let mut w = v.clone();
        for i in 0..n {
            for j in 0..n {
                let aij = if transpose { a[j][i] } else { a[i][j] };
                w[i] += aij * v[j];
            }
        }
        let norm: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= norm);
        let next = norm - 1.0;
        let diff: f64 = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).sum();
        v = w;
        if diff < 1e-15 && (next - rho).abs() < 1e-15 * next.max(1.0) {
            rho = next;
            break;
        }
        rho = next;
    }
    (rho, v)
}

/// Stationary mass on the letter vertices of `G'` under its max-entropic chain.
pub fn non_auxiliary_mass(g: &OrdinaryGraph) -> f64 {
    let a = adjacency(g);
    let (_, right) = power_iteration(&a, false);
    let (_, left) = power_iteration(&a, true);
    let w: Vec<f64> = right.iter().zip(&left).map(|(r, l)| r * l).collect();
    let total: f64 = w.iter().sum();
    (0..g.vertex_count())
        .filter(|&v| !g.is_auxiliary(v))
        .map(|v| w[v])
        .sum::<f64>()
        / total
}

/// Fraction of steps spent on letter vertices along a max-entropic random
/// walk on `G'`, with a batch-means standard error.
pub fn random_walk_alpha(g: &OrdinaryGraph, steps: usize, seed: u64) -> (f64, f64) {
    let a = adjacency(g);
    let (rho, right) = power_iteration(&a, false);
    let n = g.vertex_count();
    let transitions: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|u| {
            let mut acc = 0.0;
            (0..n)
                .filter(|&v| a[u][v] > 0.0)
                .map(|v| {
                    acc += a[u][v] * right[v] / (rho * right[u]);
                    (v, acc)
                })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let batches = 100;
    let per_batch = steps / batches;
    let mut v = 0;
    let mut means = Vec::with_capacity(batches);
    for _ in 0..batches {
        let mut hits = 0usize;
        for _ in 0..per_batch {
            if !g.is_auxiliary(v) {
                hits += 1;
            }
            let x: f64 = rng.random::<f64>() * transitions[v].last().unwrap().1;
            v = transitions[v]
                .iter()
                .find(|&&(_, c)| x < c)
                .map_or(transitions[v].last().unwrap().0, |&(w, _)| w);
        }
        means.push(hits as f64 / per_batch as f64);
    }
    let mean = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
    (mean, (var / batches as f64).sqrt())
}

/// `Pr(Binomial(n, p) = k)` from a product of ratios, without log-gamma.
pub fn binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut c = 1.0f64;
    for i in 0..k.min(n - k) {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}

pub fn binomial_cdf(n: u64, x: u64, p: f64) -> f64 {
    (0..=x.min(n)).map(|k| binomial_pmf(n, k, p)).sum()
}

/// `Pr(Poisson(mean) = k)` for every `k <= last`, by the ratio recurrence.
fn poisson_pmfs(mean: f64, last: u64) -> Vec<f64> {
    let mut p = vec![(-mean).exp()];
    for k in 1..=last {
        p.push(p[k as usize - 1] * mean / k as f64);
    }
    p
}

pub fn poisson_cdf(mean: f64, x: u64) -> f64 {
    poisson_pmfs(mean, x).iter().sum()
}

/// `Pr(Poisson(mean) > x)`, summed over the tail rather than as `1 - cdf`.
pub fn poisson_sf(mean: f64, x: u64) -> f64 {
    let last = x.max((mean + 40.0 * mean.sqrt() + 50.0) as u64);
    poisson_pmfs(mean, last)[x as usize + 1..].iter().sum()
}
