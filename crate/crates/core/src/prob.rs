//! Exact pmf and tail evaluation for the copy-sum distributions.
//!
//! Tails are summed from the far end of the support so that small
//! probabilities keep full relative precision.

use statrs::function::factorial::{ln_binomial, ln_factorial};

/// `Binomial(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinomialSum {
    pub trials: u64,
    pub p: f64,
}

impl BinomialSum {
    pub fn new(trials: u64, p: f64) -> Self {
        debug_assert!(p > 0.0 && p < 1.0);
        BinomialSum { trials, p }
    }

    pub fn ln_pmf(&self, k: u64) -> f64 {
        if k > self.trials {
            return f64::NEG_INFINITY;
        }
        ln_binomial(self.trials, k)
            + k as f64 * self.p.ln()
            + (self.trials - k) as f64 * (-self.p).ln_1p()
    }

    pub fn pmf(&self, k: u64) -> f64 {
        self.ln_pmf(k).exp()
    }

    /// `Pr(r <= x)`.
    pub fn lower_tail(&self, x: u64) -> f64 {
        (0..=x.min(self.trials)).map(|k| self.pmf(k)).sum()
    }

    /// `Pr(r > x)`.
    pub fn upper_tail(&self, x: u64) -> f64 {
        if x >= self.trials {
            return 0.0;
        }
        (x + 1..=self.trials).rev().map(|k| self.pmf(k)).sum()
    }
}

/// `Poisson(mean)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonSum {
    pub mean: f64,
}

impl PoissonSum {
    pub fn new(mean: f64) -> Self {
        debug_assert!(mean >= 0.0);
        PoissonSum { mean }
    }

    pub fn ln_pmf(&self, k: u64) -> f64 {
        if self.mean == 0.0 {
            return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        -self.mean + k as f64 * self.mean.ln() - ln_factorial(k)
    }

    pub fn pmf(&self, k: u64) -> f64 {
        self.ln_pmf(k).exp()
    }

    /// `Pr(S <= x)`.
    pub fn lower_tail(&self, x: u64) -> f64 {
        (0..=x).rev().map(|k| self.pmf(k)).sum()
    }

    /// `Pr(S > x)`, summed upward until the terms past the mode vanish.
    pub fn upper_tail(&self, x: u64) -> f64 {
        let mut sum = 0.0;
        let mut k = x + 1;
        loop {
            let term = self.pmf(k);
            sum += term;
            if (k as f64) > self.mean && term <= sum * 1e-18 {
                break;
            }
            k += 1;
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exact reference: integer binomial coefficient times powers.
    fn binom_exact(n: u64, k: u64, p: f64) -> f64 {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        c as f64 * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
    }

    #[test]
    fn binomial_pmf_matches_integer_reference() {
        for &(n, p) in &[(4u64, 0.5), (14, 0.5), (30, 0.3), (50, 0.9), (100, 0.99)] {
            let d = BinomialSum::new(n, p);
            let mut total = 0.0;
            for k in 0..=n {
                let e = binom_exact(n, k, p);
                assert!(
                    (d.pmf(k) - e).abs() <= 1e-12 * e.max(1e-300) + 1e-300,
                    "n={n} k={k}"
                );
                total += d.pmf(k);
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn binomial_tails() {
        let d = BinomialSum::new(4, 0.5);
        assert!((d.lower_tail(0) - 0.0625).abs() < 1e-15);
        assert_eq!(d.upper_tail(4), 0.0);
        assert!((d.upper_tail(2) - 5.0 / 16.0).abs() < 1e-15);
        let d = BinomialSum::new(14, 0.5);
        assert!((d.lower_tail(4) - 1471.0 / 16384.0).abs() < 1e-15);
    }

    #[test]
    fn poisson_tails_complement() {
        for mean in [0.3, 4.605_170_185_988_091, 25.0, 180.0] {
            let d = PoissonSum::new(mean);
            for x in [0u64, 1, 5, 20, 200] {
                let s = d.lower_tail(x) + d.upper_tail(x);
                assert!((s - 1.0).abs() < 1e-12, "mean {mean} x {x}: {s}");
            }
        }
        let d = PoissonSum::new(100f64.ln());
        assert!((d.lower_tail(0) - 0.01).abs() < 1e-15);
    }

    #[test]
    fn poisson_zero_mean() {
        let d = PoissonSum::new(0.0);
        assert_eq!(d.pmf(0), 1.0);
        assert_eq!(d.upper_tail(0), 0.0);
    }
}
