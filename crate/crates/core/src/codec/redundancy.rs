//! Parity sizing, base conversion and the differential letter encoding that
//! carries parity in runs whose lengths are never read.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schedule::Schedule;

/// Rate of an `ell`-ary code correcting a typical `delta` fraction of symbol errors.
pub fn c_delta_ell(delta: f64, ell: usize) -> Result<f64> {
    if ell < 2 {
        return Err(Error::param("ell", ell, "ell >= 2"));
    }
    let limit = (ell - 1) as f64 / ell as f64;
    if !(0.0..limit).contains(&delta) {
        return Err(Error::param(
            "delta",
            delta,
            format!("0 <= delta < {limit}"),
        ));
    }
    if delta == 0.0 {
        return Ok(1.0);
    }
    let ln_ell = (ell as f64).ln();
    Ok(1.0 + (delta * (delta / (ell - 1) as f64).ln() + (1.0 - delta) * (-delta).ln_1p()) / ln_ell)
}

/// Smallest `x` with `(q-1)^x >= ell^parity`, i.e. `ceil(parity log_{q-1} ell)`.
pub fn redundancy_runs(parity: usize, ell: usize, q: usize) -> usize {
    if parity == 0 || ell <= 1 {
        return 0;
    }
    let target = BigUint::from(ell).pow(parity as u32);
    let base = BigUint::from(q - 1);
    let estimate = (parity as f64 * (ell as f64).ln() / ((q - 1) as f64).ln()).ceil() as usize;
    let mut x = estimate.saturating_sub(2);
    while base.pow(x as u32) < target {
        x += 1;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RedundancyPlan {
    /// Payload rounds `s`.
    pub payload_rounds: usize,
    pub delta: f64,
    pub ell: usize,
    pub q: usize,
    /// `C_{delta,ell}`.
    pub rate: f64,
    /// `ceil(s (1/C - 1))`.
    pub formula_parity: usize,
    /// `s'`: parity symbols over `[ell]` actually sent.
    pub parity_symbols: usize,
    /// `s''`: redundancy runs carrying the parity.
    pub redundancy_rounds: usize,
    pub margin: f64,
    /// Correctable payload symbol errors, `ceil(delta s + c sqrt(s))`.
    pub radius: usize,
}

/// Sizes the parity from the rate formula alone. Use
/// [`RedundancyPlan::with_parity`] once a concrete code is chosen.
///
/// With `ell = 1` there is nothing to protect and the plan is empty.
pub fn plan_redundancy(
    s: usize,
    delta: f64,
    ell: usize,
    q: usize,
    margin: f64,
) -> Result<RedundancyPlan> {
    if q < 3 {
        return Err(Error::param(
            "q",
            q,
            "q >= 3 (parity letters need q - 1 >= 2 nonzero increments)",
        ));
    }
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Error::param("margin", margin, "finite c >= 0"));
    }
    if ell == 0 {
        return Err(Error::param("ell", ell, "ell >= 1"));
    }
    let (rate, formula_parity, radius) = if ell == 1 {
        (1.0, 0, 0)
    } else {
        let rate = c_delta_ell(delta, ell)?;
        let formula = (s as f64 * (1.0 / rate - 1.0)).ceil() as usize;
        let radius = if delta == 0.0 {
            0
        } else {
            (delta * s as f64 + margin * (s as f64).sqrt()).ceil() as usize
        };
        (rate, formula, radius)
    };
    Ok(RedundancyPlan {
        payload_rounds: s,
        delta,
        ell,
        q,
        rate,
        formula_parity,
        parity_symbols: formula_parity,
        redundancy_rounds: redundancy_runs(formula_parity, ell, q),
        margin,
        radius,
    })
}

impl RedundancyPlan {
    /// Raises `s'` to at least `parity` symbols and recomputes `s''`.
    pub fn with_parity(mut self, parity: usize) -> Self {
        self.parity_symbols = self.formula_parity.max(parity);
        self.redundancy_rounds = redundancy_runs(self.parity_symbols, self.ell, self.q);
        self
    }
}

/// Re-encodes 1-based `ell`-ary parity as `s''` 1-based digits over `[q-1]`,
/// most significant first.
pub fn symbols_to_base(parity: &[usize], ell: usize, q: usize) -> Result<Vec<usize>> {
    if let Some(&s) = parity.iter().find(|&&s| s == 0 || s > ell) {
        return Err(Error::param("parity symbol", s, format!("1..={ell}")));
    }
    let mut value = BigUint::zero();
    for &s in parity {
        value = value * ell + (s - 1);
    }
    let runs = redundancy_runs(parity.len(), ell, q);
    let mut digits = vec![1usize; runs];
    let base = BigUint::from(q - 1);
    for d in digits.iter_mut().rev() {
        *d = (&value % &base).to_usize().unwrap() + 1;
        value /= &base;
    }
    Ok(digits)
}

/// Inverse of [`symbols_to_base`] for `parity_len` symbols.
pub fn base_to_symbols(
    barred: &[usize],
    ell: usize,
    q: usize,
    parity_len: usize,
) -> Result<Vec<usize>> {
    if let Some(&d) = barred.iter().find(|&&d| d == 0 || d >= q) {
        return Err(Error::param(
            "redundancy digit",
            d,
            format!("1..={}", q - 1),
        ));
    }
    let mut value = BigUint::zero();
    for &d in barred {
        value = value * (q - 1) + (d - 1);
    }
    let modulus = BigUint::from(ell).pow(parity_len as u32);
    if value >= modulus {
        return Err(Error::Unrecoverable(format!(
            "redundancy runs encode a value beyond {ell}^{parity_len}"
        )));
    }
    let mut symbols = vec![1usize; parity_len];
    let base = BigUint::from(ell);
    for s in symbols.iter_mut().rev() {
        *s = (&value % &base).to_usize().unwrap() + 1;
        value /= &base;
    }
    Ok(symbols)
}

/// Appends one shortest round per digit, stepping the letter by the digit mod `q`.
pub fn append_redundancy(schedule: &Schedule, barred: &[usize], q: usize) -> Result<Schedule> {
    if let Some(&d) = barred.iter().find(|&&d| d == 0 || d >= q) {
        return Err(Error::param(
            "redundancy digit",
            d,
            format!("1..={}", q - 1),
        ));
    }
    let mut out = schedule.clone();
    for &d in barred {
        let letter = (out.last_letter() + d) % q;
        out.push(letter, 1);
    }
    Ok(out)
}

/// Differences of consecutive letters mod `q`; `letters[0]` is the last payload letter.
pub fn extract_redundancy(letters: &[usize], q: usize) -> Result<Vec<usize>> {
    letters
        .windows(2)
        .enumerate()
        .map(|(j, w)| match (w[1] + q - w[0]) % q {
            0 => Err(Error::ZeroDifference { position: j + 1 }),
            d => Ok(d),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    #[default]
    WorstCase,
    Expected,
}

/// Synthesis time needed for `k` user bits at `capacity` bits per time unit,
/// including the parity runs. The expected mode scales the parity term by `alpha`.
pub fn synthesis_time_bound(
    k: f64,
    capacity: f64,
    alpha: f64,
    delta: f64,
    ell: usize,
    q: usize,
    mode: BoundMode,
) -> Result<f64> {
    if capacity.is_nan() || capacity <= 0.0 {
        return Err(Error::param("capacity", capacity, "capacity > 0"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param("alpha", alpha, "0 < alpha <= 1"));
    }
    if q < 3 {
        return Err(Error::param("q", q, "q >= 3"));
    }
    let overhead = if ell == 1 {
        0.0
    } else {
        (1.0 / c_delta_ell(delta, ell)? - 1.0) * (ell as f64).ln() / ((q - 1) as f64).ln()
    };
    let scale = match mode {
        BoundMode::WorstCase => 1.0,
        BoundMode::Expected => alpha,
    };
    Ok(k / capacity * (1.0 + scale * overhead))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_formula() {
        assert_eq!(c_delta_ell(0.0, 4).unwrap(), 1.0);
        let h2 = -(0.02f64 * 0.02f64.log2() + 0.98 * 0.98f64.log2());
        assert!((c_delta_ell(0.02, 2).unwrap() - (1.0 - h2)).abs() < 1e-14);
        assert!((c_delta_ell(0.02, 2).unwrap() - 0.858559).abs() < 1e-6);
        assert!((c_delta_ell(0.02, 4).unwrap() - 0.913430).abs() < 1e-6);
        assert!(c_delta_ell(0.5, 2).is_err());
        assert!(c_delta_ell(0.75, 4).is_err());
        assert!(c_delta_ell(0.7499, 4).unwrap() > 0.0);
    }

    #[test]
    fn plan_sizes() {
        let p = plan_redundancy(1000, 0.02, 2, 4, 3.0).unwrap();
        assert_eq!(p.formula_parity, 165);
        assert_eq!(p.redundancy_rounds, 105);
        let p = plan_redundancy(100, 0.02, 4, 4, 3.0).unwrap();
        assert_eq!(p.formula_parity, 10);
        assert_eq!(p.redundancy_rounds, 13);
        assert_eq!(p.radius, 32);
        let p = plan_redundancy(100, 0.0, 4, 4, 3.0).unwrap();
        assert_eq!((p.parity_symbols, p.redundancy_rounds, p.radius), (0, 0, 0));
        let p = p.with_parity(7);
        assert_eq!((p.parity_symbols, p.redundancy_rounds), (7, 9));
    }

    #[test]
    fn runs_are_exact_ceilings() {
        // log_3 4 and log_2 4 hit integers or near-integers where floats wobble
        assert_eq!(redundancy_runs(2, 4, 4), 3);
        assert_eq!(redundancy_runs(10, 4, 3), 20);
        assert_eq!(redundancy_runs(5, 2, 3), 5);
        assert_eq!(redundancy_runs(0, 4, 4), 0);
        for parity in 1..60 {
            let x = redundancy_runs(parity, 5, 4);
            assert!(BigUint::from(3u32).pow(x as u32) >= BigUint::from(5u32).pow(parity as u32));
            assert!(BigUint::from(3u32).pow(x as u32 - 1) < BigUint::from(5u32).pow(parity as u32));
        }
    }

    #[test]
    fn base_conversion_example() {
        assert_eq!(symbols_to_base(&[3, 1], 4, 4).unwrap(), vec![1, 3, 3]);
        assert_eq!(base_to_symbols(&[1, 3, 3], 4, 4, 2).unwrap(), vec![3, 1]);
        assert_eq!(symbols_to_base(&[1, 1, 1], 2, 4).unwrap(), vec![1, 1]);
        assert!(matches!(
            base_to_symbols(&[3, 3, 3], 4, 4, 2),
            Err(Error::Unrecoverable(_))
        ));
    }

    #[test]
    fn differential_letters() {
        let s = Schedule::new(0);
        let out = append_redundancy(&s, &[1, 3, 2], 4).unwrap();
        let letters: Vec<usize> = out.rounds.iter().map(|r| r.letter).collect();
        assert_eq!(letters, vec![1, 0, 2]);
        assert!(out.rounds.iter().all(|r| r.index == 1));
        assert_eq!(extract_redundancy(&[0, 1, 0, 2], 4).unwrap(), vec![1, 3, 2]);

        let out = append_redundancy(&s, &[3, 3, 3], 4).unwrap();
        let letters: Vec<usize> = out.rounds.iter().map(|r| r.letter).collect();
        assert_eq!(letters, vec![3, 2, 1]);

        assert!(matches!(
            extract_redundancy(&[0, 1, 1], 4),
            Err(Error::ZeroDifference { position: 2 })
        ));
        assert!(append_redundancy(&s, &[4], 4).is_err());
    }

    #[test]
    fn time_bound() {
        let cap = ((3.0 + 21f64.sqrt()) / 2.0).log2();
        for mode in [BoundMode::WorstCase, BoundMode::Expected] {
            assert_eq!(
                synthesis_time_bound(500.0, cap, 0.7, 0.0, 4, 4, mode).unwrap(),
                500.0 / cap
            );
        }
        let worst =
            synthesis_time_bound(1000.0, cap, 0.7, 0.02, 2, 4, BoundMode::WorstCase).unwrap();
        assert!((worst - 574.2).abs() < 0.1, "{worst}");
        let expected =
            synthesis_time_bound(1000.0, cap, 0.7, 0.02, 2, 4, BoundMode::Expected).unwrap();
        assert!(expected < worst);
    }
}
