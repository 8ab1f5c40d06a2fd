//! Achievable-rate curves over a parameter sweep.
//!
//! Every point is an exact computation: design the quantizer, build the
//! uniform-menu graph on its durations, then take capacity, `alpha` and the
//! expected-time rate `cap / (1 + alpha (1/C - 1) log_{q-1} ell)`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{capacity, max_entropic_chain};
use crate::codec::c_delta_ell;
use crate::error::{Error, Result};
use crate::graph::{Alphabet, SynthesisGraph};
use crate::quantizer::{design_binomial, design_poisson, PoissonStop, QuantizerDesign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Binomial,
    Poisson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    P,
    Delta,
    #[serde(rename = "N")]
    Copies,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCurveSpec {
    pub family: Family,
    /// Binomial success probability when not swept.
    pub p: f64,
    pub delta: f64,
    pub copies: usize,
    pub max_duration: f64,
    pub ell_max: usize,
    pub q: usize,
    pub sweep: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub param: f64,
    pub copies: usize,
    pub delta: f64,
    pub max_duration: f64,
    pub ell: Option<usize>,
    pub capacity: Option<f64>,
    pub alpha: Option<f64>,
    pub rate_thm2: Option<f64>,
    /// `ok`, `infeasible` (no design) or `no-code` (`delta` too large for `ell`).
    pub status: String,
}

impl RateCurveSpec {
    fn design(&self, p: f64, delta: f64, copies: usize) -> Result<QuantizerDesign> {
        match self.family {
            Family::Binomial => {
                let m = self.max_duration.floor() as u64;
                Ok(design_binomial(p, delta, copies, m)?.truncated(self.ell_max))
            }
            Family::Poisson => design_poisson(
                delta,
                copies,
                PoissonStop::LevelsWithin {
                    levels: self.ell_max,
                    max_duration: self.max_duration,
                },
            ),
        }
    }

    fn point(&self, value: f64) -> Result<RatePoint> {
        let (mut p, mut delta, mut copies) = (self.p, self.delta, self.copies);
        match self.sweep {
            SweepParam::P => p = value,
            SweepParam::Delta => delta = value,
            SweepParam::Copies => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Error::param("N", value, "positive integer"));
                }
                copies = value as usize;
            }
        }
        let mut point = RatePoint {
            param: value,
            copies,
            delta,
            max_duration: self.max_duration,
            ell: None,
            capacity: None,
            alpha: None,
            rate_thm2: None,
            status: "ok".into(),
        };
        let design = match self.design(p, delta, copies) {
            Ok(d) => d,
            Err(Error::Infeasible(_)) => {
                point.status = "infeasible".into();
                return Ok(point);
            }
            Err(e) => return Err(e),
        };
        let ell = design.ell();
        let alphabet = Alphabet::with_size(self.q)?;
        let graph = SynthesisGraph::uniform(alphabet, &design.durations, self.max_duration)?;
        let cap = capacity(&graph)?;
        let alpha = max_entropic_chain(&graph, &cap).alpha;
        point.ell = Some(ell);
        point.capacity = Some(cap.capacity);
        point.alpha = Some(alpha);
        point.rate_thm2 = if ell == 1 {
            Some(cap.capacity)
        } else {
            match c_delta_ell(delta, ell) {
                Ok(c) => {
                    let overhead = (1.0 / c - 1.0) * (ell as f64).ln() / ((self.q - 1) as f64).ln();
                    Some(cap.capacity / (1.0 + alpha * overhead))
                }
                Err(_) => {
                    point.status = "no-code".into();
                    None
                }
            }
        };
        Ok(point)
    }
}

/// One row per sweep value, sorted by the swept parameter. Runs on the
/// current rayon pool.
pub fn rate_curve(spec: &RateCurveSpec) -> Result<Vec<RatePoint>> {
    if spec.q < 3 {
        return Err(Error::param("q", spec.q, "q >= 3"));
    }
    if spec.ell_max < 1 {
        return Err(Error::param("ell_max", spec.ell_max, "ell_max >= 1"));
    }
    if spec.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::param(
            "sweep",
            format!("{:?}", spec.values),
            "finite values",
        ));
    }
    let mut values = spec.values.clone();
    values.sort_by(f64::total_cmp);
    values.par_iter().map(|&v| spec.point(v)).collect()
}

/// Rounds to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap()
}

pub const CSV_HEADER: &str = "param,N,delta,M,ell,capacity_bits_per_time,alpha,rate_thm2,status";

pub fn rate_curve_csv(points: &[RatePoint]) -> String {
    let opt = |x: Option<f64>| x.map(|v| sig9(v).to_string()).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            sig9(p.param),
            p.copies,
            sig9(p.delta),
            sig9(p.max_duration),
            p.ell.map(|l| l.to_string()).unwrap_or_default(),
            opt(p.capacity),
            opt(p.alpha),
            opt(p.rate_thm2),
            p.status
        )
        .unwrap();
    }
    out
}

/// `lambda_1 = ln(2/delta) / N` for each copy count.
pub fn lambda1_table(delta: f64, copies: &[usize]) -> Result<Vec<(usize, f64)>> {
    copies
        .iter()
        .map(|&n| {
            let d = design_poisson(delta, n, PoissonStop::Levels(1))?;
            let crate::quantizer::RunLengthModel::Poisson { lambdas } = d.model else {
                unreachable!()
            };
            Ok((n, lambdas[0]))
        })
        .collect()
}

pub fn lambda1_csv(delta: f64, table: &[(usize, f64)]) -> String {
    let mut out = String::from("N,delta,lambda1\n");
    for (n, l) in table {
        writeln!(out, "{n},{},{}", sig9(delta), sig9(*l)).unwrap();
    }
    out
}
