// Achievable rate as the synthesis success probability grows.

use prdna::sim::{rate_curve, rate_curve_csv, Family, RateCurveSpec, SweepParam};

fn run_example() -> prdna::Result<()> {
    let spec = RateCurveSpec {
        family: Family::Binomial,
        p: 0.5,
        delta: 0.02,
        copies: 5,
        max_duration: 10.0,
        ell_max: 10,
        q: 4,
        sweep: SweepParam::P,
        values: vec![0.3, 0.5, 0.7, 0.9, 0.95],
    };
    let points = rate_curve(&spec)?;
    print!("{}", rate_curve_csv(&points));
    let best = points
        .iter()
        .filter_map(|p| p.rate_thm2)
        .fold(0.0, f64::max);
    println!("best rate {best:.4} vs log2(3) = {:.4}", 3f64.log2());
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
