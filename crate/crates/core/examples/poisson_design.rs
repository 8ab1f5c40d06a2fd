// Poisson quantizers: first rate, thresholds on the copy mean, and the
// effect of more copies.

use prdna::quantizer::{design_poisson, PoissonStop};
use prdna::sim::lambda1_table;

fn run_example() -> prdna::Result<()> {
    let design = design_poisson(0.02, 3, PoissonStop::Levels(5))?;
    print!("{}", design.table());
    for (i, err) in design.exact_error_probabilities().iter().enumerate() {
        println!("index {}: error {err:.3e}", i + 1);
    }

    let within = design_poisson(
        0.02,
        1,
        PoissonStop::LevelsWithin {
            levels: 10,
            max_duration: 10.0,
        },
    )?;
    println!("levels with durations up to 10: {}", within.ell());

    for (n, lambda1) in lambda1_table(0.02, &[1, 2, 5, 10])? {
        println!("N = {n}: lambda_1 = {lambda1:.6}");
    }
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
