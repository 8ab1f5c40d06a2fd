// Binomial quantizer for five copies and its exact error profile.

use prdna::quantizer::design_binomial;

fn run_example() -> prdna::Result<()> {
    let design = design_binomial(0.5, 0.02, 5, 10)?;
    print!("{}", design.table());

    // Five copies of a round of duration 6 that came out a little short.
    let decision = design.quantize(&[3, 2, 4, 3, 5]);
    println!("observed sum 17 -> index {}", decision.index);
    let lost = design.quantize(&[0, 0, 0, 0, 0]);
    println!(
        "all copies empty -> index {}, low confidence {}",
        lost.index, lost.low_confidence
    );

    for p in [0.3, 0.7, 0.9] {
        let d = design_binomial(p, 0.02, 5, 10)?;
        println!("p = {p}: durations {:?}", d.durations);
    }
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
