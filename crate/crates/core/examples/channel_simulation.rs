// One strand through the multi-copy channel, then a small batch of trials.

use prdna::codec::{budget_for_rounds, Pipeline, PipelineConfig};
use prdna::graph::{Alphabet, SynthesisGraph};
use prdna::quantizer::design_binomial;
use prdna::sim::{simulate, synthesize, SimulationConfig};

fn run_example() -> prdna::Result<()> {
    let design = design_binomial(0.5, 0.02, 5, 10)?;
    let g = SynthesisGraph::uniform(Alphabet::dna(), &design.durations, 10.0)?;
    let budget = budget_for_rounds(&g, 100)?;
    let pipeline = Pipeline::new(&g, budget, PipelineConfig::default())?;

    let bits = vec![true; pipeline.payload_capacity(0)];
    let strand = pipeline.encode(&bits, 0)?;
    let trace = synthesize(&strand.schedule, &design, 11)?;
    let misread = trace
        .decisions
        .iter()
        .zip(&strand.schedule.rounds)
        .filter(|(d, r)| d.index != r.index)
        .count();
    println!(
        "{} rounds, {misread} misread, {} lost in every copy",
        trace.decisions.len(),
        trace.full_deletions.len()
    );

    let config = SimulationConfig {
        trials: 20,
        seed: 11,
        start: 0,
        payload: None,
        strict_framing: false,
        jobs: 1,
    };
    let report = simulate(&pipeline, &design, &config)?;
    println!(
        "success rate {} over {} trials",
        report.success_rate, report.trials
    );
    for e in &report.index_errors {
        println!(
            "  index {}: {} of {} rounds misread (exact {:.4})",
            e.index, e.errors, e.rounds, e.exact
        );
    }
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
