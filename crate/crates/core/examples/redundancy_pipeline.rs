// Payload, parity and differential letters: encode, corrupt, decode.

use prdna::codec::{bits_from_hex, bits_to_hex, EccKind, Pipeline, PipelineConfig};
use prdna::graph::{Alphabet, SynthesisGraph};

fn run_example() -> prdna::Result<()> {
    let g = SynthesisGraph::uniform(Alphabet::dna(), &[2.0, 6.0], 10.0)?;
    for ecc in [EccKind::ReedSolomon, EccKind::Repetition] {
        let pipeline = Pipeline::new(
            &g,
            400,
            PipelineConfig {
                ecc,
                ..PipelineConfig::default()
            },
        )?;
        let bits = bits_from_hex("0123456789abcdeffedcba9876543210")?;
        let strand = pipeline.encode(&bits, 0)?;
        let h = &strand.header;
        let (plan, _) = pipeline.plan(h.payload_rounds)?;
        println!(
            "{ecc:?}: s = {}, parity symbols {}, parity runs {}, radius {}, synthesis time {}",
            h.payload_rounds,
            plan.parity_symbols,
            h.redundancy_rounds,
            plan.radius,
            strand.synthesis_time(&g)
        );

        let mut noisy = strand.clone();
        for r in noisy
            .schedule
            .rounds
            .iter_mut()
            .take(h.payload_rounds)
            .step_by(7)
            .take(plan.radius)
        {
            r.index = 3 - r.index;
        }
        println!(
            "  after {} index flips: {}",
            plan.radius,
            bits_to_hex(&pipeline.decode(&noisy)?)
        );
    }
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
