// Capacity and max-entropic chain of a few synthesis graphs.

use prdna::capacity::{capacity, max_entropic_chain};
use prdna::graph::{Alphabet, SynthesisGraph};

fn run_example() -> prdna::Result<()> {
    for menu in [&[1.0][..], &[1.0, 2.0], &[2.0, 6.0], &[1.5, 2.5]] {
        let g = SynthesisGraph::uniform(Alphabet::dna(), menu, 10.0)?;
        let cap = capacity(&g)?;
        let chain = max_entropic_chain(&g, &cap);
        println!(
            "menu {menu:?}: {:.6} bits per time unit, alpha {:.4}, mean round {:.4}",
            cap.capacity, chain.alpha, chain.mean_round_duration
        );
        for e in &chain.edge_probabilities[0] {
            println!(
                "  A -> {} for {} units: {:.4}",
                g.alphabet().name(e.to),
                e.duration,
                e.probability
            );
        }
    }
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
