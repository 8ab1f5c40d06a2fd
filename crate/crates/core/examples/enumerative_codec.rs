// Bits to schedules and back with the enumerative codec.

use num_bigint::BigUint;
use prdna::codec::{bits_from_hex, bits_to_hex, EnumerativeCodec};
use prdna::graph::{Alphabet, SynthesisGraph};

fn run_example() -> prdna::Result<()> {
    let g = SynthesisGraph::uniform(Alphabet::dna(), &[1.0, 2.0], 2.0)?;
    let codec = EnumerativeCodec::new(&g, 40)?;
    println!("{} schedules of total time 40 after an A", codec.count(0));
    println!("payload capacity {} bits", codec.payload_capacity(0));

    let bits = bits_from_hex("c0ffee15600d")?;
    let schedule = codec.encode(&bits, 0)?;
    let rounds: Vec<String> = schedule
        .rounds
        .iter()
        .map(|r| format!("{}{}", g.alphabet().name(r.letter), r.index))
        .collect();
    println!("{}", rounds.join(" "));
    println!("rank {}", codec.rank(&schedule)?);
    println!(
        "decoded {}",
        bits_to_hex(&codec.decode(&schedule, bits.len())?)
    );

    let first = codec.unrank(0, &BigUint::from(0u32))?;
    println!("smallest schedule has {} rounds", first.len());
    Ok(())
}

fn main() -> prdna::Result<()> {
    run_example()
}
