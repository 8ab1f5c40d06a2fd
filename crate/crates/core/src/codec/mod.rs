//! From user bits to synthesis schedules and back.

mod bits;
mod ecc;
mod enumerative;
mod file;
mod pipeline;
mod redundancy;

pub use bits::{biguint_to_bits, bits_from_hex, bits_to_biguint, bits_to_hex, bytes_to_bits};
pub use ecc::{EccCode, EccKind, ReedSolomon, Repetition};
pub use enumerative::{decode_payload, encode_payload, EnumerativeCodec};
pub use file::{parse_strand, write_strand};
pub use pipeline::{
    budget_for_rounds, plan_with_code, EncodedStrand, Pipeline, PipelineConfig, StrandHeader,
};
pub use redundancy::{
    append_redundancy, base_to_symbols, c_delta_ell, extract_redundancy, plan_redundancy,
    redundancy_runs, symbols_to_base, synthesis_time_bound, BoundMode, RedundancyPlan,
};
