//! Plain-text strand files.
//!
//! ```text
//! 4 2 40 27 30 0.02
//! # start A
//! # margin 3
//! # payload_bits 64
//! # ecc reed-solomon
//! C 1
//! G 2
//! ...
//! ```
//!
//! The first non-comment line holds `q ell T s s_dd delta`. `# key value`
//! lines carry the rest of the header; other comments are ignored. Each
//! remaining line is one round: letter name and 1-based duration index.

use std::fmt::Write;

use super::pipeline::{EncodedStrand, StrandHeader};
use crate::error::{Error, Result};
use crate::graph::Alphabet;
use crate::schedule::Schedule;

pub fn write_strand(strand: &EncodedStrand, alphabet: &Alphabet) -> String {
    let h = &strand.header;
    let mut out = String::new();
    writeln!(
        out,
        "{} {} {} {} {} {}",
        h.q, h.ell, h.budget, h.payload_rounds, h.redundancy_rounds, h.delta
    )
    .unwrap();
    writeln!(out, "# start {}", alphabet.name(h.start)).unwrap();
    writeln!(out, "# margin {}", h.margin).unwrap();
    writeln!(out, "# payload_bits {}", h.payload_bits).unwrap();
    let ecc = serde_json::to_value(h.ecc).unwrap();
    writeln!(out, "# ecc {}", ecc.as_str().unwrap()).unwrap();
    for r in &strand.schedule.rounds {
        writeln!(out, "{} {}", alphabet.name(r.letter), r.index).unwrap();
    }
    out
}

fn field<T: std::str::FromStr>(value: Option<&str>, what: &str, line: usize) -> Result<T> {
    let v = value.ok_or_else(|| Error::Parse(format!("line {line}: missing {what}")))?;
    v.parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {what} {v:?}")))
}

pub fn parse_strand(text: &str, alphabet: &Alphabet) -> Result<EncodedStrand> {
    let mut numbers: Option<(usize, usize, u64, usize, usize, f64)> = None;
    let (mut start, mut margin, mut payload_bits, mut ecc) = (None, 3.0, None, Default::default());
    let mut rounds = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if let Some(comment) = raw.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            match parts.next() {
                Some("start") => {
                    let name = parts.next().unwrap_or("");
                    start = Some(alphabet.index_of(name).ok_or_else(|| {
                        Error::Parse(format!("line {line}: unknown start letter {name:?}"))
                    })?);
                }
                Some("margin") => margin = field(parts.next(), "margin", line)?,
                Some("payload_bits") => {
                    payload_bits = Some(field(parts.next(), "payload_bits", line)?)
                }
                Some("ecc") => ecc = field(parts.next(), "ecc", line)?,
                _ => {}
            }
            continue;
        }
        let mut parts = raw.split_whitespace();
        if numbers.is_none() {
            numbers = Some((
                field(parts.next(), "q", line)?,
                field(parts.next(), "ell", line)?,
                field(parts.next(), "T", line)?,
                field(parts.next(), "s", line)?,
                field(parts.next(), "s_dd", line)?,
                field(parts.next(), "delta", line)?,
            ));
        } else {
            let name = parts.next().unwrap_or("");
            let letter = alphabet
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("line {line}: unknown letter {name:?}")))?;
            let index = field(parts.next(), "duration index", line)?;
            rounds.push(crate::schedule::Round { letter, index });
        }
        if parts.next().is_some() {
            return Err(Error::Parse(format!("line {line}: trailing fields")));
        }
    }
    let (q, ell, budget, payload_rounds, redundancy_rounds, delta) =
        numbers.ok_or_else(|| Error::Parse("missing header line `q ell T s s_dd delta`".into()))?;
    if q != alphabet.size() {
        return Err(Error::Parse(format!(
            "header q = {q} but the alphabet has {} letters",
            alphabet.size()
        )));
    }
    let start = start.ok_or_else(|| Error::Parse("missing `# start` line".into()))?;
    let payload_bits =
        payload_bits.ok_or_else(|| Error::Parse("missing `# payload_bits` line".into()))?;
    Ok(EncodedStrand {
        header: StrandHeader {
            q,
            ell,
            budget,
            payload_rounds,
            redundancy_rounds,
            delta,
            start,
            margin,
            payload_bits,
            ecc,
        },
        schedule: Schedule { start, rounds },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::pipeline::{Pipeline, PipelineConfig};
    use crate::graph::SynthesisGraph;

    #[test]
    fn text_roundtrip() {
        let g = SynthesisGraph::uniform(Alphabet::dna(), &[1.0, 2.0], 10.0).unwrap();
        let p = Pipeline::new(&g, 20, PipelineConfig::default()).unwrap();
        let strand = p
            .encode(&[true, false, false, true, true, false, true], 3)
            .unwrap();
        let text = write_strand(&strand, g.alphabet());
        assert!(text.starts_with(&format!("4 2 20 {} ", strand.header.payload_rounds)));
        let back = parse_strand(&text, g.alphabet()).unwrap();
        assert_eq!(back, strand);
        let json = serde_json::to_string(&strand).unwrap();
        assert_eq!(
            serde_json::from_str::<EncodedStrand>(&json).unwrap(),
            strand
        );
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::dna();
        assert!(parse_strand("", &a).is_err());
        assert!(parse_strand("4 2 3 1 0 0.1\n# payload_bits 1\nC 1\n", &a).is_err());
        assert!(parse_strand("4 2 3 1 0 0.1\n# start A\n# payload_bits 1\nX 1\n", &a).is_err());
        assert!(parse_strand("3 2 3 1 0 0.1\n# start A\n# payload_bits 1\n", &a).is_err());
        let ok = parse_strand("4 2 1 1 0 0.1\n# start A\n# payload_bits 0\nC 1\n", &a).unwrap();
        assert_eq!(ok.schedule.rounds.len(), 1);
    }
}
