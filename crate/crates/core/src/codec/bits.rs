//! Bit strings as big-endian integers, and their hex spelling.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Most significant bit first.
pub fn bits_to_biguint(bits: &[bool]) -> BigUint {
    let mut v = BigUint::zero();
    for &b in bits {
        v <<= 1u32;
        if b {
            v |= BigUint::from(1u32);
        }
    }
    v
}

/// The low `len` bits of `value`, most significant first.
pub fn biguint_to_bits(value: &BigUint, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| value.bit(i as u64)).collect()
}

/// Four bits per hex digit, most significant first. An optional `0x` prefix is allowed.
pub fn bits_from_hex(s: &str) -> Result<Vec<bool>> {
    let s = s.trim();
    let s = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    let mut bits = Vec::with_capacity(4 * s.len());
    for c in s.chars() {
        let d = c
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("{c:?} is not a hex digit")))?;
        bits.extend((0..4).rev().map(|i| d >> i & 1 == 1));
    }
    Ok(bits)
}

/// Pads on the right to a whole number of nibbles.
pub fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|c| {
            let d = c
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &b)| acc | (b as u32) << (3 - i));
            char::from_digit(d, 16).unwrap()
        })
        .collect()
}

pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |i| b >> i & 1 == 1))
        .collect()
}
