//! Bit-string helpers. Bits are `bool`s, most-significant first when packed.

use alloc::string::String;
use alloc::vec::Vec;

/// Packs bits into bytes, most-significant bit first, zero-padding the tail.
pub fn pack_msb(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
        })
        .collect()
}

/// Expands bytes into bits, most-significant bit first.
pub fn unpack_msb(bytes: &[u8]) -> Vec<bool> {
    let mut out = Vec::with_capacity(bytes.len() * 8);
    for &byte in bytes {
        for i in (0..8).rev() {
            out.push((byte >> i) & 1 == 1);
        }
    }
    out
}

/// Parses a string of `'0'`/`'1'` characters. Any other character yields `None`.
pub fn parse(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
