//! 64-bit keys as 16 lowercase hex characters.

use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KeyError {
    #[error("key must be exactly 16 lowercase hex characters")]
    Format,
}

pub fn parse_hex(s: &str) -> Result<u64, KeyError> {
    if s.len() != 16
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return Err(KeyError::Format);
    }
    u64::from_str_radix(s, 16).map_err(|_| KeyError::Format)
}

/// Key file content: the hex string with an optional single trailing newline.
pub fn parse_file(content: &str) -> Result<u64, KeyError> {
    parse_hex(content.strip_suffix('\n').unwrap_or(content))
}

pub fn to_hex(key: u64) -> String {
    let mut s = String::with_capacity(17);
    write!(s, "{key:016x}").unwrap();
    s
}

/// A fresh key from the operating system's entropy source.
pub fn generate() -> u64 {
    use rand::TryRngCore;
    rand::rngs::OsRng
        .try_next_u64()
        .expect("OS entropy source unavailable")
}
