//! Cipher container layout (all integers big-endian):
//!
//! | bytes | field            |
//! |-------|------------------|
//! | 4     | magic `HFSA`     |
//! | 1     | version `0x01`   |
//! | 1     | N                |
//! | 1     | Fmax             |
//! | 4     | p0 numerator     |
//! | 2     | jump numerator   |
//! | 8     | plaintext bits   |
//! | 8     | ciphertext bits  |
//! | ...   | payload, MSB-first, zero-padded to a byte |

use hfsac_core::bits::{pack_msb, unpack_msb};
use hfsac_core::fsm::CoderParams;

pub const MAGIC: [u8; 4] = *b"HFSA";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 29;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ContainerError {
    #[error("not an HFSA container (bad magic)")]
    BadMagic,
    #[error("unsupported container version {0:#04x}")]
    BadVersion(u8),
    #[error("truncated stream")]
    Truncated,
    #[error("container has {0} unexpected trailing bytes")]
    TrailingBytes(usize),
    #[error("container padding bits are not zero")]
    NonZeroPadding,
    #[error("container header: {0}")]
    Params(hfsac_core::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherContainer {
    pub params: CoderParams,
    pub plain_bit_len: u64,
    pub cipher: Vec<bool>,
}

impl CipherContainer {
    pub fn to_bytes(&self) -> Vec<u8> {
        let p = &self.params;
        let mut out = Vec::with_capacity(HEADER_LEN + self.cipher.len().div_ceil(8));
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(p.n_bits());
        out.push(p.f_max());
        out.extend_from_slice(&p.p0_num().to_be_bytes());
        out.extend_from_slice(&p.jump_q_num().to_be_bytes());
        out.extend_from_slice(&self.plain_bit_len.to_be_bytes());
        out.extend_from_slice(&(self.cipher.len() as u64).to_be_bytes());
        out.extend(pack_msb(&self.cipher));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ContainerError> {
        if bytes.len() < 4 {
            return Err(ContainerError::Truncated);
        }
        if bytes[..4] != MAGIC {
            return Err(ContainerError::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(ContainerError::Truncated);
        }
        if bytes[4] != VERSION {
            return Err(ContainerError::BadVersion(bytes[4]));
        }
        let be = |range: std::ops::Range<usize>| {
            bytes[range]
                .iter()
                .fold(0u64, |acc, &b| (acc << 8) | b as u64)
        };
        let n_bits = bytes[5];
        let f_max = bytes[6];
        let p0_num = be(7..11) as u32;
        let jump = be(11..13);
        let plain_bit_len = be(13..21);
        let cipher_bit_len = be(21..29);
        let jump = u16::try_from(jump)
            .map_err(|_| ContainerError::Params(hfsac_core::Error::InvalidParams("jump")))?;
        let params =
            CoderParams::new(n_bits, p0_num, f_max, jump).map_err(ContainerError::Params)?;

        let payload = &bytes[HEADER_LEN..];
        let needed = cipher_bit_len.div_ceil(8);
        if (payload.len() as u64) < needed {
            return Err(ContainerError::Truncated);
        }
        if payload.len() as u64 > needed {
            return Err(ContainerError::TrailingBytes(
                payload.len() - needed as usize,
            ));
        }
        let mut cipher = unpack_msb(payload);
        if cipher[cipher_bit_len as usize..].iter().any(|&b| b) {
            return Err(ContainerError::NonZeroPadding);
        }
        cipher.truncate(cipher_bit_len as usize);
        Ok(CipherContainer {
            params,
            plain_bit_len,
            cipher,
        })
    }
}
