use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// A `CoderParams` field is outside its admissible range.
    InvalidParams(&'static str),
    /// `split_interval` was handed an interval narrower than two.
    IntervalTooNarrow { low: u32, high: u32 },
    /// Machine construction exceeded the state ceiling.
    StateExplosion {
        n_bits: u8,
        p0_num: u32,
        f_max: u8,
        limit: usize,
    },
    /// A chain of mute transitions did not terminate.
    NonEmittingCycle { state: usize },
    /// The arithmetic decoder ran out of code bits.
    TruncatedCode,
    /// An HFAC stream did not parse against the code tables.
    CorruptStream,
    /// Decryption parsed bits inconsistent with the key.
    WrongKey,
    /// Decryption ran out of cipher bits.
    TruncatedStream,
    /// A statistic was asked for on an input that cannot support it.
    Degenerate(&'static str),
    /// Two images with different dimensions were compared.
    DimensionMismatch,
    /// The input is too short for the requested test.
    TooShort { needed: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParams(what) => write!(f, "invalid coder parameters: {what}"),
            Error::IntervalTooNarrow { low, high } => {
                write!(f, "interval too narrow to split: [{low}, {high})")
            }
            Error::StateExplosion {
                n_bits,
                p0_num,
                f_max,
                limit,
            } => write!(
                f,
                "state explosion: N={n_bits}, p0_num={p0_num}, Fmax={f_max} exceeds {limit} states"
            ),
            Error::NonEmittingCycle { state } => {
                write!(f, "non-emitting cycle reached from state {state}")
            }
            Error::TruncatedCode => f.write_str("truncated code"),
            Error::CorruptStream => f.write_str("corrupt HFAC stream"),
            Error::WrongKey => f.write_str("wrong key or corrupt stream"),
            Error::TruncatedStream => f.write_str("truncated stream"),
            Error::Degenerate(what) => write!(f, "degenerate sequence: {what}"),
            Error::DimensionMismatch => f.write_str("image dimensions differ"),
            Error::TooShort { needed, got } => {
                write!(f, "input too short: need {needed} bits, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}
