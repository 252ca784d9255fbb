//! The `hfsac` subcommands and their exit-code mapping.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hfsac_core::analysis::{analyze, bench_row, AnalysisConfig};
use hfsac_core::bits::{pack_msb, unpack_msb};
use hfsac_core::crypto::{decrypt, encrypt, KeySchedule};
use hfsac_core::fsm::CoderParams;

use crate::container::{CipherContainer, ContainerError};
use crate::key::{self, KeyError};
use crate::pgm::{self, PgmError};
use crate::report::{self, Format};
use crate::{build_codec, selftest};

/// Seed of the i.i.d. source used by `bench`.
pub const BENCH_SEED: u64 = 7;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Container(#[from] ContainerError),
    #[error(transparent)]
    Pgm(#[from] PgmError),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error(transparent)]
    Codec(#[from] hfsac_core::Error),
    #[error("selftest failed ({0} checks)")]
    Selftest(usize),
}

impl CliError {
    /// 1 usage, 2 data/format, 3 key/decrypt.
    pub fn exit_code(&self) -> u8 {
        use hfsac_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Codec(E::InvalidParams(_)) => 1,
            CliError::Key(_) | CliError::Codec(E::WrongKey | E::TruncatedStream) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hfsac",
    version,
    about = "Finite-state arithmetic coding with keyed Huffman outputs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    /// Coder precision in bits (3..=16).
    #[arg(long)]
    pub n: u8,
    /// P(0) numerator over 2^n.
    #[arg(long = "p0-num")]
    pub p0_num: u32,
    /// Maximum follow count (0..=15).
    #[arg(long)]
    pub fmax: u8,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct KeyArgs {
    /// Key as 16 lowercase hex characters.
    #[arg(long)]
    pub key: Option<String>,
    /// File holding the hex key.
    #[arg(long = "key-file")]
    pub key_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DataFormat {
    Bits,
    Pgm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a fresh random key.
    Keygen {
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump the reduced machine with its Huffman outputs.
    Tables {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Encrypt a file into a cipher container.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[command(flatten)]
        codec: CodecArgs,
        /// Jump probability numerator over 256.
        #[arg(long = "jump-prob", default_value_t = 230, value_parser = clap::value_parser!(u16).range(0..=256))]
        jump_prob: u16,
        #[arg(long, value_enum, default_value_t = DataFormat::Bits)]
        format: DataFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a cipher container.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long, value_enum, default_value_t = DataFormat::Bits)]
        format: DataFormat,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compression rates of AC, FSAC and HFAC on seeded i.i.d. bits (CSV).
    Bench {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        fmax: u8,
        /// Comma-separated P(0) values.
        #[arg(long, value_delimiter = ',', required = true)]
        p0: Vec<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        bits: usize,
    },
    /// Run the cipher metric suite on a PGM image.
    Analyze {
        #[arg(long)]
        plain: PathBuf,
        #[command(flatten)]
        key: KeyArgs,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long = "jump-prob", default_value_t = 230, value_parser = clap::value_parser!(u16).range(0..=256))]
        jump_prob: u16,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in invariant sweep.
    Selftest {
        #[arg(long = "corrupt-table", hide = true)]
        corrupt_table: bool,
    },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_key(args: &KeyArgs) -> Result<u64, CliError> {
    match (&args.key, &args.key_file) {
        (Some(hex), _) => Ok(key::parse_hex(hex)?),
        (None, Some(path)) => {
            let bytes = read(path)?;
            let text = std::str::from_utf8(&bytes).map_err(|_| KeyError::Format)?;
            Ok(key::parse_file(text)?)
        }
        (None, None) => Err(CliError::Usage(
            "a key is required (--key or --key-file)".into(),
        )),
    }
}

fn params(codec: &CodecArgs, jump: u16) -> Result<CoderParams, CliError> {
    Ok(CoderParams::new(codec.n, codec.p0_num, codec.fmax, jump)?)
}

/// Runs one command, writing its report (if any) to `stdout`.
pub fn run(command: Command, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    let mut emit = |text: &str| {
        stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    };
    match command {
        Command::Keygen { out } => write(
            &out,
            format!("{}\n", key::to_hex(key::generate())).as_bytes(),
        ),
        Command::Tables { codec, format } => {
            let codec = build_codec(params(&codec, 0)?)?;
            emit(&report::code_table(&codec, format))
        }
        Command::Encode {
            input,
            key,
            codec,
            jump_prob,
            format,
            out,
        } => {
            let seed = load_key(&key)?;
            let params = params(&codec, jump_prob)?;
            let raw = read(&input)?;
            let bytes = match format {
                DataFormat::Bits => raw,
                DataFormat::Pgm => pgm::read(&raw)?.into_pixels(),
            };
            let plain = unpack_msb(&bytes);
            let codec = build_codec(params)?;
            let (cipher, _) = encrypt(&plain, &codec, KeySchedule::new(seed, jump_prob));
            let container = CipherContainer {
                params,
                plain_bit_len: plain.len() as u64,
                cipher,
            };
            write(&out, &container.to_bytes())
        }
        Command::Decode {
            input,
            key,
            format,
            width,
            height,
            out,
        } => {
            let seed = load_key(&key)?;
            let dims = match (format, width, height) {
                (DataFormat::Bits, _, _) => None,
                (DataFormat::Pgm, Some(w), Some(h)) => Some((w, h)),
                (DataFormat::Pgm, _, _) => {
                    return Err(CliError::Usage(
                        "pgm decoding needs --width and --height".into(),
                    ))
                }
            };
            let container = CipherContainer::from_bytes(&read(&input)?)?;
            let n_bits =
                usize::try_from(container.plain_bit_len).map_err(|_| ContainerError::Truncated)?;
            let codec = build_codec(container.params)?;
            let schedule = KeySchedule::new(seed, container.params.jump_q_num());
            let plain = pack_msb(&decrypt(&container.cipher, &codec, schedule, n_bits)?);
            let bytes = match dims {
                None => plain,
                Some((w, h)) => {
                    let img = hfsac_core::analysis::GrayImage::new(w, h, plain).map_err(|_| {
                        PgmError::PixelCount {
                            expected: w * h,
                            got: n_bits.div_ceil(8),
                        }
                    })?;
                    pgm::write(&img)
                }
            };
            write(&out, &bytes)
        }
        Command::Bench { n, fmax, p0, bits } => {
            if let Some(bad) = p0.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                return Err(CliError::Usage(format!("p0 must lie in [0, 1], got {bad}")));
            }
            let rows = p0
                .iter()
                .map(|&p| bench_row(n, fmax, p, bits, BENCH_SEED))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&report::bench_csv(&rows))
        }
        Command::Analyze {
            plain,
            key,
            codec,
            jump_prob,
            format,
        } => {
            let seed = load_key(&key)?;
            let params = params(&codec, jump_prob)?;
            let img = pgm::read(&read(&plain)?)?;
            let codec = build_codec(params)?;
            let metrics = analyze(&img, &codec, &AnalysisConfig::new(seed))?;
            emit(&report::metrics(&metrics, format))
        }
        Command::Selftest { corrupt_table } => {
            let result = selftest::run(corrupt_table);
            emit(&result.render())?;
            match result.failures() {
                0 => Ok(()),
                n => Err(CliError::Selftest(n)),
            }
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli.command, &mut lock) {
        Ok(()) => {
            let _ = lock.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
