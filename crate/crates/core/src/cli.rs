//! Command-line surface.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse/schema error, 3 an entry
//! had no solution, 4 an entry was ambiguous, 5 a check bit failed. When
//! several entries fail, the first failing entry decides the code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amplitude::{AmplitudeConvention, RepPolynomial};
use crate::arity::{enumerate_arities, invariant_i, invariant_j, params_for_arity, parametric_family};
use crate::arity::{rings_with_additive_arity, rings_with_parameter};
use crate::crypto::mult::{DEFAULT_B_MAX, DEFAULT_MULT_ARITY};
use crate::crypto::sum::DEFAULT_M_MAX;
use crate::crypto::{decrypt_mult, decrypt_sum, encrypt_mult, encrypt_sum, Decryption, EntryStatus, Mode};
use crate::crypto::{MultKey, SumKey};
use crate::error::Error;
use crate::signal::{synthesize, WaveKind, WaveformSpecies};
use crate::wire::{CiphertextFile, KeyFile, RingSelectionFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSOLVED: i32 = 3;
pub const EXIT_AMBIGUOUS: i32 = 4;
pub const EXIT_CHECK_BIT: i32 = 5;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "POLYRING_THREADS";

const DEFAULT_SUM_RING_B_MAX: u64 = 64;
const RING_N_MAX: u64 = 100;

#[derive(Parser, Debug)]
#[command(name = "polyring", version, about = "Polyadic integer rings and amplitude encryption")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sum,
    Mult,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sum => Mode::Sum,
            ModeArg::Mult => Mode::Mult,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the valid arity pairs (m,n) of a class [[a]]_b.
    Ring {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long, default_value_t = 100)]
        m_max: u64,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
    /// List the classes (a,b) carrying a given arity pair.
    Params {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        b_max: u64,
    },
    /// Write a key file.
    Keygen {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated polyadic powers (3 for sum, 2 for mult).
        #[arg(long, value_delimiter = ',')]
        powers: Option<Vec<u64>>,
        /// Comma-separated coefficients of k_j, ascending degree.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        poly: Option<Vec<BigInt>>,
        /// Multiplicative arity (mult mode).
        #[arg(long)]
        n: Option<u64>,
        /// Amplitude convention (mult mode).
        #[arg(long)]
        convention: Option<String>,
        /// Search bound: m_max (sum) or b_max (mult).
        #[arg(long)]
        bounds: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Choose one ring per plaintext entry.
    Rings {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        plaintext: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest modulus b to draw from (sum default: max(64, m - 1); mult default: key b_max).
        #[arg(long)]
        b_max: Option<u64>,
        /// Read the plaintext as raw bytes, byte v becoming v + 2.
        #[arg(long)]
        text: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a plaintext with a key and a ring selection.
    Encrypt {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        rings: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        text: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the plaintext; exits 3/4/5 on an unsolved, ambiguous or check-bit failure.
    Decrypt {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        text: bool,
    },
    /// Sample a quantized signal A f(t) to CSV.
    Signal {
        #[arg(long)]
        species: String,
        #[arg(long, allow_hyphen_values = true)]
        amplitude: BigInt,
        /// Samples per unit time.
        #[arg(long)]
        rate: u64,
        /// Rational duration such as 2 or 3/2.
        #[arg(long)]
        duration: String,
        #[arg(long, default_value = "1")]
        frequency: String,
        #[arg(long, default_value = "0")]
        phase: String,
        #[arg(long, default_value_t = 1)]
        index: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
    Entries { code: i32, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Parse(_) | Error::Schema(_) | Error::Version(_)) => EXIT_PARSE,
            Failure::Lib(_) | Failure::Io(_) => EXIT_OTHER,
            Failure::Entries { code, .. } => *code,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(s) => f.write_str(s),
            Failure::Entries { message, .. } => f.write_str(message),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.code()
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Ring { a, b, m_max, n_max } => cmd_ring(&a, &b, m_max, n_max, out),
        Command::Params { m, n, b_max } => cmd_params(m, n, b_max, out),
        Command::Keygen { mode, seed, powers, poly, n, convention, bounds, out: path } => {
            let key = keygen(mode.into(), seed, powers, poly, n, convention, bounds)?;
            write_file(&path, &key.encode())?;
            writeln!(out, "wrote {} key to {}", key.mode(), path.display()).map_err(io)
        }
        Command::Rings { mode, plaintext, key, seed, b_max, text, out: path } => {
            let key = load_key(&key, mode.into())?;
            let plain = read_plaintext(&plaintext, text)?;
            let sel = choose_rings(&key, &plain, seed, b_max)?;
            write_file(&path, &sel.encode())?;
            writeln!(out, "wrote {} ring(s) to {}", sel.entries.len(), path.display()).map_err(io)
        }
        Command::Encrypt { mode, key, rings, input, text, out: path } => {
            let key = load_key(&key, mode.into())?;
            let sel = RingSelectionFile::decode(&read_file(&rings)?)?;
            let plain = read_plaintext(&input, text)?;
            let file = encrypt(&key, &plain, &sel)?;
            write_file(&path, &file.encode())?;
            writeln!(out, "wrote {} entr(ies) to {}", file.entries.len(), path.display()).map_err(io)
        }
        Command::Decrypt { mode, key, input, out: path, report, text } => {
            let key = load_key(&key, mode.into())?;
            let file = CiphertextFile::decode(&read_file(&input)?)?;
            let result = match &key {
                KeyFile::Sum(k) => decrypt_sum(&file.sum_dyads()?, k),
                KeyFile::Mult(k) => decrypt_mult(&file.mult_dyads()?, k),
            };
            if let Some(report) = report {
                write_file(&report, render_report(&result).as_bytes())?;
            }
            if let Some(bad) = result.first_failure() {
                let code = match bad.status {
                    EntryStatus::Unsolved => EXIT_UNSOLVED,
                    EntryStatus::Ambiguous => EXIT_AMBIGUOUS,
                    EntryStatus::CheckBitMismatch => EXIT_CHECK_BIT,
                    EntryStatus::Ok => unreachable!("first_failure skips OK entries"),
                };
                let detail = match bad.status {
                    EntryStatus::Ambiguous => format!(
                        ": {}",
                        bad.candidates.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                    ),
                    EntryStatus::CheckBitMismatch => format!(": {}", bad.candidates[0]),
                    _ => String::new(),
                };
                return Err(Failure::Entries { code, message: format!("entry {}: {}{detail}", bad.index, bad.status) });
            }
            let plain = result.plaintext().expect("all entries OK");
            write_file(&path, render_plaintext(&plain, text)?.as_slice())?;
            writeln!(out, "recovered {} entr(ies) into {}", plain.len(), path.display()).map_err(io)
        }
        Command::Signal { species, amplitude, rate, duration, frequency, phase, index, out: path } => {
            let kind: WaveKind = species.parse()?;
            let species = WaveformSpecies::new(index, kind, rational(&frequency)?, rational(&phase)?)?;
            let signal = synthesize(&species, &amplitude, &rational(&duration)?, rate)?;
            write_file(&path, signal.to_csv().as_bytes())?;
            writeln!(out, "wrote {} sample(s) to {}", signal.samples.len(), path.display()).map_err(io)
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Io(e.to_string())
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn rational(s: &str) -> CliResult<Ratio<BigInt>> {
    s.trim()
        .parse::<Ratio<BigInt>>()
        .map_err(|_| Error::Parse(format!("{s:?} is not a rational number")).into())
}

fn cmd_ring(a: &BigInt, b: &BigInt, m_max: u64, n_max: u64, out: &mut dyn Write) -> CliResult {
    if *b < BigInt::from(2) || a.sign() == num_bigint::Sign::Minus || a >= b {
        return Err(Error::InvalidParams(format!("need b >= 2 and 0 <= a < b, got a = {a}, b = {b}")).into());
    }
    let family = parametric_family(a, b);
    let order = family.order.map_or("none".to_string(), |o| o.to_string());
    writeln!(out, "Phi({a},{b}): g={} ord={order}", family.g).map_err(io)?;
    let pairs = enumerate_arities(a, b, m_max, n_max);
    if pairs.is_empty() {
        writeln!(out, "no valid arity pairs with m <= {m_max}, n <= {n_max}").map_err(io)?;
    }
    for p in pairs {
        let i = invariant_i(a, b, p.m).expect("enumerated pair");
        let j = invariant_j(a, b, p.n).expect("enumerated pair");
        writeln!(out, "({},{}) I={i} J={j}", p.m, p.n).map_err(io)?;
    }
    Ok(())
}

fn cmd_params(m: u64, n: u64, b_max: u64, out: &mut dyn Write) -> CliResult {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParams(format!("arities ({m},{n}) must both be at least 2")).into());
    }
    let found: Vec<(BigInt, BigInt)> = params_for_arity(m, n, b_max);
    if found.is_empty() {
        writeln!(out, "no classes with b <= {b_max} map to ({m},{n})").map_err(io)?;
    }
    for (a, b) in found {
        let i = invariant_i(&a, &b, m).expect("valid pair");
        let j = invariant_j(&a, &b, n).expect("valid pair");
        writeln!(out, "({a},{b}) I={i} J={j}").map_err(io)?;
    }
    Ok(())
}

fn distinct_powers(rng: &mut ChaCha8Rng, count: usize, max: u64) -> Vec<u64> {
    let mut pool: Vec<u64> = (1..=max).collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool.sort_unstable();
    pool
}

fn keygen(
    mode: Mode,
    seed: Option<u64>,
    powers: Option<Vec<u64>>,
    poly: Option<Vec<BigInt>>,
    n: Option<u64>,
    convention: Option<String>,
    bounds: Option<u64>,
) -> CliResult<KeyFile> {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let poly = match poly {
        Some(c) => Some(RepPolynomial::new(c)?),
        None => None,
    };
    match mode {
        Mode::Sum => {
            if n.is_some() || convention.is_some() {
                return Err(Error::InvalidParams("--n and --convention apply to mult keys only".into()).into());
            }
            let powers = powers.unwrap_or_else(|| match rng.as_mut() {
                Some(r) => distinct_powers(r, 3, 7),
                None => vec![2, 3, 5],
            });
            let poly = poly.unwrap_or_else(|| match rng.as_mut() {
                // quadratic with positive values at every j >= 1
                Some(r) => {
                    let c: Vec<BigInt> = vec![r.gen_range(0..10).into(), r.gen_range(0..10).into(), r.gen_range(1..10).into()];
                    RepPolynomial::new(c).expect("degree 2")
                }
                None => RepPolynomial::new(vec![(-5).into(), 4.into(), 3.into()]).expect("degree 2"),
            });
            Ok(KeyFile::Sum(SumKey::new(powers, poly, bounds.unwrap_or(DEFAULT_M_MAX))?))
        }
        Mode::Mult => {
            let convention: AmplitudeConvention = match convention {
                Some(c) => c.parse()?,
                None => AmplitudeConvention::TrueProduct,
            };
            let powers = powers.unwrap_or_else(|| match (rng.as_mut(), convention) {
                (Some(r), AmplitudeConvention::TrueProduct | AmplitudeConvention::PaperFaulhaber) => {
                    distinct_powers(r, 2, 3)
                }
                _ => vec![1, 2],
            });
            let poly = poly.unwrap_or_else(|| match (rng.as_mut(), convention) {
                (Some(r), AmplitudeConvention::TrueProduct) => {
                    let c: Vec<BigInt> = vec![r.gen_range(0..10).into(), r.gen_range(1..10).into()];
                    RepPolynomial::new(c).expect("degree 1")
                }
                _ => RepPolynomial::identity(),
            });
            let n = n.unwrap_or(DEFAULT_MULT_ARITY);
            Ok(KeyFile::Mult(MultKey::new(powers, poly, n, convention, bounds.unwrap_or(DEFAULT_B_MAX))?))
        }
    }
}

fn load_key(path: &Path, mode: Mode) -> CliResult<KeyFile> {
    let key = KeyFile::decode(&read_file(path)?)?;
    if key.mode() != mode {
        return Err(Error::Schema(format!("{} holds a {} key, --mode is {mode}", path.display(), key.mode())).into());
    }
    Ok(key)
}

/// One integer per line; blank lines are skipped. In text mode each byte `v`
/// becomes `v + 2`.
fn read_plaintext(path: &Path, text: bool) -> CliResult<Vec<BigInt>> {
    let bytes = read_file(path)?;
    if text {
        return Ok(bytes.iter().map(|&v| BigInt::from(v) + 2).collect());
    }
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("{} line {}: {l:?} is not an integer", path.display(), i + 1)).into())
        })
        .collect()
}

fn render_plaintext(values: &[BigInt], text: bool) -> CliResult<Vec<u8>> {
    if text {
        return values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (v - 2u32)
                    .to_u8()
                    .ok_or_else(|| Failure::Lib(Error::Parse(format!("entry {i}: {v} is not a shifted byte"))))
            })
            .collect();
    }
    Ok(values.iter().map(|v| format!("{v}\n")).collect::<String>().into_bytes())
}

fn arity_entry(i: usize, v: &BigInt) -> CliResult<u64> {
    v.to_u64()
        .filter(|&m| m >= 2)
        .ok_or_else(|| Error::InvalidParams(format!("entry {i}: {v} is not an additive arity >= 2")).into())
}

fn choose_rings(key: &KeyFile, plain: &[BigInt], seed: Option<u64>, b_max: Option<u64>) -> CliResult<RingSelectionFile> {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut pick = |mut candidates: Vec<crate::Ring>| match rng.as_mut() {
        Some(r) => candidates.swap_remove(r.gen_range(0..candidates.len())),
        None => candidates.swap_remove(0),
    };
    let mut entries = Vec::with_capacity(plain.len());
    for (i, v) in plain.iter().enumerate() {
        let ring = match key {
            KeyFile::Sum(k) => {
                let m = arity_entry(i, v)?;
                if m > k.m_max() {
                    return Err(Error::InvalidParams(format!("entry {i}: arity {m} exceeds key m_max {}", k.m_max())).into());
                }
                let found = rings_with_additive_arity(m, b_max.unwrap_or(DEFAULT_SUM_RING_B_MAX.max(m - 1)), RING_N_MAX, None)
                    .map_err(|e| Error::NotFound(format!("entry {i}: {e}")))?;
                pick(found)
            }
            KeyFile::Mult(k) => {
                let found = rings_with_parameter(v, k.mult_arity(), b_max.unwrap_or(k.b_max()).min(k.b_max()), None)
                    .map_err(|e| Error::NotFound(format!("entry {i}: {e}")))?;
                pick(found)
            }
        };
        entries.push(ring);
    }
    Ok(RingSelectionFile { entries })
}

fn encrypt(key: &KeyFile, plain: &[BigInt], sel: &RingSelectionFile) -> CliResult<CiphertextFile> {
    Ok(match key {
        KeyFile::Sum(k) => {
            let arities = plain.iter().enumerate().map(|(i, v)| arity_entry(i, v)).collect::<CliResult<Vec<_>>>()?;
            CiphertextFile::from_sum(&encrypt_sum(&arities, &sel.entries, k)?)
        }
        KeyFile::Mult(k) => CiphertextFile::from_mult(&encrypt_mult(plain, &sel.entries, k)?),
    })
}

/// One line per entry: status, recovered ring and its invariants.
pub fn render_report(result: &Decryption) -> String {
    let opt = |x: &Option<BigInt>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
    let mut out = String::new();
    for e in &result.entries {
        out.push_str(&format!("entry {} {}", e.index, e.status));
        match (e.candidates.as_slice(), &e.invariants) {
            ([c], Some(inv)) => out.push_str(&format!(
                " a={} b={} m={} n={} I={} J={}",
                c.a,
                c.b,
                c.m,
                c.n,
                opt(&inv.i),
                opt(&inv.j)
            )),
            ([], _) => {}
            (cs, _) => {
                let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!(" candidates={}", list.join(",")));
            }
        }
        out.push('\n');
    }
    out
}
