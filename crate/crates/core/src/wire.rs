//! Canonical text encoding for ciphertexts (`.prc`), keys (`.prk`) and ring
//! selections (`.prr`).
//!
//! Canonical form is compact JSON: UTF-8, object keys in lexicographic order,
//! no whitespace, no trailing newline. Arbitrary-precision integers
//! (amplitudes, polynomial coefficients, ring parameters `a`, `b`) are
//! decimal strings without leading zeros; arities, powers, bounds and the
//! version are plain JSON numbers.

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::amplitude::{AmplitudeConvention, RepPolynomial};
use crate::crypto::{Mode, MultDyad, MultKey, SumDyad, SumKey};
use crate::error::{Error, Result};
use crate::polyadic::RingSpec;

pub const FORMAT_VERSION: u64 = 1;

pub const CIPHERTEXT_EXT: &str = "prc";
pub const KEY_EXT: &str = "prk";
pub const RING_SELECTION_EXT: &str = "prr";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherEntry {
    pub amplitudes: Vec<BigInt>,
    pub check_arity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub mode: Mode,
    pub entries: Vec<CipherEntry>,
}

impl CiphertextFile {
    pub fn from_sum(dyads: &[SumDyad]) -> Self {
        let entries = dyads
            .iter()
            .map(|d| CipherEntry { amplitudes: d.amplitudes.to_vec(), check_arity: d.check_arity })
            .collect();
        Self { mode: Mode::Sum, entries }
    }

    pub fn from_mult(dyads: &[MultDyad]) -> Self {
        let entries = dyads
            .iter()
            .map(|d| CipherEntry { amplitudes: d.amplitudes.to_vec(), check_arity: d.check_arity })
            .collect();
        Self { mode: Mode::Mult, entries }
    }

    pub fn sum_dyads(&self) -> Result<Vec<SumDyad>> {
        self.expect_mode(Mode::Sum)?;
        self.entries
            .iter()
            .map(|e| Ok(SumDyad { amplitudes: amplitude_array(e)?, check_arity: e.check_arity }))
            .collect()
    }

    pub fn mult_dyads(&self) -> Result<Vec<MultDyad>> {
        self.expect_mode(Mode::Mult)?;
        self.entries
            .iter()
            .map(|e| Ok(MultDyad { amplitudes: amplitude_array(e)?, check_arity: e.check_arity }))
            .collect()
    }

    fn expect_mode(&self, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Schema(format!("ciphertext is {} mode, expected {mode}", self.mode)));
        }
        Ok(())
    }

    pub fn encode(&self) -> Vec<u8> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                object([
                    ("amplitudes", Value::Array(e.amplitudes.iter().map(big_value).collect())),
                    ("check_arity", e.check_arity.into()),
                ])
            })
            .collect();
        to_bytes(object([
            ("entries", Value::Array(entries)),
            ("mode", mode_value(self.mode)),
            ("version", FORMAT_VERSION.into()),
        ]))
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut root = parse_root(bytes)?;
        let mode = take_mode(&mut root)?;
        let want = match mode {
            Mode::Sum => 3,
            Mode::Mult => 2,
        };
        let entries = take_array(&mut root, "entries")?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let mut obj = as_object(v, &format!("entries[{i}]"))?;
                let amplitudes = take_array(&mut obj, "amplitudes")?
                    .into_iter()
                    .map(|a| parse_big(a, "amplitude"))
                    .collect::<Result<Vec<_>>>()?;
                if amplitudes.len() != want {
                    return Err(Error::Schema(format!(
                        "entries[{i}]: {mode} mode needs {want} amplitudes, found {}",
                        amplitudes.len()
                    )));
                }
                let check_arity = take_u64(&mut obj, "check_arity")?;
                if check_arity < 2 {
                    return Err(Error::Schema(format!("entries[{i}]: check arity {check_arity} below 2")));
                }
                finish(obj, &format!("entries[{i}]"))?;
                Ok(CipherEntry { amplitudes, check_arity })
            })
            .collect::<Result<Vec<_>>>()?;
        finish(root, "ciphertext")?;
        Ok(Self { mode, entries })
    }
}

fn amplitude_array<const N: usize>(e: &CipherEntry) -> Result<[BigInt; N]> {
    e.amplitudes
        .clone()
        .try_into()
        .map_err(|_| Error::Schema(format!("expected {N} amplitudes, found {}", e.amplitudes.len())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyFile {
    Sum(SumKey),
    Mult(MultKey),
}

impl KeyFile {
    pub fn mode(&self) -> Mode {
        match self {
            KeyFile::Sum(_) => Mode::Sum,
            KeyFile::Mult(_) => Mode::Mult,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let poly = |p: &RepPolynomial<BigInt>| Value::Array(p.coefficients().iter().map(big_value).collect());
        let powers = |p: &[u64]| Value::Array(p.iter().map(|&x| x.into()).collect());
        let root = match self {
            KeyFile::Sum(k) => object([
                ("bounds", object([("m_max", k.m_max().into())])),
                ("mode", mode_value(Mode::Sum)),
                ("powers", powers(&k.powers())),
                ("rep_poly", poly(k.poly())),
                ("version", FORMAT_VERSION.into()),
            ]),
            KeyFile::Mult(k) => object([
                ("bounds", object([("b_max", k.b_max().into())])),
                ("convention", Value::String(k.convention().tag().into())),
                ("mode", mode_value(Mode::Mult)),
                ("mult_arity", k.mult_arity().into()),
                ("powers", powers(&k.powers())),
                ("rep_poly", poly(k.poly())),
                ("version", FORMAT_VERSION.into()),
            ]),
        };
        to_bytes(root)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut root = parse_root(bytes)?;
        let mode = take_mode(&mut root)?;
        let powers = take_array(&mut root, "powers")?
            .into_iter()
            .map(|v| value_u64(v, "power"))
            .collect::<Result<Vec<_>>>()?;
        let want = match mode {
            Mode::Sum => 3,
            Mode::Mult => 2,
        };
        if powers.len() != want {
            return Err(Error::Schema(format!("{mode} key needs {want} powers, found {}", powers.len())));
        }
        let coeffs = take_array(&mut root, "rep_poly")?
            .into_iter()
            .map(|v| parse_big(v, "rep_poly coefficient"))
            .collect::<Result<Vec<_>>>()?;
        let poly = RepPolynomial::new(coeffs).map_err(schema)?;
        let mut bounds = as_object(take(&mut root, "bounds")?, "bounds")?;
        let key = match mode {
            Mode::Sum => {
                let m_max = take_u64(&mut bounds, "m_max")?;
                KeyFile::Sum(SumKey::new(powers, poly, m_max).map_err(schema)?)
            }
            Mode::Mult => {
                let b_max = take_u64(&mut bounds, "b_max")?;
                let mult_arity = take_u64(&mut root, "mult_arity")?;
                let convention = match take(&mut root, "convention")? {
                    Value::String(s) => s.parse::<AmplitudeConvention>().map_err(schema)?,
                    other => return Err(Error::Schema(format!("convention must be a string, found {other}"))),
                };
                KeyFile::Mult(MultKey::new(powers, poly, mult_arity, convention, b_max).map_err(schema)?)
            }
        };
        finish(bounds, "bounds")?;
        finish(root, "key")?;
        Ok(key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSelectionFile {
    pub entries: Vec<RingSpec<BigInt>>,
}

impl RingSelectionFile {
    pub fn encode(&self) -> Vec<u8> {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                object([
                    ("a", big_value(r.a())),
                    ("b", big_value(r.b())),
                    ("m", r.m().into()),
                    ("n", r.n().into()),
                ])
            })
            .collect();
        to_bytes(object([("entries", Value::Array(entries)), ("version", FORMAT_VERSION.into())]))
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut root = parse_root(bytes)?;
        let entries = take_array(&mut root, "entries")?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let ctx = format!("entries[{i}]");
                let mut obj = as_object(v, &ctx)?;
                let a = parse_big(take(&mut obj, "a")?, "a")?;
                let b = parse_big(take(&mut obj, "b")?, "b")?;
                let m = take_u64(&mut obj, "m")?;
                let n = take_u64(&mut obj, "n")?;
                finish(obj, &ctx)?;
                RingSpec::new(a, b, m, n).map_err(|e| Error::Schema(format!("{ctx}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        finish(root, "ring selection")?;
        Ok(Self { entries })
    }
}

fn schema(e: Error) -> Error {
    match e {
        Error::Schema(_) => e,
        other => Error::Schema(other.to_string()),
    }
}

fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn big_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn mode_value(mode: Mode) -> Value {
    Value::String(mode.to_string())
}

fn to_bytes(v: Value) -> Vec<u8> {
    // serde_json's default map is ordered by key
    serde_json::to_vec(&v).expect("JSON values always serialize")
}

fn parse_root(bytes: &[u8]) -> Result<Map<String, Value>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut root = as_object(v, "document")?;
    let version = take_u64(&mut root, "version")?;
    if version != FORMAT_VERSION {
        return Err(Error::Version(version));
    }
    Ok(root)
}

fn as_object(v: Value, ctx: &str) -> Result<Map<String, Value>> {
    match v {
        Value::Object(m) => Ok(m),
        other => Err(Error::Schema(format!("{ctx} must be an object, found {other}"))),
    }
}

fn take(obj: &mut Map<String, Value>, key: &str) -> Result<Value> {
    obj.remove(key).ok_or_else(|| Error::Schema(format!("missing field {key:?}")))
}

fn take_array(obj: &mut Map<String, Value>, key: &str) -> Result<Vec<Value>> {
    match take(obj, key)? {
        Value::Array(a) => Ok(a),
        other => Err(Error::Schema(format!("{key:?} must be an array, found {other}"))),
    }
}

fn take_u64(obj: &mut Map<String, Value>, key: &str) -> Result<u64> {
    value_u64(take(obj, key)?, key)
}

fn take_mode(obj: &mut Map<String, Value>) -> Result<Mode> {
    match take(obj, "mode")? {
        Value::String(s) if s == "sum" => Ok(Mode::Sum),
        Value::String(s) if s == "mult" => Ok(Mode::Mult),
        other => Err(Error::Schema(format!("mode must be \"sum\" or \"mult\", found {other}"))),
    }
}

fn value_u64(v: Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Schema(format!("{what} must be a nonnegative integer, found {v}")))
}

/// Canonical decimal: optional `-`, no leading zeros, no `-0`.
fn parse_big(v: Value, what: &str) -> Result<BigInt> {
    let Value::String(s) = v else {
        return Err(Error::Schema(format!("{what} must be a decimal string, found {v}")));
    };
    let digits = s.strip_prefix('-').unwrap_or(&s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|c| c.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    if !canonical {
        return Err(Error::Schema(format!("{what} {s:?} is not a canonical decimal integer")));
    }
    s.parse().map_err(|_| Error::Schema(format!("{what} {s:?} is not an integer")))
}

fn finish(obj: Map<String, Value>, ctx: &str) -> Result<()> {
    match obj.keys().next() {
        Some(k) => Err(Error::Schema(format!("{ctx}: unexpected field {k:?}"))),
        None => Ok(()),
    }
}
