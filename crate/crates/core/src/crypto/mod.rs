//! Encryption of plaintext entries as polyadic ring parameters.
//!
//! Each entry travels as a dyad: a vector of amplitudes over one openly sent
//! check arity. The summation scheme hides the additive arity `m` of a ring,
//! the multiplication scheme hides its class offset `a`. Recipients solve the
//! amplitude equations in integers and accept a solution only when the check
//! arity completes it to a valid point of `Phi`.

use std::fmt;

use num_bigint::BigInt;

use crate::arity::ArityInvariants;

pub mod mult;
pub mod sum;

pub use mult::{decrypt_mult, encrypt_mult, solve_mult_entry, MultDyad, MultKey};
pub use sum::{decrypt_sum, encrypt_sum, solve_sum_entry, SumDyad, SumKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sum,
    Mult,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sum => "sum",
            Mode::Mult => "mult",
        })
    }
}

/// A solution of one entry's amplitude system completed by its check arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecoveredRing {
    pub a: BigInt,
    pub b: BigInt,
    pub m: u64,
    pub n: u64,
}

impl fmt::Display for RecoveredRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={},b={},m={},n={})", self.a, self.b, self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryStatus {
    Ok,
    Ambiguous,
    Unsolved,
    CheckBitMismatch,
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryStatus::Ok => "OK",
            EntryStatus::Ambiguous => "AMBIGUOUS",
            EntryStatus::Unsolved => "UNSOLVED",
            EntryStatus::CheckBitMismatch => "CHECK_BIT_MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    /// Zero-based position in the ciphertext.
    pub index: usize,
    pub status: EntryStatus,
    /// Every solution of the amplitude system, completed with the check arity.
    pub candidates: Vec<RecoveredRing>,
    /// Invariants of the unique candidate.
    pub invariants: Option<ArityInvariants<BigInt>>,
    /// Recovered plaintext entry, present iff `status` is `Ok`.
    pub value: Option<BigInt>,
}

impl EntryReport {
    fn resolve(index: usize, candidates: Vec<RecoveredRing>, value_of: impl Fn(&RecoveredRing) -> BigInt) -> Self {
        let (status, invariants, value) = match candidates.as_slice() {
            [] => (EntryStatus::Unsolved, None, None),
            [only] => {
                let inv = ArityInvariants::compute(&only.a, &only.b, only.m, only.n);
                if inv.is_valid() {
                    (EntryStatus::Ok, Some(inv), Some(value_of(only)))
                } else {
                    (EntryStatus::CheckBitMismatch, Some(inv), None)
                }
            }
            _ => (EntryStatus::Ambiguous, None, None),
        };
        Self { index, status, candidates, invariants, value }
    }
}

/// Per-entry outcome of a decryption.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decryption {
    pub entries: Vec<EntryReport>,
}

impl Decryption {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.status == EntryStatus::Ok)
    }

    /// The recovered plaintext, or the first entry that failed.
    pub fn plaintext(&self) -> Result<Vec<BigInt>, &EntryReport> {
        self.entries
            .iter()
            .map(|e| e.value.clone().ok_or(e))
            .collect()
    }

    pub fn first_failure(&self) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.status != EntryStatus::Ok)
    }
}

fn check_powers<const N: usize>(mut powers: Vec<u64>) -> crate::Result<[u64; N]> {
    powers.sort_unstable();
    powers.dedup();
    if powers.len() != N || powers[0] < 1 {
        return Err(crate::Error::InvalidParams(format!(
            "key needs exactly {N} distinct polyadic powers >= 1"
        )));
    }
    Ok(powers.try_into().expect("length checked"))
}
