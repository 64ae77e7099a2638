//! Multiplication scheme: the plaintext entry is the class offset `a_i`.
//!
//! The multiplicative arity `n` is key material because it fixes the operand
//! counts `L = l (n - 1) + 1` and with them the shape of both equations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_powers, Decryption, EntryReport, RecoveredRing};
use crate::amplitude::{mult_amplitude, AmplitudeConvention, RepPolynomial};
use crate::arity::invariant_j;
use crate::error::{Error, Result};
use crate::polyadic::RingSpec;

pub const DEFAULT_B_MAX: u64 = 4096;
pub const DEFAULT_MULT_ARITY: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultKey {
    powers: [u64; 2],
    poly: RepPolynomial<BigInt>,
    mult_arity: u64,
    convention: AmplitudeConvention,
    b_max: u64,
}

impl MultKey {
    pub fn new(
        powers: Vec<u64>,
        poly: RepPolynomial<BigInt>,
        mult_arity: u64,
        convention: AmplitudeConvention,
        b_max: u64,
    ) -> Result<Self> {
        let powers = check_powers(powers)?;
        if mult_arity < 2 {
            return Err(Error::InvalidParams(format!("multiplicative arity {mult_arity} must be at least 2")));
        }
        if b_max < 2 {
            return Err(Error::InvalidParams(format!("b_max = {b_max} leaves nothing to search")));
        }
        for l in powers {
            convention.check(mult_arity, l, &poly)?;
        }
        Ok(Self { powers, poly, mult_arity, convention, b_max })
    }

    pub fn powers(&self) -> [u64; 2] {
        self.powers
    }

    pub fn poly(&self) -> &RepPolynomial<BigInt> {
        &self.poly
    }

    pub fn mult_arity(&self) -> u64 {
        self.mult_arity
    }

    pub fn convention(&self) -> AmplitudeConvention {
        self.convention
    }

    pub fn b_max(&self) -> u64 {
        self.b_max
    }

    fn amplitude(&self, a: &BigInt, b: &BigInt, power: u64) -> Result<BigInt> {
        mult_amplitude(a, b, self.mult_arity, power, &self.poly, self.convention)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultDyad {
    pub amplitudes: [BigInt; 2],
    pub check_arity: u64,
}

pub fn encrypt_mult(plaintext: &[BigInt], rings: &[RingSpec<BigInt>], key: &MultKey) -> Result<Vec<MultDyad>> {
    if plaintext.len() != rings.len() {
        return Err(Error::LengthMismatch { plaintext: plaintext.len(), rings: rings.len() });
    }
    plaintext
        .iter()
        .zip(rings)
        .enumerate()
        .map(|(i, (a, ring))| {
            if ring.a() != a {
                return Err(Error::InvalidParams(format!(
                    "entry {i}: plaintext {a} differs from ring offset {}",
                    ring.a()
                )));
            }
            if ring.n() != key.mult_arity {
                return Err(Error::InvalidArity(format!(
                    "entry {i}: ring multiplicative arity {} differs from key arity {}",
                    ring.n(),
                    key.mult_arity
                )));
            }
            let [l1, l2] = key.powers;
            Ok(MultDyad {
                amplitudes: [key.amplitude(a, ring.b(), l1)?, key.amplitude(a, ring.b(), l2)?],
                check_arity: ring.m(),
            })
        })
        .collect()
}

/// Every `(a, b)` with `2 <= b <= b_max`, `1 <= a < b`, `J^(n)(a,b)` integral
/// and both amplitude equations satisfied. `m` of each result is left at 0.
///
/// Every convention yields `A = a (mod b)` on a closed ring, so `a` is pinned
/// to `A_1 mod b` and only `b` is searched.
pub fn solve_mult_entry(amplitudes: &[BigInt; 2], key: &MultKey) -> Vec<RecoveredRing> {
    let [amp1, amp2] = amplitudes;
    let n = key.mult_arity;
    let [l1, l2] = key.powers;
    (2..=key.b_max)
        .into_par_iter()
        .filter_map(|b| {
            let b = BigInt::from(b);
            let a = amp1.mod_floor(&b);
            if a.is_zero() || amp2.mod_floor(&b) != a {
                return None;
            }
            invariant_j(&a, &b, n)?;
            let matches = |l, amp: &BigInt| key.amplitude(&a, &b, l).is_ok_and(|v| &v == amp);
            (matches(l1, amp1) && matches(l2, amp2)).then_some(RecoveredRing { a, b, m: 0, n })
        })
        .collect()
}

pub fn decrypt_mult(dyads: &[MultDyad], key: &MultKey) -> Decryption {
    let entries = dyads
        .par_iter()
        .enumerate()
        .map(|(index, dyad)| {
            let candidates = solve_mult_entry(&dyad.amplitudes, key)
                .into_iter()
                .map(|r| RecoveredRing { m: dyad.check_arity, ..r })
                .collect();
            EntryReport::resolve(index, candidates, |r| r.a.clone())
        })
        .collect();
    Decryption { entries }
}
