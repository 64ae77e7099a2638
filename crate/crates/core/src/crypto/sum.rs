//! Summation scheme: the plaintext entry is the additive arity `m_i`.
//!
//! Amplitude for power `l` is `A_l = a L_l + b K(L_l)` with
//! `L_l = l (m - 1) + 1`. Three powers give three equations in `(a, b, m)`;
//! for fixed `m` the system is linear in `(a, b)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{check_powers, Decryption, EntryReport, RecoveredRing};
use crate::amplitude::{sum_amplitude, RepPolynomial};
use crate::error::{Error, Result};
use crate::polyadic::RingSpec;

pub const DEFAULT_M_MAX: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumKey {
    powers: [u64; 3],
    poly: RepPolynomial<BigInt>,
    m_max: u64,
}

impl SumKey {
    /// Powers are normalized to ascending order.
    pub fn new(powers: Vec<u64>, poly: RepPolynomial<BigInt>, m_max: u64) -> Result<Self> {
        if m_max < 2 {
            return Err(Error::InvalidParams(format!("m_max = {m_max} leaves nothing to search")));
        }
        Ok(Self { powers: check_powers(powers)?, poly, m_max })
    }

    pub fn powers(&self) -> [u64; 3] {
        self.powers
    }

    pub fn poly(&self) -> &RepPolynomial<BigInt> {
        &self.poly
    }

    pub fn m_max(&self) -> u64 {
        self.m_max
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumDyad {
    pub amplitudes: [BigInt; 3],
    pub check_arity: u64,
}

pub fn encrypt_sum(plaintext: &[u64], rings: &[RingSpec<BigInt>], key: &SumKey) -> Result<Vec<SumDyad>> {
    if plaintext.len() != rings.len() {
        return Err(Error::LengthMismatch { plaintext: plaintext.len(), rings: rings.len() });
    }
    plaintext
        .iter()
        .zip(rings)
        .enumerate()
        .map(|(i, (&m, ring))| {
            if ring.m() != m {
                return Err(Error::InvalidArity(format!(
                    "entry {i}: plaintext {m} differs from ring additive arity {}",
                    ring.m()
                )));
            }
            let amp = |l| sum_amplitude(ring.a(), ring.b(), m, l, &key.poly);
            let [l1, l2, l3] = key.powers;
            Ok(SumDyad { amplitudes: [amp(l1)?, amp(l2)?, amp(l3)?], check_arity: ring.n() })
        })
        .collect()
}

/// Running `(L, K(L))` for one power as `m` advances by one.
struct RunningSum<'p> {
    power: u64,
    count: u64,
    k: BigInt,
    poly: &'p RepPolynomial<BigInt>,
}

impl<'p> RunningSum<'p> {
    fn new(power: u64, poly: &'p RepPolynomial<BigInt>) -> Self {
        Self { power, count: 0, k: BigInt::zero(), poly }
    }

    fn advance_to(&mut self, m: u64) -> (BigInt, &BigInt) {
        let target = self.power * (m - 1) + 1;
        while self.count < target {
            self.count += 1;
            self.k += self.poly.eval_at(self.count);
        }
        (BigInt::from(self.count), &self.k)
    }
}

/// Solves `a x1 + b y1 = c1`, `a x2 + b y2 = c2` over the integers.
/// `None` for singular or non-integral systems.
fn solve_2x2(eq1: (&BigInt, &BigInt, &BigInt), eq2: (&BigInt, &BigInt, &BigInt)) -> Option<(BigInt, BigInt)> {
    let (x1, y1, c1) = eq1;
    let (x2, y2, c2) = eq2;
    let det = x1 * y2 - x2 * y1;
    if det.is_zero() {
        return None;
    }
    let (a, ra) = (c1 * y2 - c2 * y1).div_rem(&det);
    let (b, rb) = (x1 * c2 - x2 * c1).div_rem(&det);
    (ra.is_zero() && rb.is_zero()).then_some((a, b))
}

/// Every `(a, b, m)` with `2 <= m <= m_max`, `b >= 2`, `0 <= a < b` satisfying
/// all three amplitude equations. `n` of each result is left at 0.
///
/// Closure under `m` is not required here; the check arity does that.
pub fn solve_sum_entry(amplitudes: &[BigInt; 3], key: &SumKey) -> Vec<RecoveredRing> {
    let mut runs: Vec<RunningSum> = key.powers.iter().map(|&l| RunningSum::new(l, &key.poly)).collect();
    let two = BigInt::from(2);
    let mut out = Vec::new();
    for m in 2..=key.m_max {
        let eqs: Vec<(BigInt, BigInt)> = runs
            .iter_mut()
            .map(|r| {
                let (l, k) = r.advance_to(m);
                (l, k.clone())
            })
            .collect();
        let eq = |i: usize| (&eqs[i].0, &eqs[i].1, &amplitudes[i]);
        // first nonsingular pair of equations fixes (a, b); a singular pair
        // falls through to one involving the third equation
        let mut singular = true;
        let mut candidate = None;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (x1, y1, _) = eq(i);
            let (x2, y2, _) = eq(j);
            if (x1 * y2 - x2 * y1).is_zero() {
                continue;
            }
            singular = false;
            candidate = solve_2x2(eq(i), eq(j));
            break;
        }
        if singular {
            // rank-deficient for this m: (a, b) not determined by the key
            continue;
        }
        let Some((a, b)) = candidate else { continue };
        if b < two || a.is_negative() || a >= b {
            continue;
        }
        let holds = (0..3).all(|i| {
            let (l, k, amp) = eq(i);
            &(&a * l + &b * k) == amp
        });
        if holds {
            out.push(RecoveredRing { a, b, m, n: 0 });
        }
    }
    out
}

pub fn decrypt_sum(dyads: &[SumDyad], key: &SumKey) -> Decryption {
    let entries = dyads
        .par_iter()
        .enumerate()
        .map(|(index, dyad)| {
            let candidates = solve_sum_entry(&dyad.amplitudes, key)
                .into_iter()
                .map(|r| RecoveredRing { n: dyad.check_arity, ..r })
                .collect();
            EntryReport::resolve(index, candidates, |r| BigInt::from(r.m))
        })
        .collect();
    Decryption { entries }
}
