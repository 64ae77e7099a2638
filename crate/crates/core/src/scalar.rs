//! Integer scalar abstraction shared by the ring, arity and amplitude code.
//!
//! Everything in the algebraic core is written against [`Int`], so the same
//! routines run over machine integers (fast enumeration, small fixtures) and
//! over [`num_bigint::BigInt`] (the cryptographic path, where amplitudes leave
//! the 64-bit range quickly). Fixed-width instantiations follow the usual Rust
//! overflow rules; use `BigInt` whenever magnitudes are not known to be small.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a ring scalar.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Lossless conversion from a small machine integer.
    fn from_small(x: i64) -> Self {
        Self::from_i64(x).expect("small integer fits every Int")
    }
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Int>(base: &T, exp: u64) -> T {
    let mut result = T::one();
    let mut acc = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * acc.clone();
        }
        e >>= 1;
        if e > 0 {
            acc = acc.clone() * acc;
        }
    }
    result
}

/// `base^exp mod modulus`, result in `0..modulus`. `modulus` must be positive.
pub fn pow_mod<T: Int>(base: &T, exp: u64, modulus: &T) -> T {
    let mut result = T::one().mod_floor(modulus);
    let mut acc = base.mod_floor(modulus);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = (result * acc.clone()).mod_floor(modulus);
        }
        e >>= 1;
        if e > 0 {
            acc = (acc.clone() * acc).mod_floor(modulus);
        }
    }
    result
}

/// Exact quotient `num / den` when `den` divides `num`.
pub fn exact_div<T: Int>(num: &T, den: &T) -> Option<T> {
    let (q, r) = num.div_mod_floor(den);
    r.is_zero().then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn pow_matches_repeated_product() {
        assert_eq!(pow(&3i64, 0), 1);
        assert_eq!(pow(&-2i64, 5), -32);
        assert_eq!(pow(&BigInt::from(8), 13), BigInt::from(549_755_813_888i64));
    }

    #[test]
    fn pow_mod_nonnegative() {
        assert_eq!(pow_mod(&-3i64, 3, &7), 1); // -27 mod 7
        assert_eq!(pow_mod(&5i64, 0, &1), 0);
        assert_eq!(pow_mod(&2i64, 17, &7), 4);
    }

    #[test]
    fn exact_div_only_when_divisible() {
        assert_eq!(exact_div(&12i64, &4), Some(3));
        assert_eq!(exact_div(&-12i64, &4), Some(-3));
        assert_eq!(exact_div(&13i64, &4), None);
    }
}
