//! Polyadic integers: congruence-class representatives with closed m-ary
//! addition and n-ary multiplication.
//!
//! The carrier of `Z_{m,n}^{(a,b)}` is the residue class `[[a]]_b`. Sums of
//! `m` representatives and products of `n` representatives stay in the class
//! exactly when the arity shape invariants `I = a(m-1)/b` and
//! `J = (a^n - a)/b` are integers; [`RingSpec::new`] enforces that.

use std::fmt;

use crate::arity::{invariant_i, invariant_j};
use crate::error::{Error, Result};
use crate::scalar::{exact_div, Int};

/// Validated polyadic ring parameters with cached arity shape invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec<T> {
    a: T,
    b: T,
    m: u64,
    n: u64,
    inv_i: T,
    inv_j: T,
}

impl<T: Int> RingSpec<T> {
    pub fn new(a: T, b: T, m: u64, n: u64) -> Result<Self> {
        if b < T::from_small(2) {
            return Err(Error::InvalidParams(format!("modulus b = {b} must be at least 2")));
        }
        if a.is_negative() || a >= b {
            return Err(Error::InvalidParams(format!("offset a = {a} outside 0..={}", b.clone() - T::one())));
        }
        if m < 2 || n < 2 {
            return Err(Error::InvalidParams(format!("arities ({m},{n}) must both be at least 2")));
        }
        let inv_i = invariant_i(&a, &b, m)
            .ok_or_else(|| Error::InvalidArity(format!("I^({m})({a},{b}) is not an integer")))?;
        let inv_j = invariant_j(&a, &b, n)
            .ok_or_else(|| Error::InvalidArity(format!("J^({n})({a},{b}) is not an integer")))?;
        Ok(Self { a, b, m, n, inv_i, inv_j })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// Additive arity.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Multiplicative arity.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `I^(m)(a,b)`.
    pub fn invariant_i(&self) -> &T {
        &self.inv_i
    }

    /// `J^(n)(a,b)`.
    pub fn invariant_j(&self) -> &T {
        &self.inv_j
    }

    /// `r(k) = a + b k`.
    pub fn representative(&self, k: T) -> Representative<T> {
        let value = self.a.clone() + self.b.clone() * k.clone();
        Representative { a: self.a.clone(), b: self.b.clone(), k, value }
    }

    /// Representative with the given integer value, if it lies in the class.
    pub fn from_value(&self, value: T) -> Result<Representative<T>> {
        let k = exact_div(&(value.clone() - self.a.clone()), &self.b).ok_or_else(|| Error::ClassMismatch {
            a: self.a.to_string(),
            b: self.b.to_string(),
            found_a: value.mod_floor(&self.b).to_string(),
            found_b: self.b.to_string(),
        })?;
        Ok(Representative { a: self.a.clone(), b: self.b.clone(), k, value })
    }

    /// Iterated m-ary addition over `l(m-1)+1` operands, left-nested.
    pub fn nu_add(&self, reps: &[Representative<T>]) -> Result<Representative<T>> {
        self.fold_polyadic(reps, self.m, |x, y| x + y)
    }

    /// Iterated n-ary multiplication over `l(n-1)+1` operands, left-nested.
    pub fn mu_mul(&self, reps: &[Representative<T>]) -> Result<Representative<T>> {
        self.fold_polyadic(reps, self.n, |x, y| x * y)
    }

    /// Additive querelement: the `x` with `nu_add([r; m-1] ++ [x]) = r`, i.e.
    /// `x = (2 - m) r`.
    pub fn querelement_add(&self, r: &Representative<T>) -> Result<Representative<T>> {
        self.check_class(r)?;
        let factor = T::from_small(2) - T::from_u64(self.m).expect("arity fits scalar");
        self.from_value(factor * r.value.clone())
    }

    fn check_class(&self, r: &Representative<T>) -> Result<()> {
        if r.a != self.a || r.b != self.b {
            return Err(Error::ClassMismatch {
                a: self.a.to_string(),
                b: self.b.to_string(),
                found_a: r.a.to_string(),
                found_b: r.b.to_string(),
            });
        }
        Ok(())
    }

    fn fold_polyadic(&self, reps: &[Representative<T>], arity: u64, op: impl Fn(T, T) -> T) -> Result<Representative<T>> {
        if AdmissibleCount::from_count(arity, reps.len() as u64).is_none() {
            return Err(Error::InadmissibleCount { arity, count: reps.len() });
        }
        for r in reps {
            self.check_class(r)?;
        }
        let arity = arity as usize;
        // one primitive application on the first `arity` operands, then each
        // further block of `arity - 1` joins the running result
        let mut acc = self.apply_primitive(&reps[..arity], &op)?;
        for block in reps[arity..].chunks(arity - 1) {
            let mut operands = Vec::with_capacity(arity);
            operands.push(acc);
            operands.extend(block.iter().map(|r| r.value.clone()));
            acc = self.apply_values(operands, &op)?;
        }
        self.from_value(acc)
    }

    fn apply_primitive(&self, reps: &[Representative<T>], op: &impl Fn(T, T) -> T) -> Result<T> {
        self.apply_values(reps.iter().map(|r| r.value.clone()).collect(), op)
    }

    fn apply_values(&self, values: Vec<T>, op: &impl Fn(T, T) -> T) -> Result<T> {
        let mut it = values.into_iter();
        let first = it.next().expect("primitive operation has operands");
        let out = it.fold(first, op);
        // closure: every intermediate result stays in the class
        self.from_value(out.clone())?;
        Ok(out)
    }
}

impl<T: Int> fmt::Display for RingSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{{{},{}}}^({},{})", self.m, self.n, self.a, self.b)
    }
}

/// Element `a + b k` of the class `[[a]]_b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representative<T> {
    a: T,
    b: T,
    k: T,
    value: T,
}

impl<T: Int> Representative<T> {
    pub fn k(&self) -> &T {
        &self.k
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    /// `(a, b)` of the class this element belongs to.
    pub fn class(&self) -> (&T, &T) {
        (&self.a, &self.b)
    }
}

/// Admissible operand count `l (arity - 1) + 1` for polyadic power `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleCount {
    arity: u64,
    power: u64,
    count: u64,
}

impl AdmissibleCount {
    pub fn new(arity: u64, power: u64) -> Result<Self> {
        if arity < 2 || power < 1 {
            return Err(Error::InvalidParams(format!("arity {arity} / power {power} out of range")));
        }
        Ok(Self { arity, power, count: power * (arity - 1) + 1 })
    }

    /// Inverse of [`AdmissibleCount::new`]: the power whose count is `count`.
    pub fn from_count(arity: u64, count: u64) -> Option<Self> {
        if arity < 2 || count < arity || !(count - 1).is_multiple_of(arity - 1) {
            return None;
        }
        Some(Self { arity, power: (count - 1) / (arity - 1), count })
    }

    pub fn arity(&self) -> u64 {
        self.arity
    }

    pub fn power(&self) -> u64 {
        self.power
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;

    fn ring(a: i64, b: i64, m: u64, n: u64) -> RingSpec<i64> {
        RingSpec::new(a, b, m, n).unwrap()
    }

    #[test]
    fn make_ring_examples() {
        assert!(RingSpec::new(5i64, 7, 15, 13).is_ok());
        assert!(matches!(RingSpec::new(4i64, 8, 3, 2), Err(Error::InvalidArity(_))));
        assert!(RingSpec::new(2i64, 7, 8, 4).is_ok());
    }

    #[test]
    fn make_ring_range_errors() {
        assert!(matches!(RingSpec::new(7i64, 7, 8, 4), Err(Error::InvalidParams(_))));
        assert!(matches!(RingSpec::new(-1i64, 7, 8, 4), Err(Error::InvalidParams(_))));
        assert!(matches!(RingSpec::new(0i64, 1, 2, 2), Err(Error::InvalidParams(_))));
        assert!(matches!(RingSpec::new(2i64, 7, 1, 4), Err(Error::InvalidParams(_))));
        // a = 0 closes for every arity
        let zero = RingSpec::new(0i64, 5, 2, 2).unwrap();
        assert_eq!((*zero.invariant_i(), *zero.invariant_j()), (0, 0));
    }

    #[test]
    fn representative_examples() {
        assert_eq!(*ring(2, 7, 8, 4).representative(3).value(), 23);
        assert_eq!(*ring(5, 7, 15, 13).representative(0).value(), 5);
        let r = ring(11, 15, 61, 3).representative(-2);
        assert_eq!(*r.value(), -19);
        assert_eq!(r.value().rem_euclid(15), 11);
    }

    #[test]
    fn nu_add_examples() {
        let z = ring(2, 7, 8, 4);
        let reps: Vec<_> = (1..=8).map(|k| z.representative(k)).collect();
        let s = z.nu_add(&reps).unwrap();
        assert_eq!((*s.value(), *s.k()), (268, 38));

        let zeros = vec![z.representative(0); 8];
        let s = z.nu_add(&zeros).unwrap();
        assert_eq!((*s.value(), *s.k()), (16, 2));
        assert_eq!(*s.k(), *z.invariant_i());

        let nine = vec![z.representative(0); 9];
        assert!(matches!(z.nu_add(&nine), Err(Error::InadmissibleCount { arity: 8, count: 9 })));
    }

    #[test]
    fn mu_mul_examples() {
        let z = ring(2, 7, 8, 4);
        let p = z.mu_mul(&vec![z.representative(0); 4]).unwrap();
        assert_eq!((*p.value(), *p.k()), (16, 2));
        assert_eq!(*p.k(), *z.invariant_j());

        let w = ring(11, 15, 61, 3);
        let reps: Vec<_> = (1..=3).map(|k| w.representative(k)).collect();
        let p = w.mu_mul(&reps).unwrap();
        assert_eq!((*p.value(), *p.k()), (59696, 3979));

        assert!(matches!(
            w.mu_mul(&vec![w.representative(1); 4]),
            Err(Error::InadmissibleCount { arity: 3, count: 4 })
        ));
    }

    #[test]
    fn class_mismatch_ignores_arities() {
        let z = ring(2, 7, 8, 4);
        let other = ring(5, 7, 15, 13);
        let mut reps = vec![z.representative(0); 7];
        reps.push(other.representative(0));
        assert!(matches!(z.nu_add(&reps), Err(Error::ClassMismatch { .. })));

        // same class, different arities: accepted
        let z15 = ring(2, 7, 15, 7);
        let reps = vec![z15.representative(1); 8];
        assert!(z.nu_add(&reps).is_ok());
    }

    #[test]
    fn querelement_examples() {
        let z = ring(2, 7, 8, 4);
        let x = z.querelement_add(&z.representative(0)).unwrap();
        assert_eq!((*x.value(), *x.k()), (-12, -2));
        let x = z.querelement_add(&z.representative(1)).unwrap();
        assert_eq!(*x.value(), -54);

        let w = ring(5, 7, 15, 13);
        let x = w.querelement_add(&w.representative(0)).unwrap();
        assert_eq!((*x.value(), *x.k()), (-65, -10));
    }

    #[test]
    fn admissible_counts() {
        let c = AdmissibleCount::new(8, 3).unwrap();
        assert_eq!(c.count(), 22);
        assert_eq!(AdmissibleCount::from_count(8, 22).unwrap().power(), 3);
        assert!(AdmissibleCount::from_count(8, 1).is_none());
        assert!(AdmissibleCount::from_count(3, 4).is_none());
        assert!(AdmissibleCount::new(1, 1).is_err());
    }

    #[test]
    fn works_over_bigint() {
        let z = RingSpec::new(BigInt::from(8), BigInt::from(21), 43, 13).unwrap();
        assert_eq!(z.invariant_j(), &BigInt::from(26_178_848_280i64));
        let reps: Vec<_> = (0..13).map(|k| z.representative(BigInt::from(k))).collect();
        let p = z.mu_mul(&reps).unwrap();
        assert_eq!(p.value().mod_floor(&BigInt::from(21)), BigInt::from(8));
    }

    #[test]
    fn display_names_ring() {
        assert_eq!(ring(5, 7, 15, 13).to_string(), "Z_{15,13}^(5,7)");
    }
}
