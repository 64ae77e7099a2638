//! The parameter-to-arity mapping `Phi(a,b) = {(m,n)}`.
//!
//! A pair `(m,n)` is valid for `(a,b)` iff both arity shape invariants
//! `I^(m)(a,b) = a(m-1)/b` and `J^(n)(a,b) = (a^n - a)/b` are integers.
//! Direct divisibility is authoritative; [`ParametricFamily`] only predicts.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyadic::RingSpec;
use crate::scalar::{exact_div, pow, pow_mod, Int};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArityPair {
    pub m: u64,
    pub n: u64,
}

impl ArityPair {
    pub fn new(m: u64, n: u64) -> Self {
        Self { m, n }
    }
}

impl From<(u64, u64)> for ArityPair {
    fn from((m, n): (u64, u64)) -> Self {
        Self { m, n }
    }
}

/// Both invariants for one `(a,b,m,n)`; `None` where not integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityInvariants<T> {
    pub i: Option<T>,
    pub j: Option<T>,
}

impl<T: Int> ArityInvariants<T> {
    pub fn compute(a: &T, b: &T, m: u64, n: u64) -> Self {
        Self { i: invariant_i(a, b, m), j: invariant_j(a, b, n) }
    }

    pub fn is_valid(&self) -> bool {
        self.i.is_some() && self.j.is_some()
    }
}

fn scalar<T: Int>(x: u64) -> T {
    T::from_u64(x).expect("arity fits scalar")
}

/// `I^(m)(a,b) = (a m - a) / b` when integral.
pub fn invariant_i<T: Int>(a: &T, b: &T, m: u64) -> Option<T> {
    exact_div(&(a.clone() * scalar::<T>(m) - a.clone()), b)
}

/// `J^(n)(a,b) = (a^n - a) / b` when integral. Divisibility is screened with
/// modular exponentiation before the exact power is formed.
pub fn invariant_j<T: Int>(a: &T, b: &T, n: u64) -> Option<T> {
    if !j_divisible(a, b, n) {
        return None;
    }
    exact_div(&(pow(a, n) - a.clone()), b)
}

fn i_divisible<T: Int>(a: &T, b: &T, m: u64) -> bool {
    (a.clone() * scalar::<T>(m - 1)).is_multiple_of(b)
}

fn j_divisible<T: Int>(a: &T, b: &T, n: u64) -> bool {
    pow_mod(a, n, b) == a.mod_floor(b)
}

pub fn is_valid_pair<T: Int>(a: &T, b: &T, m: u64, n: u64) -> bool {
    m >= 2 && n >= 2 && i_divisible(a, b, m) && j_divisible(a, b, n)
}

/// Every valid `(m,n)` with `2 <= m <= m_max`, `2 <= n <= n_max`, ascending.
pub fn enumerate_arities<T: Int>(a: &T, b: &T, m_max: u64, n_max: u64) -> Vec<ArityPair> {
    // the two conditions are independent, so the image is a product set
    let ms: Vec<u64> = (2..=m_max).filter(|&m| i_divisible(a, b, m)).collect();
    if ms.is_empty() {
        return Vec::new();
    }
    let ns: Vec<u64> = (2..=n_max).filter(|&n| j_divisible(a, b, n)).collect();
    ms.iter()
        .flat_map(|&m| ns.iter().map(move |&n| ArityPair { m, n }))
        .collect()
}

/// Inverse search: every `(a,b)` with `b <= b_max`, `1 <= a < b`, mapping to
/// `(m,n)`. Ascending in `(b, a)`.
pub fn params_for_arity<T: Int>(m: u64, n: u64, b_max: u64) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for b in 2..=b_max {
        let b = scalar::<T>(b);
        let mut a = T::one();
        while a < b {
            if is_valid_pair(&a, &b, m, n) {
                out.push((a.clone(), b.clone()));
            }
            a = a + T::one();
        }
    }
    out
}

/// Smallest `p >= 1` with `x^p = 1 (mod y)`; `None` when `gcd(x,y) != 1`.
/// Modulus 1 has order 1.
pub fn multiplicative_order<T: Int>(x: &T, y: &T) -> Option<u64> {
    if y.is_one() {
        return Some(1);
    }
    if !x.gcd(y).is_one() {
        return None;
    }
    let x = x.mod_floor(y);
    let mut acc = x.clone();
    let mut p = 1u64;
    while !acc.is_one() {
        acc = (acc * x.clone()).mod_floor(y);
        p += 1;
    }
    Some(p)
}

/// Closed-form description of `Phi(a,b)`: `m = 1 + u g` and, when the order
/// exists, `n = 1 + v ord_g(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricFamily<T> {
    pub g: T,
    pub order: Option<u64>,
}

impl<T: Int> ParametricFamily<T> {
    /// `u`-th additive arity, `u >= 1`.
    pub fn predicted_m(&self, u: u64) -> Option<u64> {
        self.g.to_u64().map(|g| 1 + u * g)
    }

    /// `v`-th multiplicative arity, `v >= 1`.
    pub fn predicted_n(&self, v: u64) -> Option<u64> {
        self.order.map(|o| 1 + v * o)
    }
}

pub fn parametric_family<T: Int>(a: &T, b: &T) -> ParametricFamily<T> {
    let g = b.clone() / a.gcd(b);
    let order = if a.gcd(&g).is_one() { multiplicative_order(a, &g) } else { None };
    ParametricFamily { g, order }
}

fn order_rings<T: Int>(mut rings: Vec<RingSpec<T>>, seed: Option<u64>) -> Vec<RingSpec<T>> {
    rings.sort_by(|x, y| {
        (x.b(), x.a(), x.m(), x.n()).cmp(&(y.b(), y.a(), y.m(), y.n()))
    });
    if let Some(seed) = seed {
        rings.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    rings
}

/// Rings `(a,b,m,n)` carrying additive arity `m`: all `1 <= a < b <= b_max`
/// closing under `m`, each paired with every valid `n <= n_max`.
pub fn rings_with_additive_arity<T: Int>(m: u64, b_max: u64, n_max: u64, seed: Option<u64>) -> Result<Vec<RingSpec<T>>> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("additive arity {m} must be at least 2")));
    }
    let mut rings = Vec::new();
    for b in 2..=b_max {
        let bt = scalar::<T>(b);
        for a in 1..b {
            let at = scalar::<T>(a);
            if !i_divisible(&at, &bt, m) {
                continue;
            }
            for n in (2..=n_max).filter(|&n| j_divisible(&at, &bt, n)) {
                rings.push(RingSpec::new(at.clone(), bt.clone(), m, n)?);
            }
        }
    }
    if rings.is_empty() {
        return Err(Error::NotFound(format!("no ring with additive arity {m} and b <= {b_max}")));
    }
    Ok(order_rings(rings, seed))
}

/// Rings `(a,b,1+g,n_target)` with `a < b <= b_max` and `b | a^n_target - a`.
pub fn rings_with_parameter<T: Int>(a: &T, n_target: u64, b_max: u64, seed: Option<u64>) -> Result<Vec<RingSpec<T>>> {
    if !a.is_positive() || n_target < 2 {
        return Err(Error::InvalidParams(format!("need a >= 1 and n >= 2, got a = {a}, n = {n_target}")));
    }
    let mut rings = Vec::new();
    let mut b = a.clone() + T::one();
    let limit = scalar::<T>(b_max);
    while b <= limit {
        if j_divisible(a, &b, n_target) {
            let g = b.clone() / a.gcd(&b);
            let m = g.to_u64().map(|g| g + 1).expect("g bounded by b_max");
            rings.push(RingSpec::new(a.clone(), b.clone(), m, n_target)?);
        }
        b = b + T::one();
    }
    if rings.is_empty() {
        return Err(Error::NotFound(format!("no ring for a = {a}, n = {n_target}, b <= {b_max}")));
    }
    Ok(order_rings(rings, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pairs(v: &[(u64, u64)]) -> Vec<ArityPair> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn invariant_i_examples() {
        assert_eq!(invariant_i(&5i64, &7, 8), Some(5));
        assert_eq!(invariant_i(&13i64, &17, 18), Some(13));
        assert_eq!(invariant_i(&2i64, &7, 4), None);
    }

    #[test]
    fn invariant_j_examples() {
        assert_eq!(invariant_j(&8i64, &21, 13), Some(26_178_848_280));
        assert_eq!(invariant_j(&5i64, &7, 13), Some(174_386_160));
        // 2^17 - 2 = 131070 is not a multiple of 7
        assert_eq!(invariant_j(&2i64, &7, 17), None);
        assert_eq!(invariant_j(&2i64, &7, 7), Some(18));
    }

    #[test]
    fn valid_pair_examples() {
        assert!(is_valid_pair(&5i64, &7, 15, 13));
        assert!(is_valid_pair(&2i64, &7, 15, 7));
        assert!(!is_valid_pair(&2i64, &7, 15, 17));
        for m in 2..=64 {
            for n in 2..=64 {
                assert!(!is_valid_pair(&4i64, &8, m, n));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert!(enumerate_arities(&5i64, &6, 10, 5).contains(&ArityPair::new(7, 3)));
        assert!(enumerate_arities(&4i64, &8, 64, 64).is_empty());
        let image = enumerate_arities(&196i64, &245, 60, 25);
        assert!(image.contains(&ArityPair::new(6, 20)));
        assert!(image.contains(&ArityPair::new(51, 21)));
        assert_eq!(enumerate_arities(&2i64, &7, 16, 8), pairs(&[(8, 4), (8, 7), (15, 4), (15, 7)]));
    }

    #[test]
    fn enumerate_is_sorted() {
        let image = enumerate_arities(&11i64, &15, 100, 30);
        assert!(image.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn params_examples() {
        let found: Vec<(i64, i64)> = params_for_arity(7, 3, 25);
        for p in [(5, 6), (9, 18), (11, 22)] {
            assert!(found.contains(&p), "{p:?}");
        }
        assert!(params_for_arity::<i64>(8, 4, 10).contains(&(2, 7)));
        // b | 2a and b | a(a - 1) with a < b <= 5 leaves only [[1]]_2 (J = 0)
        assert_eq!(params_for_arity::<i64>(3, 2, 5), vec![(1, 2)]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(&13i64, &17), Some(4));
        assert_eq!(multiplicative_order(&11i64, &15), Some(2));
        assert_eq!(multiplicative_order(&1i64, &5), Some(1));
        assert_eq!(multiplicative_order(&4i64, &2), None);
        assert_eq!(multiplicative_order(&7i64, &1), Some(1));
    }

    #[test]
    fn family_examples() {
        let f = parametric_family(&13i64, &17);
        assert_eq!((f.g, f.order), (17, Some(4)));
        assert_eq!((f.predicted_m(1), f.predicted_m(2)), (Some(18), Some(35)));
        assert_eq!((f.predicted_n(1), f.predicted_n(2)), (Some(5), Some(9)));

        assert_eq!(parametric_family(&196i64, &245), ParametricFamily { g: 5, order: Some(1) });
        let f = parametric_family(&4i64, &8);
        assert_eq!((f.g, f.order), (2, None));
        assert_eq!(f.predicted_n(1), None);
    }

    fn has_ring(rings: &[RingSpec<BigInt>], a: i64, b: i64, m: u64, n: u64) -> bool {
        rings.iter().any(|r| (r.a(), r.b(), r.m(), r.n()) == (&BigInt::from(a), &BigInt::from(b), m, n))
    }

    #[test]
    fn additive_arity_rings() {
        // rings cache J exactly, so n up to 100 needs big integers
        let rings = rings_with_additive_arity::<BigInt>(15, 10, 100, None).unwrap();
        assert!(has_ring(&rings, 5, 7, 15, 13));
        assert!(has_ring(&rings, 5, 7, 15, 7));
        let rings = rings_with_additive_arity::<BigInt>(8, 7, 100, None).unwrap();
        assert!(has_ring(&rings, 2, 7, 8, 4));
        assert!(matches!(rings_with_additive_arity::<BigInt>(2, 5, 100, None), Err(Error::NotFound(_))));
    }

    #[test]
    fn additive_arity_rings_seeded() {
        let plain = rings_with_additive_arity::<i64>(15, 20, 12, None).unwrap();
        let s1 = rings_with_additive_arity::<i64>(15, 20, 12, Some(7)).unwrap();
        let s2 = rings_with_additive_arity::<i64>(15, 20, 12, Some(7)).unwrap();
        assert_eq!(s1, s2);
        let mut sorted = s1.clone();
        sorted.sort_by(|x, y| (x.b(), x.a(), x.m(), x.n()).cmp(&(y.b(), y.a(), y.m(), y.n())));
        assert_eq!(sorted, plain);
    }

    #[test]
    fn parameter_rings() {
        let rings = rings_with_parameter(&11i64, 3, 20, None).unwrap();
        let r15 = rings.iter().find(|r| *r.b() == 15).unwrap();
        assert_eq!(r15.m(), 16);
        assert!(is_valid_pair(&11i64, &15, 61, 3));

        let rings = rings_with_parameter(&7i64, 3, 10, None).unwrap();
        assert!(rings.iter().any(|r| *r.b() == 8));

        let rings = rings_with_parameter(&1i64, 3, 5, None).unwrap();
        assert_eq!(rings.iter().map(|r| *r.b()).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!(rings_with_parameter(&0i64, 3, 5, None).is_err());
    }

    #[test]
    fn bigint_agrees_with_i64() {
        for (a, b, n) in [(8i64, 21i64, 13u64), (27, 28, 3), (13, 17, 9)] {
            let small = invariant_j(&a, &b, n).map(BigInt::from);
            assert_eq!(small, invariant_j(&BigInt::from(a), &BigInt::from(b), n));
        }
    }
}
