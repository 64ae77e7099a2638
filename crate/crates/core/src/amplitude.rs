//! Amplitude polynomials.
//!
//! A transmitted amplitude is the result of a polyadic power of `nu_m` or
//! `mu_n` applied to the representatives `a + b k_j`, `j = 1..=L`, where the
//! secret [`RepPolynomial`] fixes `k_j` and `L = l(arity - 1) + 1`.
//!
//! Summation amplitudes have the closed form `a L + b K(L)` with
//! `K(L) = sum k_j`. Multiplication amplitudes come in three conventions, see
//! [`AmplitudeConvention`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::arity::{invariant_i, invariant_j};
use crate::error::{Error, Result};
use crate::polyadic::AdmissibleCount;
use crate::scalar::{pow, Int};

/// Maximum degree accepted by [`RepPolynomial::new`].
pub const MAX_REP_DEGREE: usize = 16;

/// Integer polynomial `j -> k_j`, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Int> RepPolynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        Self::with_degree_cap(coeffs, MAX_REP_DEGREE)
    }

    pub fn with_degree_cap(mut coeffs: Vec<T>, cap: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("representative polynomial needs a coefficient".into()));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() - 1 > cap {
            return Err(Error::InvalidParams(format!("degree {} exceeds cap {cap}", coeffs.len() - 1)));
        }
        Ok(Self { coeffs })
    }

    /// `k_j = j`.
    pub fn identity() -> Self {
        Self { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at `j`.
    pub fn eval(&self, j: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * j.clone() + c.clone())
    }

    pub fn eval_at(&self, j: u64) -> T {
        self.eval(&T::from_u64(j).expect("index fits scalar"))
    }
}

impl<T: Int> fmt::Display for RepPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(deg == 0 && first) {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match deg {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match deg {
                0 => {}
                1 => write!(f, "j")?,
                _ => write!(f, "j^{deg}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `K(L) = sum_{j=1}^{L} k_j`.
pub fn k_sum<T: Int>(poly: &RepPolynomial<T>, count: u64) -> T {
    (1..=count).fold(T::zero(), |acc, j| acc + poly.eval_at(j))
}

/// Summation amplitude `a L + b K(L)` with `L = power (m - 1) + 1`.
pub fn sum_amplitude<T: Int>(a: &T, b: &T, m: u64, power: u64, poly: &RepPolynomial<T>) -> Result<T> {
    if invariant_i(a, b, m).is_none() {
        return Err(Error::InvalidArity(format!("I^({m})({a},{b}) is not an integer")));
    }
    let count = AdmissibleCount::new(m, power)?.count();
    Ok(a.clone() * T::from_u64(count).expect("count fits scalar") + b.clone() * k_sum(poly, count))
}

/// `sum_{j=1}^{count} j^r` by direct summation.
pub fn power_sum<T: Int>(r: u64, count: u64) -> T {
    (1..=count).fold(T::zero(), |acc, j| acc + pow(&T::from_u64(j).expect("index fits scalar"), r))
}

/// Bernoulli numbers `B_0..=B_r` with `B_1 = +1/2`.
fn bernoulli<T: Int>(r: usize) -> Vec<Ratio<T>> {
    let mut b: Vec<Ratio<T>> = Vec::with_capacity(r + 1);
    for k in 0..=r {
        // sum_{j<=k} C(k+1, j) B_j = k + 1 (the B_1 = +1/2 recurrence)
        let mut acc = Ratio::from_integer(T::from_usize(k + 1).unwrap());
        let mut binom = T::one();
        for (j, bj) in b.iter().enumerate() {
            acc = acc - bj.clone() * Ratio::from_integer(binom.clone());
            binom = binom * T::from_usize(k + 1 - j).unwrap() / T::from_usize(j + 1).unwrap();
        }
        b.push(acc / Ratio::from_integer(binom));
    }
    b
}

/// Closed-form power sum via Bernoulli numbers:
/// `S_r(L) = 1/(r+1) sum_{p=0}^{r} C(r+1,p) B_p L^{r+1-p}`.
pub fn power_sum_closed_form<T: Int>(r: u64, count: u64) -> T {
    let r = r as usize;
    let bern = bernoulli::<T>(r);
    let l = T::from_u64(count).unwrap();
    let mut total = Ratio::from_integer(T::zero());
    let mut binom = T::one();
    for (p, bp) in bern.iter().enumerate() {
        let term = Ratio::from_integer(binom.clone() * pow(&l, (r + 1 - p) as u64));
        total = total + bp.clone() * term;
        binom = binom * T::from_usize(r + 1 - p).unwrap() / T::from_usize(p + 1).unwrap();
    }
    let total = total / Ratio::from_integer(T::from_usize(r + 1).unwrap());
    debug_assert!(total.is_integer());
    total.to_integer()
}

/// `e_i(ks)`, the elementary symmetric polynomial of degree `i`.
pub fn elementary_symmetric<T: Int>(ks: &[T], i: usize) -> Result<T> {
    if i < 1 || i > ks.len() {
        return Err(Error::IndexRange { index: i, len: ks.len() });
    }
    Ok(elementary_symmetric_all(ks).swap_remove(i))
}

/// `[e_0, e_1, ..., e_len]`.
fn elementary_symmetric_all<T: Int>(ks: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); ks.len() + 1];
    e[0] = T::one();
    for (seen, k) in ks.iter().enumerate() {
        for d in (1..=seen + 1).rev() {
            e[d] = e[d].clone() + e[d - 1].clone() * k.clone();
        }
    }
    e
}

/// Checks `prod (a + b k_j) = a^L + b sum_i a^{L-i} b^{i-1} e_i(ks)`.
pub fn product_expansion_check<T: Int>(a: &T, b: &T, ks: &[T]) -> bool {
    let lhs = ks.iter().fold(T::one(), |acc, k| acc * (a.clone() + b.clone() * k.clone()));
    let l = ks.len() as u64;
    let e = elementary_symmetric_all(ks);
    let tail = (1..=ks.len()).fold(T::zero(), |acc, i| {
        acc + pow(a, l - i as u64) * pow(b, i as u64 - 1) * e[i].clone()
    });
    lhs == pow(a, l) + b.clone() * tail
}

/// How ring data turns into a multiplication amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AmplitudeConvention {
    /// The genuine iterated product `prod_{j=1}^{L} (a + b k_j)`.
    #[default]
    TrueProduct,
    /// `a^L + b sum_{r=1}^{L} a^{L-r} b^{r-1} P_r`, `P_r = sum_j k_j^r`
    /// (power sums standing in for elementary symmetric polynomials).
    PaperFaulhaber,
    /// Fixed closed forms for `n = 3`, powers 1 and 2, `k_j = j`.
    PaperExample,
}

impl AmplitudeConvention {
    pub const ALL: [Self; 3] = [Self::TrueProduct, Self::PaperFaulhaber, Self::PaperExample];

    pub fn tag(&self) -> &'static str {
        match self {
            Self::TrueProduct => "true-product",
            Self::PaperFaulhaber => "paper-faulhaber",
            Self::PaperExample => "paper-example",
        }
    }

    /// Rejects parameter combinations a convention does not define.
    pub fn check<T: Int>(&self, n: u64, power: u64, poly: &RepPolynomial<T>) -> Result<()> {
        if *self == Self::PaperExample && !(n == 3 && (power == 1 || power == 2) && poly.is_identity()) {
            return Err(Error::ConventionViolation(format!(
                "paper-example needs n = 3, power in {{1,2}} and k_j = j; got n = {n}, power = {power}, k_j = {poly}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for AmplitudeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AmplitudeConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown amplitude convention {s:?}")))
    }
}

/// Multiplication amplitude for `L = power (n - 1) + 1` operands.
pub fn mult_amplitude<T: Int>(
    a: &T,
    b: &T,
    n: u64,
    power: u64,
    poly: &RepPolynomial<T>,
    conv: AmplitudeConvention,
) -> Result<T> {
    if invariant_j(a, b, n).is_none() {
        return Err(Error::InvalidArity(format!("J^({n})({a},{b}) is not an integer")));
    }
    conv.check(n, power, poly)?;
    let count = AdmissibleCount::new(n, power)?.count();
    let ks = || (1..=count).map(|j| poly.eval_at(j));
    let c = |x: i64| T::from_small(x);
    let amp = match conv {
        AmplitudeConvention::TrueProduct => ks().fold(T::one(), |acc, k| acc * (a.clone() + b.clone() * k)),
        AmplitudeConvention::PaperFaulhaber => {
            let tail = (1..=count).fold(T::zero(), |acc, r| {
                let p_r = ks().fold(T::zero(), |s, k| s + pow(&k, r));
                acc + pow(a, count - r) * pow(b, r - 1) * p_r
            });
            pow(a, count) + b.clone() * tail
        }
        AmplitudeConvention::PaperExample => {
            let (a, b) = (a.clone(), b.clone());
            if power == 1 {
                pow(&a, 3) + b.clone() * (c(6) * pow(&a, 2) + c(14) * a.clone() * b + c(36))
            } else {
                pow(&a, 5)
                    + b.clone()
                        * (c(15) * pow(&a, 4)
                            + c(55) * pow(&a, 3) * b.clone()
                            + c(225) * pow(&a, 2) * pow(&b, 2)
                            + c(979) * a.clone() * pow(&b, 3)
                            + c(4425) * pow(&b, 4))
            }
        }
    };
    Ok(amp)
}
