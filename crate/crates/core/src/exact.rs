//! Exact unbounded-integer arithmetic: factorials, falling factorials and
//! binomial coefficients with pinned edge-case conventions.
//!
//! Every identity in this crate is evaluated over [`ExactInt`]; there is no
//! floating point and no fixed-width overflow anywhere in the numeric path.
//! The conventions are:
//!
//! * `falling_factorial(n, 0) = 1` and `binomial(n, 0) = 1` (empty product),
//! * `falling_factorial(n, k) = 0` and `binomial(n, k) = 0` when `k > n`
//!   (there is no injection of a `k`-set into a smaller set),
//! * negative `n` or `k` is a hard error, never a silent zero.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Signed integer of unbounded magnitude.
///
/// A thin wrapper over a big integer so the rest of the crate can talk about
/// identity values without committing to a backing representation. Arithmetic
/// and comparison are exact for all magnitudes.
///
/// ```
/// use identikit::exact::ExactInt;
///
/// let a = ExactInt::from(1_000_000_007u64);
/// let big = &a * &a * &a;
/// assert_eq!(big.to_string(), "1000000021000000147000000343");
/// ```
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(BigInt);

impl ExactInt {
    pub fn zero() -> Self {
        ExactInt(BigInt::zero())
    }

    pub fn one() -> Self {
        ExactInt(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The exact decimal rendering; this is the only serialized form.
    pub fn to_decimal(&self) -> String {
        self.0.to_str_radix(10)
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactInt({})", self.0)
    }
}

impl FromStr for ExactInt {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(ExactInt(BigInt::from_str(s)?))
    }
}

macro_rules! exact_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactInt {
            fn from(v: $t) -> Self {
                ExactInt(BigInt::from(v))
            }
        }
    )*};
}

exact_from_prim!(i32, i64, i128, u32, u64, u128, usize);

impl From<BigInt> for ExactInt {
    fn from(v: BigInt) -> Self {
        ExactInt(v)
    }
}

macro_rules! exact_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: ExactInt) -> ExactInt {
                ExactInt(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactInt> for ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: &ExactInt) -> ExactInt {
                ExactInt(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactInt> for &ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: ExactInt) -> ExactInt {
                ExactInt((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&ExactInt> for &ExactInt {
            type Output = ExactInt;
            fn $method(self, rhs: &ExactInt) -> ExactInt {
                ExactInt((&self.0).$method(&rhs.0))
            }
        }
    };
}

exact_binop!(Add, add);
exact_binop!(Sub, sub);
exact_binop!(Mul, mul);

impl Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        ExactInt(-self.0)
    }
}

impl AddAssign<ExactInt> for ExactInt {
    fn add_assign(&mut self, rhs: ExactInt) {
        self.0 += rhs.0;
    }
}

impl AddAssign<&ExactInt> for ExactInt {
    fn add_assign(&mut self, rhs: &ExactInt) {
        self.0 += &rhs.0;
    }
}

impl Sum for ExactInt {
    fn sum<I: Iterator<Item = ExactInt>>(iter: I) -> ExactInt {
        let mut acc = ExactInt::zero();
        for v in iter {
            acc += v;
        }
        acc
    }
}

/// An argument fell outside the operation's domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{op}: argument {name} must be nonnegative, got {value}")]
pub struct DomainError {
    pub op: &'static str,
    pub name: &'static str,
    pub value: i64,
}

fn require_nonnegative(op: &'static str, name: &'static str, value: i64) -> Result<(), DomainError> {
    if value < 0 {
        Err(DomainError { op, name, value })
    } else {
        Ok(())
    }
}

/// `n! = 1 * 2 * ... * n`, with `0! = 1`. Rejects negative `n`.
///
/// ```
/// use identikit::exact::{factorial, ExactInt};
///
/// assert_eq!(factorial(6).unwrap(), ExactInt::from(720u64));
/// assert!(factorial(-1).is_err());
/// ```
pub fn factorial(n: i64) -> Result<ExactInt, DomainError> {
    require_nonnegative("factorial", "n", n)?;
    let mut acc = BigInt::one();
    for f in 2..=n {
        acc *= f;
    }
    Ok(ExactInt(acc))
}

/// The falling factorial `P(n, k) = n * (n-1) * ... * (n-k+1)`, the number of
/// ordered injections of a `k`-set into an `n`-set.
///
/// Evaluated as an iterative product; the factorial-ratio form `n!/(n-k)!` is
/// deliberately not used here (it appears only as an independent test oracle).
/// Returns 1 when `k = 0` and 0 when `k > n`; rejects negative arguments.
///
/// ```
/// use identikit::exact::{falling_factorial, ExactInt};
///
/// assert_eq!(falling_factorial(5, 2).unwrap(), ExactInt::from(20u64));
/// assert_eq!(falling_factorial(3, 5).unwrap(), ExactInt::zero());
/// ```
pub fn falling_factorial(n: i64, k: i64) -> Result<ExactInt, DomainError> {
    require_nonnegative("falling_factorial", "n", n)?;
    require_nonnegative("falling_factorial", "k", k)?;
    if k > n {
        return Ok(ExactInt::zero());
    }
    let mut acc = BigInt::one();
    for f in (n - k + 1)..=n {
        acc *= f;
    }
    Ok(ExactInt(acc))
}

/// The binomial coefficient `C(n, k)`, the number of `k`-subsets of an
/// `n`-set. Returns 0 when `k > n`; rejects negative arguments.
///
/// ```
/// use identikit::exact::{binomial, ExactInt};
///
/// assert_eq!(binomial(4, 2).unwrap(), ExactInt::from(6u64));
/// assert_eq!(binomial(2, 5).unwrap(), ExactInt::zero());
/// ```
pub fn binomial(n: i64, k: i64) -> Result<ExactInt, DomainError> {
    require_nonnegative("binomial", "n", n)?;
    require_nonnegative("binomial", "k", k)?;
    if k > n {
        return Ok(ExactInt::zero());
    }
    // Multiply by one row entry at a time; each intermediate quotient is a
    // binomial coefficient, so the division is exact.
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for f in 0..k {
        acc = acc * (n - f) / (f + 1);
    }
    Ok(ExactInt(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Factorial-ratio oracle for P(n, k): computes n!/(n-k)! by actually
    /// building both factorials, independent of the iterative-product path.
    fn perm_by_factorial_ratio(n: i64, k: i64) -> ExactInt {
        if k > n {
            return ExactInt::zero();
        }
        let num = factorial(n).unwrap();
        let den = factorial(n - k).unwrap();
        ExactInt(num.0 / den.0)
    }

    /// Factorial-ratio oracle for C(n, k) = n!/(k!(n-k)!).
    fn binom_by_factorial_ratio(n: i64, k: i64) -> ExactInt {
        if k > n {
            return ExactInt::zero();
        }
        let num = factorial(n).unwrap();
        let den = factorial(k).unwrap().0 * factorial(n - k).unwrap().0;
        ExactInt(num.0 / den)
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0).unwrap(), ExactInt::one());
        assert_eq!(factorial(1).unwrap(), ExactInt::one());
        assert_eq!(factorial(6).unwrap(), ExactInt::from(720u64));
    }

    #[test]
    fn factorial_rejects_negative() {
        let err = factorial(-3).unwrap_err();
        assert_eq!(err.name, "n");
        assert_eq!(err.value, -3);
    }

    #[test]
    fn falling_factorial_pinned_values() {
        assert_eq!(falling_factorial(5, 0).unwrap(), ExactInt::one());
        // 5!/3! = 20 by the factorial-ratio oracle.
        assert_eq!(perm_by_factorial_ratio(5, 2), ExactInt::from(20u64));
        assert_eq!(falling_factorial(5, 2).unwrap(), ExactInt::from(20u64));
        // No injections of a 5-set into a 3-set.
        assert_eq!(falling_factorial(3, 5).unwrap(), ExactInt::zero());
    }

    #[test]
    fn falling_factorial_rejects_negative_arguments() {
        assert_eq!(falling_factorial(-1, 2).unwrap_err().name, "n");
        assert_eq!(falling_factorial(4, -2).unwrap_err().name, "k");
    }

    #[test]
    fn binomial_pinned_values() {
        // 4!/(2!*2!) = 6 by the factorial-ratio oracle.
        assert_eq!(binom_by_factorial_ratio(4, 2), ExactInt::from(6u64));
        assert_eq!(binomial(4, 2).unwrap(), ExactInt::from(6u64));
        assert_eq!(binomial(7, 0).unwrap(), ExactInt::one());
        assert_eq!(binomial(2, 5).unwrap(), ExactInt::zero());
    }

    #[test]
    fn binomial_rejects_negative_arguments() {
        assert!(binomial(-1, 0).is_err());
        assert!(binomial(3, -1).is_err());
    }

    #[test]
    fn agrees_with_factorial_ratio_oracles() {
        for n in 0..=60 {
            for k in 0..=n + 3 {
                assert_eq!(
                    falling_factorial(n, k).unwrap(),
                    perm_by_factorial_ratio(n, k),
                    "P({n},{k})"
                );
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binom_by_factorial_ratio(n, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn no_precision_loss_at_large_n() {
        // P(1000, 1000) = 1000! has 2568 decimal digits; spot-check its tail
        // against the factorial path and its exact digit count.
        let p = falling_factorial(1000, 1000).unwrap();
        assert_eq!(p, factorial(1000).unwrap());
        assert_eq!(p.to_decimal().len(), 2568);
    }

    #[test]
    fn exact_int_arithmetic_roundtrips_decimal() {
        let v: ExactInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(v.to_decimal(), "123456789012345678901234567890");
        assert_eq!((&v - &v), ExactInt::zero());
        assert!((ExactInt::zero() - ExactInt::one()).is_negative());
    }
}
