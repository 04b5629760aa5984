//! Exact arithmetic in the ring of Eisenstein integers.
//!
//! Elements are pairs `a + b*tau` where `tau` is a primitive cube root of
//! unity, used only through the relation `tau^2 = -tau - 1`. `tau` is never
//! given a numeric value, so every result is exact and independent of which
//! complex root is meant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Failure modes of [`EisensteinInt::exact_div`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by zero in Z[tau]")]
    ZeroDivisor,
    #[error("{num} is not divisible by {den} in Z[tau]")]
    NotDivisible { num: EisensteinInt, den: EisensteinInt },
}

/// An Eisenstein integer `a + b*tau` with arbitrary-precision components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinInt {
    a: BigInt,
    b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn tau() -> Self {
        Self::new(0, 1)
    }

    /// Coefficient of 1.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient of tau.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Conjugate under `tau -> tau^2`: maps `a + b*tau` to `(a-b) - b*tau`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    /// The norm `a^2 - a*b + b^2`. Nonnegative and multiplicative.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Exact quotient `self / y` in Z[tau].
    ///
    /// Multiplies by the conjugate of `y` and checks that both components
    /// are divisible by `norm(y)`; no Euclidean gcd machinery is needed.
    pub fn exact_div(&self, y: &Self) -> Result<Self, DivisionError> {
        if y.is_zero() {
            return Err(DivisionError::ZeroDivisor);
        }
        let n = y.norm();
        let num = self * &y.conj();
        if (&num.a % &n).is_zero() && (&num.b % &n).is_zero() {
            Ok(Self::new(num.a / &n, num.b / &n))
        } else {
            Err(DivisionError::NotDivisible { num: self.clone(), den: y.clone() })
        }
    }

    /// `(a + b) mod 3`, normalized to {0, 1, 2}.
    pub fn mod3_class(&self) -> u8 {
        let r = ((&self.a + &self.b) % 3 + 3) % 3;
        u8::try_from(r).expect("residue is in 0..3")
    }

    /// Components as machine integers, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((i64::try_from(&self.a).ok()?, i64::try_from(&self.b).ok()?))
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::new(-&self.a, -&self.b)
    }
}

// (a1 + b1 tau)(a2 + b2 tau) reduced by tau^2 = -tau - 1.
impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bb = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bb;
        let b = &self.a * &rhs.b + &rhs.a * &self.b - bb;
        EisensteinInt::new(a, b)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

/// Canonical rendering `m+n*tau` with normalized signs, e.g. `-6-2*tau`,
/// `2-tau`, `-3+tau`, `0`.
impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            first = false;
        }
        if !self.b.is_zero() {
            let mag = self.b.abs();
            if self.b.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if mag == BigInt::from(1) {
                write!(f, "tau")?;
            } else {
                write!(f, "{mag}*tau")?;
            }
        }
        Ok(())
    }
}
