//! The field of fractions of Z[tau]: rational combinations `a + b*tau`.
//!
//! Coefficients of projective coordinates and curve equations live here.
//! Same convention as [`crate::eisenstein`]: `tau^2 = -tau - 1`, nothing
//! is ever evaluated numerically.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::eisenstein::EisensteinInt;

/// An element `a + b*tau` of Q(tau), with exact rational components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QTau {
    a: BigRational,
    b: BigRational,
}

impl QTau {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `m + n*tau` from integer components.
    pub fn from_ints(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        Self::new(
            BigRational::from_integer(m.into()),
            BigRational::from_integer(n.into()),
        )
    }

    pub fn from_int(m: impl Into<BigInt>) -> Self {
        Self::from_ints(m, 0)
    }

    pub fn from_eisenstein(x: &EisensteinInt) -> Self {
        Self::from_ints(x.a().clone(), x.b().clone())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn tau() -> Self {
        Self::from_ints(0, 1)
    }

    /// `tau^2 = -1 - tau`.
    pub fn tau_sq() -> Self {
        Self::from_ints(-1, -1)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when both components are integers.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Galois conjugate `tau -> tau^2`: maps `a + b*tau` to `(a-b) - b*tau`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    /// `a^2 - a*b + b^2`; zero only at zero, otherwise positive.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Multiplicative inverse; panics on zero (checked by callers).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(tau)");
        let n = self.norm();
        let c = self.conj();
        Self::new(c.a / &n, c.b / &n)
    }
}

impl Add for &QTau {
    type Output = QTau;
    fn add(self, rhs: &QTau) -> QTau {
        QTau::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QTau {
    type Output = QTau;
    fn sub(self, rhs: &QTau) -> QTau {
        QTau::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &QTau {
    type Output = QTau;
    fn neg(self) -> QTau {
        QTau::new(-&self.a, -&self.b)
    }
}

impl Mul for &QTau {
    type Output = QTau;
    fn mul(self, rhs: &QTau) -> QTau {
        let bb = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bb;
        let b = &self.a * &rhs.b + &rhs.a * &self.b - bb;
        QTau::new(a, b)
    }
}

impl Div for &QTau {
    type Output = QTau;
    fn div(self, rhs: &QTau) -> QTau {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QTau {
            type Output = QTau;
            fn $method(self, rhs: QTau) -> QTau {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for QTau {
    type Output = QTau;
    fn neg(self) -> QTau {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.a.is_zero() {
            write_rational(f, &self.a)?;
            first = false;
        }
        if !self.b.is_zero() {
            let mag = self.b.abs();
            if self.b.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if mag.is_one() {
                write!(f, "tau")?;
            } else {
                write_rational(f, &mag)?;
                write!(f, "*tau")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(a: i64, b: i64) -> QTau {
        QTau::from_ints(a, b)
    }

    #[test]
    fn tau_relation() {
        let tau = QTau::tau();
        assert_eq!(&tau * &tau, QTau::tau_sq());
        assert_eq!(
            &(&QTau::one() + &tau) + &QTau::tau_sq(),
            QTau::zero(),
            "1 + tau + tau^2 = 0"
        );
    }

    #[test]
    fn inverse() {
        let x = qt(3, -2);
        assert!((&x * &x.inv()).is_one());
        let third = &QTau::one() / &qt(3, 0);
        assert_eq!(&third * &qt(3, 0), QTau::one());
        // 1/tau = tau^2
        assert_eq!(QTau::tau().inv(), QTau::tau_sq());
    }

    #[test]
    fn galois_conjugate_is_ring_map() {
        let x = qt(2, 5);
        let y = qt(-1, 3);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        assert_eq!(QTau::tau().conj(), QTau::tau_sq());
    }

    #[test]
    fn norm_positive_definite() {
        assert!(QTau::zero().norm().is_zero());
        for (a, b) in [(1, 0), (0, 1), (-2, -1), (3, 5)] {
            assert!(qt(a, b).norm().is_positive());
        }
    }
}
