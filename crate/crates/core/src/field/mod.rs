//! Exact arithmetic: arbitrary-precision rationals, univariate polynomials
//! with Sturm-sequence root counting, and a number field `Q(γ)` given by a
//! squarefree defining polynomial together with an isolating interval for
//! the distinguished real root.
//!
//! Everything above this module is written against two small traits:
//! [`Ring`] (what a symbolic or numeric coefficient needs to support) and
//! [`Scalar`] (a ring with exact signs and division). [`Rational`] and
//! [`FieldElement`] are the two exact scalars; `f64` also implements
//! [`Scalar`] for the heuristic search paths.

mod number_field;
mod poly;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use number_field::{reduce_mod_p, FieldElement, NumberField};
pub use poly::{isolate_root, sturm_count, sturm_sequence, IsolatingInterval, Poly};
pub use rational::{format_decimal, format_rational, parse_rational, rat, round_half_even, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),
    #[error("empty or inverted interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("expected exactly one root in the interval, Sturm count is {0}")]
    NotIsolating(usize),
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial must have degree at least 1")]
    ConstantModulus,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Exact sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Commutative ring operations needed by the CSP formulas. Constants are
/// produced relative to an existing value via [`Ring::embed`], which lets
/// elements that carry context (a number field, a symbolic basis) build
/// compatible constants.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The rational `r` as an element of the same ring as `self`.
    fn embed(&self, r: &Rational) -> Self;

    fn zero_like(&self) -> Self {
        self.embed(&Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.embed(&rat(1, 1))
    }

    fn embed_int(&self, n: i64) -> Self {
        self.embed(&rat(n, 1))
    }
}

/// An ordered field with exact (or, for `f64`, best-effort) signs.
pub trait Scalar: Ring {
    fn sign(&self) -> Sign;
    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError>;
    fn to_f64(&self) -> f64;

    fn cmp_to(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign().to_ordering()
    }

    fn is_zero_value(&self) -> bool {
        self.sign() == Sign::Zero
    }
}

/// Smaller of two scalars under exact comparison; `a` on ties.
pub fn min_scalar<S: Scalar>(a: S, b: S) -> S {
    if b.cmp_to(&a) == Ordering::Less {
        b
    } else {
        a
    }
}

impl Ring for Rational {
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for Rational {
    fn sign(&self) -> Sign {
        Sign::of_rational(self)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Ring for f64 {
    fn embed(&self, r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn sign(&self) -> Sign {
        if *self > 0.0 {
            Sign::Positive
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if *rhs == 0.0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}
