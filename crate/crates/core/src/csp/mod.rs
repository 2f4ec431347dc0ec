//! The quadratic constraint systems on the eleven cell sizes `x_ij`.
//!
//! * CSP-A: strict inequalities (1)–(3), the degree bound (4), sign
//!   constraints (5) and (6), and `F > 0` (7).
//! * CSP-B: the same with (1)–(3) tightened to equalities and (5) to
//!   `x14 = x24 = x34 = x23 = 0`.
//!
//! [`adjust`] maps a CSP-A solution to a CSP-B solution; [`extract_assignment`]
//! reads the cell sizes off a digraph; [`YSubstitution`] reduces CSP-B at
//! `μ = γ` to four free variables.

mod adjust;
mod extract;
mod ymap;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{GraphError, PartitionCounts};
use crate::field::{FieldError, Rational, Ring, Scalar, Sign};

pub use adjust::{adjust, AdjustOutcome, AdjustStep};
pub use extract::{counting_bound_holds, extract_assignment, Selection};
pub use ymap::{AssignmentY, YSubstitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CspError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("step {step}: {detail}")]
    Invariant { step: &'static str, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub const VARIABLE_NAMES: [&str; 11] = [
    "x11", "x12", "x13", "x14", "x21", "x22", "x23", "x24", "x32", "x33", "x34",
];

/// Values for the eleven CSP variables (`x31` is identically zero and absent).
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentX<S> {
    pub x11: S,
    pub x12: S,
    pub x13: S,
    pub x14: S,
    pub x21: S,
    pub x22: S,
    pub x23: S,
    pub x24: S,
    pub x32: S,
    pub x33: S,
    pub x34: S,
}

impl<S: Clone> AssignmentX<S> {
    /// Values in [`VARIABLE_NAMES`] order.
    pub fn to_array(&self) -> [S; 11] {
        [
            self.x11.clone(),
            self.x12.clone(),
            self.x13.clone(),
            self.x14.clone(),
            self.x21.clone(),
            self.x22.clone(),
            self.x23.clone(),
            self.x24.clone(),
            self.x32.clone(),
            self.x33.clone(),
            self.x34.clone(),
        ]
    }

    pub fn from_array(v: [S; 11]) -> Self {
        let [x11, x12, x13, x14, x21, x22, x23, x24, x32, x33, x34] = v;
        AssignmentX {
            x11,
            x12,
            x13,
            x14,
            x21,
            x22,
            x23,
            x24,
            x32,
            x33,
            x34,
        }
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> AssignmentX<T> {
        AssignmentX::from_array(self.to_array().map(|v| f(&v)))
    }

    pub fn get(&self, name: &str) -> Option<S> {
        let i = VARIABLE_NAMES.iter().position(|n| *n == name)?;
        Some(self.to_array()[i].clone())
    }
}

impl<S: Ring> AssignmentX<S> {
    pub fn zeros(like: &S) -> Self {
        AssignmentX::from_array(std::array::from_fn(|_| like.zero_like()))
    }

    /// `x11 + x12 + x13 + x14 = d⁺(u)`.
    pub fn first_row(&self) -> S {
        self.x11.clone() + self.x12.clone() + self.x13.clone() + self.x14.clone()
    }

    /// `x21 + x22 + x23 + x24 = d⁺⁺(u)`.
    pub fn second_row(&self) -> S {
        self.x21.clone() + self.x22.clone() + self.x23.clone() + self.x24.clone()
    }

    /// `x32 + x33 + x34 = d⁺⁺⁺(u)`.
    pub fn third_row(&self) -> S {
        self.x32.clone() + self.x33.clone() + self.x34.clone()
    }

    /// `μ(x11 + x21) − (x12 + x22 + x32)`: how far `v` is from being μ-Seymour.
    pub fn v_gap(&self, mu: &S) -> S {
        mu.clone() * (self.x11.clone() + self.x21.clone())
            - (self.x12.clone() + self.x22.clone() + self.x32.clone())
    }

    /// Componentwise `self + t·other`.
    pub fn add_scaled(&self, t: &S, other: &Self) -> Self {
        let a = self.to_array();
        let b = other.to_array();
        AssignmentX::from_array(std::array::from_fn(|i| {
            a[i].clone() + t.clone() * b[i].clone()
        }))
    }
}

impl AssignmentX<Rational> {
    /// Cell sizes as rationals.
    pub fn from_counts(c: &PartitionCounts) -> Self {
        let r = |i, j| Rational::from_integer(c.get(i, j).into());
        AssignmentX {
            x11: r(1, 1),
            x12: r(1, 2),
            x13: r(1, 3),
            x14: r(1, 4),
            x21: r(2, 1),
            x22: r(2, 2),
            x23: r(2, 3),
            x24: r(2, 4),
            x32: r(3, 2),
            x33: r(3, 3),
            x34: r(3, 4),
        }
    }
}

/// The quadratic quantity
///
/// ```text
/// F = x21(x32 − x11 − x13) + x22(x32 + x23 + x33) + x23·x12 − x14(x12 + x21 + x22)
///     + (x21 + x22)²/2 − (w·x11² + x12²)/2 + (w − 1)·x11·x12
/// ```
pub fn eval_f<R: Ring>(x: &AssignmentX<R>, w: &R) -> R {
    let half = w.embed(&crate::field::rat(1, 2));
    let one = w.one_like();
    let s = x.x21.clone() + x.x22.clone();
    x.x21.clone() * (x.x32.clone() - x.x11.clone() - x.x13.clone())
        + x.x22.clone() * (x.x32.clone() + x.x23.clone() + x.x33.clone())
        + x.x23.clone() * x.x12.clone()
        - x.x14.clone() * (x.x12.clone() + x.x21.clone() + x.x22.clone())
        + half.clone() * s.clone() * s
        - half * (w.clone() * x.x11.clone() * x.x11.clone() + x.x12.clone() * x.x12.clone())
        + (w.clone() - one) * x.x11.clone() * x.x12.clone()
}

/// Analytic partial derivatives of [`eval_f`], in variable order.
pub fn gradient_f<R: Ring>(x: &AssignmentX<R>, w: &R) -> AssignmentX<R> {
    let one = w.one_like();
    let wm1 = w.clone() - one;
    let s = x.x21.clone() + x.x22.clone();
    let zero = w.zero_like();
    AssignmentX {
        x11: -x.x21.clone() - w.clone() * x.x11.clone() + wm1.clone() * x.x12.clone(),
        x12: x.x23.clone() - x.x14.clone() - x.x12.clone() + wm1 * x.x11.clone(),
        x13: -x.x21.clone(),
        x14: -(x.x12.clone() + x.x21.clone() + x.x22.clone()),
        x21: x.x32.clone() - x.x11.clone() - x.x13.clone() - x.x14.clone() + s.clone(),
        x22: x.x32.clone() + x.x23.clone() + x.x33.clone() - x.x14.clone() + s,
        x23: x.x22.clone() + x.x12.clone(),
        x24: zero.clone(),
        x32: x.x21.clone() + x.x22.clone(),
        x33: x.x22.clone(),
        x34: zero,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CspParams<S> {
    pub mu: S,
    pub w: S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CspSystem {
    #[serde(rename = "CSP-A")]
    A,
    #[serde(rename = "CSP-B")]
    B,
}

impl fmt::Display for CspSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CspSystem::A => "CSP-A",
            CspSystem::B => "CSP-B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Strict,
    Nonstrict,
    Equality,
}

impl ConstraintKind {
    /// Whether a slack of the given sign satisfies the constraint.
    pub fn accepts(self, slack: Sign) -> bool {
        match self {
            ConstraintKind::Strict => slack == Sign::Positive,
            ConstraintKind::Nonstrict => slack != Sign::Negative,
            ConstraintKind::Equality => slack == Sign::Zero,
        }
    }
}

/// One checked constraint; `slack` is `lhs − rhs` for `lhs (>|≥|=) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRecord<S> {
    pub label: u8,
    pub name: &'static str,
    pub kind: ConstraintKind,
    pub satisfied: bool,
    pub slack: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport<S> {
    pub system: CspSystem,
    pub records: Vec<ConstraintRecord<S>>,
}

impl<S> ConstraintReport<S> {
    pub fn satisfied(&self) -> bool {
        self.records.iter().all(|r| r.satisfied)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintRecord<S>> {
        self.records.iter().filter(|r| !r.satisfied)
    }

    /// Whether every record of the constraint group `label` holds.
    pub fn group_holds(&self, label: u8) -> bool {
        self.records
            .iter()
            .filter(|r| r.label == label)
            .all(|r| r.satisfied)
    }

    pub fn failed_labels(&self) -> Vec<u8> {
        let mut labels: Vec<u8> = self.failures().map(|r| r.label).collect();
        labels.dedup();
        labels
    }
}

fn record<S: Scalar>(
    label: u8,
    name: &'static str,
    kind: ConstraintKind,
    slack: S,
) -> ConstraintRecord<S> {
    ConstraintRecord {
        label,
        name,
        kind,
        satisfied: kind.accepts(slack.sign()),
        slack,
    }
}

fn check<S: Scalar>(x: &AssignmentX<S>, p: &CspParams<S>, system: CspSystem) -> ConstraintReport<S> {
    use ConstraintKind::*;
    let mu = &p.mu;
    let mu2 = mu.clone() * mu.clone();
    let (rows, zeros) = match system {
        CspSystem::A => (Strict, Nonstrict),
        CspSystem::B => (Equality, Equality),
    };
    let records = vec![
        record(1, "(1) mu*(x11+x12+x13+x14) vs x21+x22+x23+x24", rows,
            mu.clone() * x.first_row() - x.second_row()),
        record(2, "(2) mu^2*(x11+x12+x13+x14) vs x32+x33+x34", rows,
            mu2 * x.first_row() - x.third_row()),
        record(3, "(3) mu*(x11+x21) vs x12+x22+x32", rows, x.v_gap(mu)),
        record(4, "(4) x21 >= x12+x13+x14", Nonstrict,
            x.x21.clone() - x.x12.clone() - x.x13.clone() - x.x14.clone()),
        record(5, "(5) x14", zeros, x.x14.clone()),
        record(5, "(5) x24", zeros, x.x24.clone()),
        record(5, "(5) x34", zeros, x.x34.clone()),
        record(5, "(5) x23", zeros, x.x23.clone()),
        record(6, "(6) x11 > 0", Strict, x.x11.clone()),
        record(6, "(6) x13 >= 0", Nonstrict, x.x13.clone()),
        record(6, "(6) x22 >= 0", Nonstrict, x.x22.clone()),
        record(6, "(6) x32 >= 0", Nonstrict, x.x32.clone()),
        record(6, "(6) x33 >= 0", Nonstrict, x.x33.clone()),
        record(6, "(6) x12+x13 >= 0", Nonstrict, x.x12.clone() + x.x13.clone()),
        record(6, "(6) x12+x22 >= 0", Nonstrict, x.x12.clone() + x.x22.clone()),
        record(7, "(7) F > 0", Strict, eval_f(x, &p.w)),
    ];
    ConstraintReport { system, records }
}

/// Checks the strict system: (1)–(3) and (6)'s `x11 > 0` and (7) strict.
pub fn check_csp_a<S: Scalar>(x: &AssignmentX<S>, params: &CspParams<S>) -> ConstraintReport<S> {
    check(x, params, CspSystem::A)
}

/// Checks the adjusted system: (1)–(3) and (5) as equalities.
pub fn check_csp_b<S: Scalar>(x: &AssignmentX<S>, params: &CspParams<S>) -> ConstraintReport<S> {
    check(x, params, CspSystem::B)
}
