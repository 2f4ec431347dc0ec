use std::fmt;

use crate::field::{format_rational, rat, Rational};

/// Names of the ten coefficients `c_ij`, `i ≤ j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    C11,
    C12,
    C13,
    C14,
    C22,
    C23,
    C24,
    C33,
    C34,
    C44,
}

impl Coeff {
    pub const ALL: [Coeff; 10] = [
        Coeff::C11,
        Coeff::C12,
        Coeff::C13,
        Coeff::C14,
        Coeff::C22,
        Coeff::C23,
        Coeff::C24,
        Coeff::C33,
        Coeff::C34,
        Coeff::C44,
    ];

    /// 0-based `(i, j)` of the monomial `y_{i+1}·y_{j+1}`.
    pub fn index(self) -> (usize, usize) {
        match self {
            Coeff::C11 => (0, 0),
            Coeff::C12 => (0, 1),
            Coeff::C13 => (0, 2),
            Coeff::C14 => (0, 3),
            Coeff::C22 => (1, 1),
            Coeff::C23 => (1, 2),
            Coeff::C24 => (1, 3),
            Coeff::C33 => (2, 2),
            Coeff::C34 => (2, 3),
            Coeff::C44 => (3, 3),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.index();
        write!(f, "c{}{}", i + 1, j + 1)
    }
}

/// A deliberate corruption of the certificate, to show the checks have teeth.
#[derive(Debug, Clone, PartialEq)]
pub enum Mutation {
    /// `c_ij ← c_ij + offset`, after the honest value is built.
    Coefficient(Coeff, Rational),
    /// `w ← w + offset` everywhere `w` is used.
    W(Rational),
    /// `θ ← θ + offset`, including inside the substitution and `ρ`.
    Theta(Rational),
    /// `ρ ← ρ + offset`.
    Rho(Rational),
    /// Replaces the constant term of the defining polynomial.
    ModulusConstant(i64),
}

impl Mutation {
    /// The fixed set exercised by the mutation tests.
    pub fn standard_set() -> Vec<Mutation> {
        let d = rat(1, 100);
        vec![
            Mutation::Coefficient(Coeff::C11, d.clone()),
            Mutation::Coefficient(Coeff::C12, d.clone()),
            Mutation::Coefficient(Coeff::C14, rat(1, 1)),
            Mutation::Coefficient(Coeff::C22, d.clone()),
            Mutation::Coefficient(Coeff::C24, d.clone()),
            Mutation::Coefficient(Coeff::C34, d.clone()),
            Mutation::W(d.clone()),
            Mutation::Theta(d.clone()),
            Mutation::Rho(d),
            Mutation::ModulusConstant(5),
        ]
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::Coefficient(c, d) => write!(f, "{c} + {}", format_rational(d)),
            Mutation::W(d) => write!(f, "w + {}", format_rational(d)),
            Mutation::Theta(d) => write!(f, "theta + {}", format_rational(d)),
            Mutation::Rho(d) => write!(f, "rho + {}", format_rational(d)),
            Mutation::ModulusConstant(c) => write!(f, "constant term of p := {c}"),
        }
    }
}
