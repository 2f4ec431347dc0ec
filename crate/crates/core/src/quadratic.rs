//! Polynomials of degree at most two in `N` variables, used to expand the
//! CSP quantities symbolically.

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Rational, Ring};

/// Quadratic form `Σ_{i≤j} q_ij · y_i · y_j`. Only the upper triangle is
/// stored; `q_ij` is the full coefficient of the monomial `y_i·y_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct QForm<S, const N: usize> {
    coeffs: [[S; N]; N],
}

impl<S: Ring, const N: usize> QForm<S, N> {
    pub fn zero(like: &S) -> Self {
        QForm {
            coeffs: std::array::from_fn(|_| std::array::from_fn(|_| like.zero_like())),
        }
    }

    /// Coefficient of `y_i·y_j` (0-based, symmetric in `i`, `j`).
    pub fn get(&self, i: usize, j: usize) -> &S {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &self.coeffs[a][b]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[a][b] = value;
    }

    fn add_to(&mut self, i: usize, j: usize, value: S) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let cur = self.coeffs[a][b].clone();
        self.coeffs[a][b] = cur + value;
    }

    /// `(i, j, q_ij)` for `i ≤ j` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        (0..N).flat_map(move |i| (i..N).map(move |j| (i, j, &self.coeffs[i][j])))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| k.clone() * c.clone())
    }

    pub fn eval(&self, y: &[S; N]) -> S {
        self.entries().fold(y[0].zero_like(), |acc, (i, j, c)| {
            acc + c.clone() * y[i].clone() * y[j].clone()
        })
    }

    /// Whether every entry equals zero.
    pub fn is_zero(&self) -> bool {
        self.entries().all(|(_, _, c)| *c == c.zero_like())
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        QForm {
            coeffs: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.coeffs[i][j]))),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        QForm {
            coeffs: std::array::from_fn(|i| {
                std::array::from_fn(|j| f(&self.coeffs[i][j], &other.coeffs[i][j]))
            }),
        }
    }
}

impl<S: Ring, const N: usize> Add for QForm<S, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Ring, const N: usize> Sub for QForm<S, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() - b.clone())
    }
}

/// `c + Σ l_i·y_i + Σ_{i≤j} q_ij·y_i·y_j` over a coefficient ring `S`.
///
/// Implements [`Ring`] so the CSP formulas can be evaluated on symbolic
/// inputs. A product whose degree would exceed two panics.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExpr<S, const N: usize> {
    pub constant: S,
    pub linear: [S; N],
    pub quad: QForm<S, N>,
}

impl<S: Ring, const N: usize> QuadExpr<S, N> {
    pub fn constant(c: S) -> Self {
        QuadExpr {
            linear: std::array::from_fn(|_| c.zero_like()),
            quad: QForm::zero(&c),
            constant: c,
        }
    }

    /// The variable `y_i` (0-based).
    pub fn var(i: usize, like: &S) -> Self {
        let mut e = QuadExpr::constant(like.zero_like());
        e.linear[i] = like.one_like();
        e
    }

    /// `Σ coeffs_i·y_i`.
    pub fn linear_form(coeffs: [S; N]) -> Self {
        let mut e = QuadExpr::constant(coeffs[0].zero_like());
        e.linear = coeffs;
        e
    }

    pub fn is_linear(&self) -> bool {
        self.quad.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.is_linear() && self.linear.iter().all(|c| *c == c.zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant == self.constant.zero_like()
    }

    pub fn eval(&self, y: &[S; N]) -> S {
        let lin = self
            .linear
            .iter()
            .zip(y)
            .fold(self.constant.clone(), |acc, (l, v)| acc + l.clone() * v.clone());
        lin + self.quad.eval(y)
    }

    /// Partial derivative with respect to `y_k`; degree at most one.
    pub fn partial(&self, k: usize) -> Self {
        let mut d = QuadExpr::constant(self.linear[k].clone());
        for i in 0..N {
            let c = self.quad.get(i, k).clone();
            let c = if i == k { c.clone() + c } else { c };
            d.linear[i] = c;
        }
        d
    }

    fn scaled(&self, k: &S) -> Self {
        QuadExpr {
            constant: k.clone() * self.constant.clone(),
            linear: std::array::from_fn(|i| k.clone() * self.linear[i].clone()),
            quad: self.quad.scale(k),
        }
    }
}

impl<S: Ring, const N: usize> Add for QuadExpr<S, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExpr {
            constant: self.constant + rhs.constant,
            linear: std::array::from_fn(|i| self.linear[i].clone() + rhs.linear[i].clone()),
            quad: self.quad + rhs.quad,
        }
    }
}

impl<S: Ring, const N: usize> Sub for QuadExpr<S, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Ring, const N: usize> Neg for QuadExpr<S, N> {
    type Output = Self;
    fn neg(self) -> Self {
        let m1 = self.constant.embed_int(-1);
        self.scaled(&m1)
    }
}

impl<S: Ring, const N: usize> Mul for QuadExpr<S, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_constant() {
            return rhs.scaled(&self.constant);
        }
        if rhs.is_constant() {
            return self.scaled(&rhs.constant);
        }
        assert!(
            self.is_linear() && rhs.is_linear(),
            "product of degree greater than two"
        );
        let mut out = self.scaled(&rhs.constant) + rhs.scaled(&self.constant);
        out.constant = self.constant.clone() * rhs.constant.clone();
        for i in 0..N {
            for j in 0..N {
                out.quad
                    .add_to(i, j, self.linear[i].clone() * rhs.linear[j].clone());
            }
        }
        out
    }
}

impl<S: Ring, const N: usize> Ring for QuadExpr<S, N> {
    fn embed(&self, r: &Rational) -> Self {
        QuadExpr::constant(self.constant.embed(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    type E = QuadExpr<Rational, 3>;

    fn y(i: usize) -> E {
        E::var(i, &rat(0, 1))
    }

    #[test]
    fn expands_products() {
        // (y0 + 2y1 - 1)(y0 - y2) = y0² + 2y0y1 - y0y2 - 2y1y2 - y0 + y2
        let a = y(0) + y(1).embed_int(2) * y(1) - y(0).embed_int(1);
        let b = y(0) - y(2);
        let p = a * b;
        assert_eq!(p.quad.get(0, 0), &rat(1, 1));
        assert_eq!(p.quad.get(0, 1), &rat(2, 1));
        assert_eq!(p.quad.get(1, 0), &rat(2, 1));
        assert_eq!(p.quad.get(0, 2), &rat(-1, 1));
        assert_eq!(p.quad.get(1, 2), &rat(-2, 1));
        assert_eq!(p.linear, [rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.constant, rat(0, 1));
        let pt = [rat(2, 1), rat(-1, 3), rat(5, 7)];
        let direct = (rat(2, 1) + rat(-2, 3) - rat(1, 1)) * (rat(2, 1) - rat(5, 7));
        assert_eq!(p.eval(&pt), direct);
    }

    #[test]
    fn partials() {
        let p = y(0) * y(0) + y(0) * y(1) * y(0).embed_int(3) - y(2);
        let d0 = p.partial(0);
        assert_eq!(d0.linear, [rat(2, 1), rat(3, 1), rat(0, 1)]);
        assert_eq!(p.partial(2).constant, rat(-1, 1));
    }

    #[test]
    #[should_panic(expected = "degree greater than two")]
    fn cubic_panics() {
        let _ = y(0) * y(1) * y(2);
    }
}
