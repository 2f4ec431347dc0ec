//! Where is CSP-B satisfiable?
//!
//! With `x14 = x23 = x24 = x34 = 0` and the homogeneous normalization
//! `x11 + x12 + x13 = 1`, the closure of the CSP-B region is a polytope in
//! the three parameters `t = (x13, x22, x32)`:
//!
//! ```text
//! x21 = μ − x22    x33 = μ² − x32    x11 = 1 − x12 − x13
//! x12 = μ − (μ·x13 + (1+μ)·x22 + x32)/(1+μ)
//! ```
//!
//! CSP-B is satisfiable iff F has a positive value at a point of this
//! polytope with `x11 > 0`. The maximum is found exactly by enumerating the
//! 2⁸ sets of active inequalities and solving for the stationary point of F
//! on each face, or heuristically by projected gradient ascent.

mod float;
mod linalg;

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::csp::{check_csp_b, eval_f, AssignmentX, CspParams};
use crate::field::{rat, FieldError, Rational, Ring, Scalar, Sign};
use crate::quadratic::QuadExpr;

pub use float::FloatConfig;
use linalg::{solve_affine, solve_unique};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("empty bracket: lo must be below hi")]
    EmptyBracket,
    #[error("max F has the same sign at both ends of the bracket (positive at lo: {lo_positive}, at hi: {hi_positive})")]
    NoSignChange { lo_positive: bool, hi_positive: bool },
    #[error("empty grid")]
    EmptyGrid,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The live variables, in row-coefficient order.
pub const LIVE: [&str; 7] = ["x11", "x12", "x13", "x21", "x22", "x32", "x33"];

/// `coeffs · (x11, x12, x13, x21, x22, x32, x33) + constant`, compared with 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Row<S> {
    pub name: &'static str,
    pub coeffs: [S; 7],
    pub constant: S,
}

impl<S: Ring> Row<S> {
    pub fn eval(&self, x: &AssignmentX<S>) -> S {
        let v = live_values(x);
        self.coeffs
            .iter()
            .zip(&v)
            .fold(self.constant.clone(), |acc, (c, xi)| acc + c.clone() * xi.clone())
    }
}

fn live_values<S: Clone>(x: &AssignmentX<S>) -> [S; 7] {
    [
        x.x11.clone(),
        x.x12.clone(),
        x.x13.clone(),
        x.x21.clone(),
        x.x22.clone(),
        x.x32.clone(),
        x.x33.clone(),
    ]
}

fn from_live<R: Ring>(v: [R; 7]) -> AssignmentX<R> {
    let zero = v[0].zero_like();
    let [x11, x12, x13, x21, x22, x32, x33] = v;
    AssignmentX {
        x11,
        x12,
        x13,
        x14: zero.clone(),
        x21,
        x22,
        x23: zero.clone(),
        x24: zero.clone(),
        x32,
        x33,
        x34: zero,
    }
}

fn equality_exprs<R: Ring>(x: &AssignmentX<R>, mu: &R) -> [(&'static str, R); 4] {
    let row1 = x.x11.clone() + x.x12.clone() + x.x13.clone();
    [
        ("(1=)", mu.clone() * row1.clone() - x.x21.clone() - x.x22.clone()),
        ("(2=)", mu.clone() * mu.clone() * row1.clone() - x.x32.clone() - x.x33.clone()),
        ("(3=)", x.v_gap(mu)),
        ("normalization", row1 - mu.one_like()),
    ]
}

fn inequality_exprs<R: Ring>(x: &AssignmentX<R>) -> [(&'static str, R); 8] {
    [
        ("x13 >= 0", x.x13.clone()),
        ("x22 >= 0", x.x22.clone()),
        ("x32 >= 0", x.x32.clone()),
        ("x33 >= 0", x.x33.clone()),
        ("x12+x13 >= 0", x.x12.clone() + x.x13.clone()),
        ("x12+x22 >= 0", x.x12.clone() + x.x22.clone()),
        ("x11 >= 0", x.x11.clone()),
        ("x21-x12-x13 >= 0", x.x21.clone() - x.x12.clone() - x.x13.clone()),
    ]
}

/// Closed CSP-B region, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<S> {
    pub mu: S,
    pub equalities: Vec<Row<S>>,
    pub inequalities: Vec<Row<S>>,
}

fn rows_of<S: Scalar>(exprs: &[(&'static str, QuadExpr<S, 7>)]) -> Vec<Row<S>> {
    exprs
        .iter()
        .map(|(name, e)| Row {
            name,
            coeffs: e.linear.clone(),
            constant: e.constant.clone(),
        })
        .collect()
}

pub fn feasible_region<S: Scalar>(mu: &S) -> Polytope<S> {
    let x = from_live(std::array::from_fn(|i| QuadExpr::<S, 7>::var(i, mu)));
    let m = QuadExpr::constant(mu.clone());
    Polytope {
        mu: mu.clone(),
        equalities: rows_of(&equality_exprs(&x, &m)),
        inequalities: rows_of(&inequality_exprs(&x)),
    }
}

impl<S: Scalar> Polytope<S> {
    /// Whether `x` lies in the region (with the four dropped variables zero).
    pub fn contains(&self, x: &AssignmentX<S>) -> bool {
        let dropped = [&x.x14, &x.x23, &x.x24, &x.x34];
        dropped.iter().all(|v| v.is_zero_value())
            && self.equalities.iter().all(|r| r.eval(x).is_zero_value())
            && self.inequalities.iter().all(|r| r.eval(x).sign() != Sign::Negative)
    }
}

/// The point of the region with parameters `t = (x13, x22, x32)`;
/// `inv = 1/(1+μ)`.
fn lift<R: Ring>(t: &[R; 3], mu: &R, inv: &R) -> AssignmentX<R> {
    let [x13, x22, x32] = t.clone();
    let one = mu.one_like();
    let x12 = mu.clone()
        - inv.clone()
            * (mu.clone() * x13.clone() + (one.clone() + mu.clone()) * x22.clone() + x32.clone());
    from_live([
        one - x12.clone() - x13.clone(),
        x12,
        x13,
        mu.clone() - x22.clone(),
        x22,
        x32.clone(),
        mu.clone() * mu.clone() - x32,
    ])
}

/// F and the inequalities as functions of `t`.
#[derive(Debug, Clone)]
pub(crate) struct Reduced<S> {
    mu: S,
    inv: S,
    /// Hessian of F in `t`.
    h: [[S; 3]; 3],
    grad0: [S; 3],
    f0: S,
    ineq: Vec<([S; 3], S)>,
}

impl<S: Scalar> Reduced<S> {
    fn new(mu: &S, w: &S) -> Result<Self, FieldError> {
        let inv = mu.one_like().try_div(&(mu.one_like() + mu.clone()))?;
        let k = |c: &S| QuadExpr::<S, 3>::constant(c.clone());
        let t = std::array::from_fn(|i| QuadExpr::var(i, mu));
        let x = lift(&t, &k(mu), &k(&inv));
        let f = eval_f(&x, &k(w));
        let h = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let q = f.quad.get(i, j).clone();
                if i == j { q.clone() + q } else { q }
            })
        });
        let ineq = inequality_exprs(&x)
            .iter()
            .map(|(_, e)| (e.linear.clone(), e.constant.clone()))
            .collect();
        Ok(Reduced {
            mu: mu.clone(),
            inv,
            h,
            grad0: f.linear.clone(),
            f0: f.constant.clone(),
            ineq,
        })
    }

    fn point(&self, t: &[S; 3]) -> AssignmentX<S> {
        lift(t, &self.mu, &self.inv)
    }

    fn f(&self, t: &[S; 3]) -> S {
        let mut v = self.f0.clone();
        for i in 0..3 {
            v = v + self.grad0[i].clone() * t[i].clone();
            for j in 0..3 {
                let half = self.mu.embed(&rat(1, 2));
                v = v + half * self.h[i][j].clone() * t[i].clone() * t[j].clone();
            }
        }
        v
    }

    fn gradient(&self, t: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(self.grad0[i].clone(), |acc, j| acc + self.h[i][j].clone() * t[j].clone())
        })
    }

    fn slack(&self, k: usize, t: &[S; 3]) -> S {
        let (a, b) = &self.ineq[k];
        (0..3).fold(b.clone(), |acc, i| acc + a[i].clone() * t[i].clone())
    }

    fn feasible(&self, t: &[S; 3]) -> bool {
        (0..self.ineq.len()).all(|k| self.slack(k, t).sign() != Sign::Negative)
    }
}

fn dot<S: Ring>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(a[0].zero_like(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Feasible points that are the unique stationary point of F on the affine
/// hull of some set of active inequalities, in mask order.
fn face_candidates<S: Scalar>(r: &Reduced<S>) -> Vec<[S; 3]> {
    let like = &r.mu;
    let mut out = Vec::new();
    for mask in 0u32..(1 << r.ineq.len()) {
        let active: Vec<usize> = (0..r.ineq.len()).filter(|k| mask & (1 << k) != 0).collect();
        let a: Vec<Vec<S>> = active.iter().map(|&k| r.ineq[k].0.to_vec()).collect();
        let b: Vec<S> = active.iter().map(|&k| -r.ineq[k].1.clone()).collect();
        let Some((t0, basis)) = solve_affine(&a, &b, 3, like) else {
            continue;
        };
        let t0: [S; 3] = t0.try_into().expect("three unknowns");
        let t = if basis.is_empty() {
            t0
        } else {
            // MᵀHM s = −Mᵀ ∇F(t0)
            let hm: Vec<Vec<S>> = basis
                .iter()
                .map(|m| (0..3).map(|i| dot(&r.h[i], m)).collect())
                .collect();
            let lhs: Vec<Vec<S>> = basis
                .iter()
                .map(|mi| hm.iter().map(|hmj| dot(mi, hmj)).collect())
                .collect();
            let g = r.gradient(&t0);
            let rhs: Vec<S> = basis.iter().map(|mi| -dot(mi, &g)).collect();
            let Some(s) = solve_unique(&lhs, &rhs, like) else {
                continue;
            };
            std::array::from_fn(|i| {
                basis
                    .iter()
                    .zip(&s)
                    .fold(t0[i].clone(), |acc, (m, sk)| acc + m[i].clone() * sk.clone())
            })
        };
        if r.feasible(&t) {
            out.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    FeasiblePositive,
    NonpositiveMax,
    EmptyRegion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactFaceEnumeration,
    FloatMultistart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<S> {
    pub status: Status,
    /// Exact maximum, or for the float method the best value found.
    pub max_value: Option<S>,
    pub argmax: Option<AssignmentX<S>>,
    pub method: Method,
    /// True when `max_value` is only a lower bound.
    pub heuristic: bool,
}

fn status_of<S: Scalar>(v: Option<&S>) -> Status {
    match v.map(|v| v.sign()) {
        None => Status::EmptyRegion,
        Some(Sign::Positive) => Status::FeasiblePositive,
        Some(_) => Status::NonpositiveMax,
    }
}

/// Exact maximum of F over the closed region. Works over any exact scalar,
/// including `Q(γ)`.
pub fn maximize_exact<S: Scalar>(mu: &S, w: &S) -> Result<SearchResult<S>, SearchError> {
    if mu.sign() == Sign::Negative {
        return Err(SearchError::InvalidParameter("mu must be nonnegative".into()));
    }
    let r = Reduced::new(mu, w)?;
    let mut best: Option<([S; 3], S)> = None;
    for t in face_candidates(&r) {
        let v = r.f(&t);
        if best.as_ref().is_none_or(|(_, b)| v.cmp_to(b) == Ordering::Greater) {
            best = Some((t, v));
        }
    }
    Ok(SearchResult {
        status: status_of(best.as_ref().map(|b| &b.1)),
        argmax: best.as_ref().map(|(t, _)| r.point(t)),
        max_value: best.map(|b| b.1),
        method: Method::ExactFaceEnumeration,
        heuristic: false,
    })
}

/// Best value of F found by projected gradient ascent from seeded starts.
pub fn maximize_float(mu: f64, w: f64, config: &FloatConfig) -> Result<SearchResult<f64>, SearchError> {
    if !(mu >= 0.0) || !mu.is_finite() || !w.is_finite() {
        return Err(SearchError::InvalidParameter("mu must be finite and nonnegative".into()));
    }
    let r = Reduced::new(&mu, &w)?;
    let best = float::multistart(&r, config);
    Ok(SearchResult {
        status: status_of(best.as_ref().map(|b| &b.1)),
        argmax: best.as_ref().map(|(t, _)| r.point(t)),
        max_value: best.map(|b| b.1),
        method: Method::FloatMultistart,
        heuristic: true,
    })
}

/// Exact recheck of every CSP-B constraint, strict ones included.
pub fn certify_witness<S: Scalar>(x: &AssignmentX<S>, mu: &S, w: &S) -> bool {
    check_csp_b(x, &CspParams { mu: mu.clone(), w: w.clone() }).satisfied()
}

/// A certified CSP-B solution and how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: AssignmentX<Rational>,
    /// Weight `s` of the interior point in `(1−s)·argmax + s·interior`; zero
    /// when the argmax itself qualifies.
    pub mix: Rational,
    pub max_value: Rational,
}

/// A certified CSP-B solution at rational `μ`, `w`, if the exact maximum is
/// positive. An argmax on `x11 = 0` is pulled toward the feasible
/// candidate with the largest `x11`.
pub fn find_witness(mu: &Rational, w: &Rational) -> Result<Option<Witness>, SearchError> {
    let r = Reduced::new(mu, w)?;
    let candidates = face_candidates(&r);
    let mut best: Option<(&[Rational; 3], Rational)> = None;
    for t in &candidates {
        let v = r.f(t);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((t, v));
        }
    }
    let Some((best, fmax)) = best else {
        return Ok(None);
    };
    if fmax <= rat(0, 1) {
        return Ok(None);
    }
    let x = r.point(best);
    if certify_witness(&x, mu, w) {
        return Ok(Some(Witness { x, mix: rat(0, 1), max_value: fmax }));
    }
    let interior = candidates
        .iter()
        .map(|t| r.point(t))
        .max_by(|a, b| a.x11.cmp(&b.x11))
        .expect("nonempty");
    if interior.x11 <= rat(0, 1) {
        return Ok(None);
    }
    let diff = AssignmentX::from_array(std::array::from_fn(|i| {
        interior.to_array()[i].clone() - x.to_array()[i].clone()
    }));
    let mut s = rat(1, 2);
    for _ in 0..64 {
        let y = x.add_scaled(&s, &diff);
        if certify_witness(&y, mu, w) {
            return Ok(Some(Witness { x: y, mix: s, max_value: fmax }));
        }
        s /= rat(2, 1);
    }
    Ok(None)
}

/// How the sign of max F is decided during bisection.
#[derive(Debug, Clone, PartialEq)]
pub enum Oracle {
    Exact,
    /// Positive means best found above `1e-12`.
    Float(FloatConfig),
}

impl Oracle {
    fn positive(&self, mu: &Rational, w: &Rational) -> Result<bool, SearchError> {
        match self {
            Oracle::Exact => Ok(maximize_exact(mu, w)?.status == Status::FeasiblePositive),
            Oracle::Float(cfg) => {
                let r = maximize_float(mu.to_f64(), w.to_f64(), cfg)?;
                Ok(r.max_value.is_some_and(|v| v > 1e-12))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    #[serde(serialize_with = "ser_rat")]
    pub w: Rational,
    /// Midpoint of the final bracket.
    #[serde(serialize_with = "ser_rat")]
    pub mu_star: Rational,
    #[serde(serialize_with = "ser_pair")]
    pub bracket: (Rational, Rational),
    #[serde(serialize_with = "ser_rat")]
    pub tol: Rational,
    pub steps: usize,
}

fn ser_rat<Z: serde::Serializer>(r: &Rational, s: Z) -> Result<Z::Ok, Z::Error> {
    s.serialize_str(&crate::field::format_rational(r))
}

fn ser_pair<Z: serde::Serializer>(r: &(Rational, Rational), s: Z) -> Result<Z::Ok, Z::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&crate::field::format_rational(&r.0))?;
    t.serialize_element(&crate::field::format_rational(&r.1))?;
    t.end()
}

/// Bisection for the `μ` where max F turns positive. Requires max F ≤ 0
/// at `lo` and > 0 at `hi`; stops once `hi − lo ≤ tol`.
pub fn threshold(
    w: &Rational,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    oracle: &Oracle,
) -> Result<ThresholdResult, SearchError> {
    if lo >= hi {
        return Err(SearchError::EmptyBracket);
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let lo_positive = oracle.positive(&lo, w)?;
    let hi_positive = oracle.positive(&hi, w)?;
    if lo_positive || !hi_positive {
        return Err(SearchError::NoSignChange { lo_positive, hi_positive });
    }
    let mut steps = 0;
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rat(2, 1);
        if oracle.positive(&mid, w)? {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok(ThresholdResult {
        w: w.clone(),
        mu_star: (&lo + &hi) / rat(2, 1),
        bracket: (lo, hi),
        tol: tol.clone(),
        steps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub thresholds: Vec<ThresholdResult>,
    /// Index into `thresholds` of the largest `μ*` (first on ties).
    pub best: usize,
}

impl ScanResult {
    pub fn best(&self) -> &ThresholdResult {
        &self.thresholds[self.best]
    }
}

/// Thresholds across a grid of `w`; the best `w` has the largest `μ*`.
pub fn scan_w(
    grid: &[Rational],
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    oracle: &Oracle,
) -> Result<ScanResult, SearchError> {
    if grid.is_empty() {
        return Err(SearchError::EmptyGrid);
    }
    let thresholds = grid
        .iter()
        .map(|w| threshold(w, lo, hi, tol, oracle))
        .collect::<Result<Vec<_>, _>>()?;
    let mut best = 0;
    for (i, t) in thresholds.iter().enumerate() {
        if t.mu_star > thresholds[best].mu_star {
            best = i;
        }
    }
    Ok(ScanResult { thresholds, best })
}
