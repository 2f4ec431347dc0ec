//! Exact verification that CSP-B is unsatisfiable at `μ = γ`,
//! `w = γ² + 2γ³`.
//!
//! After the substitution `y = to_y(x)`, F becomes a quadratic form
//! `Σ c_ij y_i y_j` with `c13 = c33 = c44 = 0`. Four products `P1..P4`,
//! each nonnegative on CSP-B, combine with F into a negative-definite form
//! in `(y1, y2)` alone:
//!
//! ```text
//! F + c14·P1 + (c14+c24)·P2 − (c23+ρc14)·P3 + (c23−c34−γ⁻¹θ(c14+c24))·P4
//!   = c11·y1² + (c12−c14)·y1y2 + (c22+c14)·y2²
//! ```
//!
//! With positive multipliers this forces `F ≤ 0`, contradicting (7). Every
//! identity is checked as exact equality in `Q(γ)`; every sign is decided
//! exactly by interval refinement.

mod mutation;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::csp::{eval_f, YSubstitution};
use crate::field::{
    format_decimal, rat, sturm_count, FieldElement, FieldError, IsolatingInterval, NumberField, Poly, Rational,
    Ring, Sign,
};
use crate::quadratic::{QForm, QuadExpr};

pub use mutation::{Coeff, Mutation};

pub type QForm4 = QForm<FieldElement, 4>;
type Expr4 = QuadExpr<FieldElement, 4>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("sign condition failed: {0}")]
    SignCondition(&'static str),
}

/// `γ`, `w = γ²+2γ³`, `θ = 2+2γ−4γ³`, `ρ = 1+θ−γ⁻¹θ`, `γ⁻¹`, and an
/// isolating interval for `λ`, the root of `2x³+x²−1` in `[0,1]`.
#[derive(Debug, Clone)]
pub struct FieldConstants {
    pub field: Arc<NumberField>,
    pub gamma: FieldElement,
    pub w: FieldElement,
    pub theta: FieldElement,
    pub rho: FieldElement,
    pub gamma_inv: FieldElement,
    pub lambda_interval: IsolatingInterval,
}

fn unit_interval() -> (Rational, Rational) {
    (rat(0, 1), rat(1, 1))
}

fn constants_for(mutation: Option<&Mutation>) -> Result<FieldConstants, FieldError> {
    let mut p = NumberField::gamma_polynomial();
    if let Some(Mutation::ModulusConstant(c)) = mutation {
        let mut coeffs = p.coeffs().to_vec();
        coeffs[0] = rat(*c, 1);
        p = Poly::new(coeffs);
    }
    let (lo, hi) = unit_interval();
    let field = if mutation.is_none() {
        NumberField::gamma()
    } else {
        NumberField::new(p, &lo, &hi)?
    };
    let lambda = NumberField::new(NumberField::lambda_polynomial(), &lo, &hi)?;
    let g = field.generator();
    let gamma_inv = g.inverse()?;
    let offset = |m: fn(&Mutation) -> Option<&Rational>| {
        mutation
            .and_then(m)
            .map(|d| field.from_rational(d))
            .unwrap_or_else(|| field.from_int(0))
    };
    let w = g.pow(2) + field.from_int(2) * g.pow(3)
        + offset(|m| match m {
            Mutation::W(d) => Some(d),
            _ => None,
        });
    let theta = field.from_int(2) + field.from_int(2) * g.clone() - field.from_int(4) * g.pow(3)
        + offset(|m| match m {
            Mutation::Theta(d) => Some(d),
            _ => None,
        });
    let rho = field.from_int(1) + theta.clone() - gamma_inv.clone() * theta.clone()
        + offset(|m| match m {
            Mutation::Rho(d) => Some(d),
            _ => None,
        });
    Ok(FieldConstants {
        gamma: g,
        w,
        theta,
        rho,
        gamma_inv,
        lambda_interval: lambda.root_interval().clone(),
        field,
    })
}

/// Builds the constants and checks `1 < w < 1 + γ²` exactly.
pub fn build_constants() -> Result<FieldConstants, CertificateError> {
    let k = constants_for(None)?;
    let one = k.field.from_int(1);
    if (k.w.clone() - one.clone()).sign() != Sign::Positive {
        return Err(CertificateError::SignCondition("w > 1"));
    }
    if (one + k.gamma.pow(2) - k.w.clone()).sign() != Sign::Positive {
        return Err(CertificateError::SignCondition("w < 1 + gamma^2"));
    }
    Ok(k)
}

/// The ten coefficients as given by their closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSet {
    pub c11: FieldElement,
    pub c12: FieldElement,
    pub c13: FieldElement,
    pub c14: FieldElement,
    pub c22: FieldElement,
    pub c23: FieldElement,
    pub c24: FieldElement,
    pub c33: FieldElement,
    pub c34: FieldElement,
    pub c44: FieldElement,
}

impl CoeffSet {
    pub fn get(&self, c: Coeff) -> &FieldElement {
        match c {
            Coeff::C11 => &self.c11,
            Coeff::C12 => &self.c12,
            Coeff::C13 => &self.c13,
            Coeff::C14 => &self.c14,
            Coeff::C22 => &self.c22,
            Coeff::C23 => &self.c23,
            Coeff::C24 => &self.c24,
            Coeff::C33 => &self.c33,
            Coeff::C34 => &self.c34,
            Coeff::C44 => &self.c44,
        }
    }

    fn get_mut(&mut self, c: Coeff) -> &mut FieldElement {
        match c {
            Coeff::C11 => &mut self.c11,
            Coeff::C12 => &mut self.c12,
            Coeff::C13 => &mut self.c13,
            Coeff::C14 => &mut self.c14,
            Coeff::C22 => &mut self.c22,
            Coeff::C23 => &mut self.c23,
            Coeff::C24 => &mut self.c24,
            Coeff::C33 => &mut self.c33,
            Coeff::C34 => &mut self.c34,
            Coeff::C44 => &mut self.c44,
        }
    }

    pub fn as_form(&self) -> QForm4 {
        let mut q = QForm::zero(&self.c11);
        for c in Coeff::ALL {
            let (i, j) = c.index();
            q.set(i, j, self.get(c).clone());
        }
        q
    }
}

/// `γ·c33` written without `γ⁻¹`, so it also makes sense over `Q[g]`.
fn gamma_c33<R: Ring>(g: &R, w: &R, t: &R) -> R {
    let one = g.one_like();
    let half = g.embed(&rat(1, 2));
    g.clone() * g.clone() * (w.clone() - one.clone() + t.clone())
        + (g.clone() * g.clone() - one) * t.clone() * t.clone()
        + half * g.clone() * (t.clone() * t.clone() - g.clone() * g.clone() - w.clone())
}

pub fn build_coefficients(k: &FieldConstants) -> CoeffSet {
    let (g, w, t, gi) = (&k.gamma, &k.w, &k.theta, &k.gamma_inv);
    let one = g.one_like();
    let half = g.embed(&rat(1, 2));
    let two = g.embed_int(2);
    let g2 = g.pow(2);
    let g3 = g.pow(3);
    let wm1 = w.clone() - one.clone();
    let opg = one.clone() + g.clone();
    let c14 = w.clone() - wm1.clone() * g.clone();
    CoeffSet {
        c11: wm1.clone() * g.clone() - half.clone() * (w.clone() + g2.clone()),
        c12: g2.clone() + opg.clone() * c14.clone(),
        c13: w.clone() + g2.clone() - g.clone() * (two * wm1.clone() + t.clone()),
        c22: -(half.clone() * w.clone() * opg.clone() * opg.clone()),
        c23: t.clone() - g2.clone() - opg.clone() * c14.clone(),
        c24: g.clone() + g3.clone() - w.clone() * opg,
        c33: g.clone() * (wm1.clone() + t.clone())
            + (g.clone() - gi.clone()) * t.clone() * t.clone()
            + half.clone() * (t.clone() * t.clone() - g2.clone() - w.clone()),
        c34: (g.clone() + g2.clone() - one) * t.clone() - w.clone() + wm1 * g.clone(),
        c44: g3 + half * (g2 - w.clone()),
        c14,
    }
}

/// F in the `y` variables together with the four products.
#[derive(Debug, Clone)]
pub struct Forms {
    pub f: Expr4,
    pub p: [Expr4; 4],
}

fn y_var(i: usize, like: &FieldElement) -> Expr4 {
    QuadExpr::var(i, like)
}

fn konst(c: &FieldElement) -> Expr4 {
    QuadExpr::constant(c.clone())
}

/// F(y) by substituting the linear map into F, and `P1..P4` as written.
pub fn build_forms(k: &FieldConstants) -> Result<Forms, FieldError> {
    let sub = YSubstitution::new(k.gamma.clone(), k.theta.clone())?;
    let f = eval_f(&sub.x_forms(), &konst(&k.w));
    let z = k.gamma.zero_like();
    let [y1, y2, y3, y4] = std::array::from_fn(|i| y_var(i, &z));
    let git = k.gamma_inv.clone() * k.theta.clone();
    let p = [
        (y2.clone() - y1 + konst(&k.rho) * y3.clone()) * (y2.clone() + y4.clone()),
        (konst(&git) * y3.clone() - y2.clone()) * y4.clone(),
        (y2 + y4.clone()) * y3.clone(),
        y3 * y4,
    ];
    Ok(Forms { f, p })
}

/// The products as originally defined from the `x` variables.
fn x_space_products(k: &FieldConstants) -> Result<[Expr4; 4], FieldError> {
    let sub = YSubstitution::new(k.gamma.clone(), k.theta.clone())?;
    let x = sub.x_forms();
    let gi = &k.gamma_inv;
    let ti = k.theta.inverse()?;
    let gi2 = gi.pow(2);
    let gi3 = gi.pow(3);
    Ok([
        konst(gi) * (x.x21.clone() - x.x12.clone() - x.x13.clone() - x.x14.clone()) * x.x22.clone(),
        konst(&gi3) * x.x21.clone() * x.x33.clone(),
        konst(&(gi2 * ti.clone())) * x.x22.clone() * x.x32.clone(),
        konst(&(gi3 * ti)) * x.x32 * x.x33,
    ])
}

/// The four multipliers of `P1..P4` in the combination.
pub fn multipliers(k: &FieldConstants, c: &CoeffSet) -> [FieldElement; 4] {
    let s = c.c14.clone() + c.c24.clone();
    [
        c.c14.clone(),
        s.clone(),
        -(c.c23.clone() + k.rho.clone() * c.c14.clone()),
        c.c23.clone() - c.c34.clone() - k.gamma_inv.clone() * k.theta.clone() * s,
    ]
}

/// `c11·y1² + (c12−c14)·y1y2 + (c22+c14)·y2²`.
pub fn target_form(c: &CoeffSet) -> QForm4 {
    let mut q = QForm::zero(&c.c11);
    q.set(0, 0, c.c11.clone());
    q.set(0, 1, c.c12.clone() - c.c14.clone());
    q.set(1, 1, c.c22.clone() + c.c14.clone());
    q
}

/// `F + Σ m_i·P_i − target`; zero exactly when the combination identity holds.
pub fn combination_residual(k: &FieldConstants, c: &CoeffSet, forms: &Forms) -> Expr4 {
    let combined = multipliers(k, c)
        .iter()
        .zip(&forms.p)
        .fold(forms.f.clone(), |acc, (m, p)| acc + konst(m) * p.clone());
    let mut target = konst(&c.c11.zero_like());
    target.quad = target_form(c);
    combined - target
}

/// `(c12−c14)² − 4·c11·(c22+c14)`.
pub fn discriminant(c: &CoeffSet) -> FieldElement {
    let b = c.c12.clone() - c.c14.clone();
    b.clone() * b - c.c11.embed_int(4) * c.c11.clone() * (c.c22.clone() + c.c14.clone())
}

/// `1/(2+γ)`.
pub fn bcw_constant(k: &FieldConstants) -> Result<FieldElement, FieldError> {
    (k.gamma.embed_int(2) + k.gamma.clone()).inverse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Root isolation and field construction.
    Construction,
    /// Exact algebraic identity.
    Identity,
    /// Exact sign, decided by interval refinement.
    Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    /// Coordinates in the power basis of the quantity checked, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub checks: Vec<CheckResult>,
    pub approximations: Vec<(String, String)>,
    pub passed: bool,
    pub conclusion: String,
}

impl CertificateReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    checks: Vec<CheckResult>,
}

impl Builder {
    fn push(&mut self, name: &str, kind: CheckKind, passed: bool) -> &mut CheckResult {
        self.checks.push(CheckResult {
            name: name.to_string(),
            kind,
            passed,
            exact: None,
            approx: None,
            detail: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    fn identity(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.push(name, CheckKind::Identity, passed).detail = detail;
    }

    fn zero(&mut self, name: &str, value: &FieldElement) {
        let r = self.push(name, CheckKind::Identity, value.is_zero());
        r.exact = Some(value.coord_strings());
    }

    fn sign(&mut self, name: &str, value: &FieldElement, want: Sign) {
        let r = self.push(name, CheckKind::Sign, value.sign() == want);
        r.exact = Some(value.coord_strings());
        r.approx = Some(value.approx(4));
    }
}

const NAMES: [&str; 4] = ["P1", "P2", "P3", "P4"];

/// Lists the monomials with a nonzero coefficient.
fn nonzero_terms(e: &Expr4) -> Vec<String> {
    let mut out = Vec::new();
    if !e.constant.is_zero() {
        out.push("1".to_string());
    }
    for (i, l) in e.linear.iter().enumerate() {
        if !l.is_zero() {
            out.push(format!("y{}", i + 1));
        }
    }
    for (i, j, q) in e.quad.entries() {
        if !q.is_zero() {
            out.push(format!("y{}y{}", i + 1, j + 1));
        }
    }
    out
}

fn apply(c: &mut CoeffSet, mutation: Option<&Mutation>) {
    if let Some(Mutation::Coefficient(name, d)) = mutation {
        let slot = c.get_mut(*name);
        *slot = slot.clone() + slot.embed(d);
    }
}

/// Runs every check on the honest certificate.
pub fn verify_all() -> CertificateReport {
    verify_with(None)
}

/// Runs every check, optionally on a corrupted certificate.
pub fn verify_with(mutation: Option<&Mutation>) -> CertificateReport {
    let mut b = Builder { checks: Vec::new() };
    let mut approximations = Vec::new();
    let finish = |b: Builder, approximations, mutation: Option<&Mutation>| {
        let passed = b.checks.iter().all(|c| c.passed);
        CertificateReport {
            mutation: mutation.map(|m| m.to_string()),
            passed,
            conclusion: if passed {
                "all checks pass: CSP-B is unsatisfiable at mu = gamma, w = gamma^2 + 2 gamma^3, \
                 so combined with the reduction from a counterexample every oriented graph has a \
                 gamma-Seymour vertex"
                    .to_string()
            } else {
                "certificate NOT established".to_string()
            },
            checks: b.checks,
            approximations,
        }
    };

    let (lo, hi) = unit_interval();
    let mut p = NumberField::gamma_polynomial();
    if let Some(Mutation::ModulusConstant(c)) = mutation {
        let mut coeffs = p.coeffs().to_vec();
        coeffs[0] = rat(*c, 1);
        p = Poly::new(coeffs);
    }
    for (name, poly) in [
        ("sturm: p has exactly one root in [0, 1]", &p),
        ("sturm: q has exactly one root in [0, 1]", &NumberField::lambda_polynomial()),
    ] {
        let count = sturm_count(poly, &lo, &hi);
        let r = b.push(name, CheckKind::Construction, matches!(count, Ok(1)));
        r.detail = Some(match count {
            Ok(n) => format!("{n} root(s)"),
            Err(e) => e.to_string(),
        });
    }
    let k = match constants_for(mutation) {
        Ok(k) => k,
        Err(e) => {
            b.push("field construction", CheckKind::Construction, false).detail = Some(e.to_string());
            return finish(b, approximations, mutation);
        }
    };

    let one = k.gamma.one_like();
    b.sign("w > 1", &(k.w.clone() - one.clone()), Sign::Positive);
    b.sign("w < 1 + gamma^2", &(one.clone() + k.gamma.pow(2) - k.w.clone()), Sign::Positive);

    let mut c = build_coefficients(&k);
    apply(&mut c, mutation);

    b.zero("vanishing: c13 = 0", &c.c13);
    b.zero("vanishing: c33 = 0", &c.c33);
    b.zero("vanishing: c44 = 0", &c.c44);

    // γ·c33 = (γ−1)(2γ²+2γ+1)·p(γ), first over Q[g] with w and θ replaced
    // by their defining polynomials, then in the field.
    {
        let g = Poly::x();
        let w = g.pow(2) + Poly::from_ints(&[0, 0, 0, 2]);
        let t = Poly::from_ints(&[2, 2, 0, -4]);
        let lhs = gamma_c33(&g, &w, &t);
        let rhs = Poly::from_ints(&[-1, 1]) * Poly::from_ints(&[1, 2, 2]) * k.field.modulus().clone();
        let poly_ok = lhs == rhs;
        let field_ok = (k.gamma.clone() * c.c33.clone() - gamma_c33(&k.gamma, &k.w, &k.theta)).is_zero();
        b.identity(
            "c33 factorization: gamma*c33 = (gamma-1)(2gamma^2+2gamma+1)p(gamma)",
            poly_ok && field_ok,
            Some(format!("polynomial identity: {poly_ok}; matches c33 in the field: {field_ok}")),
        );
    }

    let forms = match build_forms(&k) {
        Ok(f) => f,
        Err(e) => {
            b.push("F(y) expansion", CheckKind::Identity, false).detail = Some(e.to_string());
            return finish(b, approximations, mutation);
        }
    };
    let affine = Expr4 {
        quad: QForm::zero(&one),
        ..forms.f.clone()
    };
    b.identity(
        "F(y) is a quadratic form (no constant or linear part)",
        affine.is_zero(),
        None,
    );
    let mismatched: Vec<String> = Coeff::ALL
        .iter()
        .filter(|&&name| {
            let (i, j) = name.index();
            *forms.f.quad.get(i, j) != *c.get(name)
        })
        .map(|n| n.to_string())
        .collect();
    b.identity(
        "F(y) coefficients equal c_ij",
        mismatched.is_empty(),
        (!mismatched.is_empty()).then(|| format!("mismatch at {}", mismatched.join(", "))),
    );

    match x_space_products(&k) {
        Ok(xp) => {
            for (i, (py, px)) in forms.p.iter().zip(&xp).enumerate() {
                let diff = py.clone() - px.clone();
                b.identity(
                    &format!("{}: y-form equals its x-space definition", NAMES[i]),
                    diff.is_zero(),
                    (!diff.is_zero()).then(|| format!("differs at {}", nonzero_terms(&diff).join(", "))),
                );
            }
        }
        Err(e) => b.identity("products: x-space definitions", false, Some(e.to_string())),
    }

    let residual = combination_residual(&k, &c, &forms);
    b.identity(
        "combination identity",
        residual.is_zero(),
        (!residual.is_zero()).then(|| format!("residual at {}", nonzero_terms(&residual).join(", "))),
    );

    let m = multipliers(&k, &c);
    b.sign("multiplier of P1: c14 > 0", &m[0], Sign::Positive);
    b.sign("multiplier of P2: c14 + c24 > 0", &m[1], Sign::Positive);
    b.sign("multiplier of P3: -(c23 + rho*c14) > 0", &m[2], Sign::Positive);
    b.sign("multiplier of P4: c23 - c34 - theta/gamma*(c14 + c24) > 0", &m[3], Sign::Positive);
    b.sign("c11 < 0", &c.c11, Sign::Negative);
    let disc = discriminant(&c);
    b.sign("discriminant (c12-c14)^2 - 4c11(c22+c14) < 0", &disc, Sign::Negative);

    match bcw_constant(&k) {
        Ok(bcw) => {
            let back = (k.gamma.embed_int(2) + k.gamma.clone()) * bcw.clone() - one.clone();
            b.zero("(2 + gamma) * 1/(2 + gamma) = 1", &back);
            let third = bcw.clone() - k.gamma.embed(&rat(1, 3));
            let half = k.gamma.embed(&rat(1, 2)) - bcw.clone();
            let r = b.push(
                "1/3 < 1/(2 + gamma) < 1/2",
                CheckKind::Sign,
                third.sign() == Sign::Positive && half.sign() == Sign::Positive,
            );
            r.approx = Some(bcw.approx(4));
            approximations.push(("1/(2+gamma)".to_string(), bcw.approx(4)));
        }
        Err(e) => b.identity("1/(2 + gamma)", false, Some(e.to_string())),
    }

    let lam = k.lambda_interval.midpoint();
    let lam_digits = format_decimal(&lam, 6);
    approximations.splice(
        0..0,
        [
            ("gamma".to_string(), k.gamma.approx(6)),
            ("lambda".to_string(), lam_digits),
            ("w".to_string(), k.w.approx(4)),
            ("gamma^2".to_string(), k.gamma.pow(2).approx(4)),
            ("theta".to_string(), k.theta.approx(4)),
            ("rho".to_string(), k.rho.approx(6)),
            ("c11".to_string(), c.c11.approx(4)),
            ("c14".to_string(), c.c14.approx(4)),
            ("c14+c24".to_string(), m[1].approx(4)),
            ("-(c23+rho*c14)".to_string(), m[2].approx(4)),
            ("c23-c34-theta/gamma*(c14+c24)".to_string(), m[3].approx(4)),
            ("discriminant".to_string(), disc.approx(4)),
        ],
    );
    finish(b, approximations, mutation)
}
