use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::format_scaled;
use super::{
    format_rational, isolate_root, rat, round_half_even, sturm_count, FieldError,
    IsolatingInterval, Poly, Rational, Ring, Scalar, Sign,
};

/// `Q(α)` for a squarefree defining polynomial `f` and a distinguished
/// real root `α` pinned down by a rational isolating interval.
///
/// Elements are stored as their remainder modulo `f`. Nothing here
/// assumes `f` is irreducible: zero-testing goes through `gcd(rep, f)`
/// and decides on which factor `α` lies.
pub struct NumberField {
    modulus: Poly,
    root: IsolatingInterval,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(root of {} in [{}, {}])", self.modulus, self.root.lo, self.root.hi)
    }
}

static GAMMA_FIELD: OnceLock<Arc<NumberField>> = OnceLock::new();

impl NumberField {
    /// Builds the field from `modulus` and a bracket `[lo, hi]` that must
    /// contain exactly one of its roots.
    pub fn new(modulus: Poly, lo: &Rational, hi: &Rational) -> Result<Arc<Self>, FieldError> {
        match modulus.degree() {
            None | Some(0) => return Err(FieldError::ConstantModulus),
            _ => {}
        }
        if !modulus.is_squarefree() {
            return Err(FieldError::NotSquarefree);
        }
        let count = sturm_count(&modulus, lo, hi)?;
        if count != 1 {
            return Err(FieldError::NotIsolating(count));
        }
        let width = Rational::new(BigInt::one(), BigInt::one() << 64);
        let root = isolate_root(&modulus, lo, hi, &width)?;
        Ok(Arc::new(NumberField { modulus, root }))
    }

    /// `8x⁵ + 4x⁴ − 12x³ − 7x² + 2x + 4`.
    pub fn gamma_polynomial() -> Poly {
        Poly::from_ints(&[4, 2, -7, -12, 4, 8])
    }

    /// `2x³ + x² − 1`.
    pub fn lambda_polynomial() -> Poly {
        Poly::from_ints(&[-1, 0, 1, 2])
    }

    /// `Q(γ)` with γ the root of [`NumberField::gamma_polynomial`] in `[0, 1]`.
    pub fn gamma() -> Arc<Self> {
        GAMMA_FIELD
            .get_or_init(|| {
                NumberField::new(Self::gamma_polynomial(), &rat(0, 1), &rat(1, 1))
                    .expect("the defining quintic has a unique simple root in [0, 1]")
            })
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn root_interval(&self) -> &IsolatingInterval {
        &self.root
    }

    /// Reduces an arbitrary coefficient sequence (lowest degree first).
    pub fn element(self: &Arc<Self>, raw: &[Rational]) -> FieldElement {
        self.from_poly(&Poly::new(raw.to_vec()))
    }

    pub fn from_poly(self: &Arc<Self>, poly: &Poly) -> FieldElement {
        let rem = poly.rem(&self.modulus).expect("modulus is nonzero");
        FieldElement {
            field: self.clone(),
            rep: rem,
        }
    }

    pub fn from_rational(self: &Arc<Self>, r: &Rational) -> FieldElement {
        self.from_poly(&Poly::constant(r.clone()))
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        self.from_rational(&rat(n, 1))
    }

    /// The distinguished root itself.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&Poly::x())
    }

    fn same(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.modulus == other.modulus && self.root_overlaps(other)
    }

    fn root_overlaps(&self, other: &NumberField) -> bool {
        self.root.lo <= other.root.hi && other.root.lo <= self.root.hi
    }
}

/// Reduces `raw` (coefficients of a polynomial in γ, lowest first) to the
/// canonical degree-≤4 representative in `Q(γ)`.
pub fn reduce_mod_p(raw: &[Rational]) -> FieldElement {
    NumberField::gamma().element(raw)
}

/// An element `a0 + a1·α + … + a_{n-1}·α^{n-1}` of a [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    rep: Poly,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Exactly `degree` coordinates, lowest power first.
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.field.degree()).map(|i| self.rep.coeff(i)).collect()
    }

    /// Coordinates rendered as `"p/q"` strings.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords().iter().map(format_rational).collect()
    }

    pub fn representative(&self) -> &Poly {
        &self.rep
    }

    /// `Some(r)` when the representative is the constant `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.rep.is_zero() {
            return true;
        }
        let g = Poly::gcd(&self.rep, &self.field.modulus);
        if g.degree() == Some(0) {
            return false;
        }
        // every root of g is a root of the modulus, and the isolating
        // interval holds exactly one of those: the distinguished root
        let iv = &self.field.root;
        sturm_count(&g, &iv.lo, &iv.hi).map(|n| n > 0).unwrap_or(false)
    }

    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut iv = self.field.root.clone();
        loop {
            let (lo, hi) = enclose(&self.rep, &iv);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            iv.bisect(&self.field.modulus);
            if iv.lo == iv.hi {
                return Sign::of_rational(&self.rep.eval(&iv.lo));
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = Poly::ext_gcd(&self.rep, &self.field.modulus);
        if g.degree() == Some(0) {
            return Ok(self.field.from_poly(&s));
        }
        // The modulus splits as g·h with the root on h (it is not a root of
        // self, hence not of g). Invert modulo h and lift back: any
        // representative congruent modulo h agrees at the root.
        let h = self.field.modulus.div_rem(&g).expect("nonzero").0;
        let (g2, s2, _) = Poly::ext_gcd(&self.rep, &h);
        debug_assert_eq!(g2.degree(), Some(0));
        Ok(self.field.from_poly(&s2))
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        (0..e).fold(self.one_like(), |acc, _| acc * self.clone())
    }

    /// Rational enclosure `[lo, hi]` of the value with `hi − lo ≤ width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        let mut iv = self.field.root.clone();
        loop {
            let (lo, hi) = enclose(&self.rep, &iv);
            if &(&hi - &lo) <= width {
                return (lo, hi);
            }
            iv.bisect(&self.field.modulus);
        }
    }

    /// Decimal string with `digits` fractional digits, rounded half-even.
    pub fn approx(&self, digits: usize) -> String {
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
        if let Some(r) = self.as_rational() {
            return format_scaled(&round_half_even(&(r * &scale)), digits);
        }
        let mut iv = self.field.root.clone();
        // enough halvings to separate any irrational value from a tie;
        // past this the lower end is reported
        for _ in 0..4096 {
            let (lo, hi) = enclose(&self.rep, &iv);
            let (a, b) = (round_half_even(&(&lo * &scale)), round_half_even(&(&hi * &scale)));
            if a == b || iv.lo == iv.hi {
                return format_scaled(&a, digits);
            }
            iv.bisect(&self.field.modulus);
        }
        let (lo, _) = enclose(&self.rep, &iv);
        format_scaled(&round_half_even(&(lo * scale)), digits)
    }

    pub fn to_f64(&self) -> f64 {
        let width = Rational::new(BigInt::one(), BigInt::one() << 60);
        let (lo, hi) = self.enclosure(&width);
        num_traits::ToPrimitive::to_f64(&((lo + hi) / rat(2, 1))).unwrap_or(f64::NAN)
    }

    fn check_field(&self, other: &FieldElement) {
        assert!(
            self.field.same(&other.field),
            "mixing elements of different number fields"
        );
    }
}

/// Interval-arithmetic range of `poly` over `[iv.lo, iv.hi]` (Horner).
fn enclose(poly: &Poly, iv: &IsolatingInterval) -> (Rational, Rational) {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for c in poly.coeffs().iter().rev() {
        let products = [&lo * &iv.lo, &lo * &iv.hi, &hi * &iv.lo, &hi * &iv.hi];
        let min = products.iter().min().expect("nonempty").clone();
        let max = products.iter().max().expect("nonempty").clone();
        lo = min + c;
        hi = max + c;
    }
    (lo, hi)
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.rep)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.approx(6))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && (self.clone() - other.clone()).is_zero()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        self.field.from_poly(&(&self.rep * &rhs.rep))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep: -&self.rep,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Ring for FieldElement {
    fn embed(&self, r: &Rational) -> Self {
        self.field.from_rational(r)
    }
}

impl Scalar for FieldElement {
    fn sign(&self) -> Sign {
        FieldElement::sign(self)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inverse()?)
    }

    fn to_f64(&self) -> f64 {
        FieldElement::to_f64(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gamma() -> FieldElement {
        NumberField::gamma().generator()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c, 1)).collect()
    }

    #[test]
    fn reduces_fifth_power() {
        let mut raw = ints(&[0, 0, 0, 0, 0, 1]);
        let e = reduce_mod_p(&raw);
        assert_eq!(
            e.coords(),
            vec![rat(-1, 2), rat(-1, 4), rat(7, 8), rat(3, 2), rat(-1, 2)]
        );
        raw = ints(&[0, 0, 1]);
        assert_eq!(reduce_mod_p(&raw).coords(), ints(&[0, 0, 1, 0, 0]));
        let p = ints(&[4, 2, -7, -12, 4, 8]);
        assert!(reduce_mod_p(&p).coords().iter().all(Zero::is_zero));
        assert!(reduce_mod_p(&p).is_zero());
    }

    #[test]
    fn reduction_matches_naive_remainder() {
        let raw = ints(&[3, -1, 4, 1, -5, 9, 2, -6, 5]);
        let naive = Poly::new(raw.clone())
            .div_rem(&NumberField::gamma_polynomial())
            .unwrap()
            .1;
        assert_eq!(reduce_mod_p(&raw).representative(), &naive);
        let again = reduce_mod_p(&reduce_mod_p(&raw).coords());
        assert_eq!(again.coords(), reduce_mod_p(&raw).coords());
    }

    #[test]
    fn gamma_inverse() {
        let g = gamma();
        let inv = g.inverse().unwrap();
        // 1/γ = −(8γ⁴ + 4γ³ − 12γ² − 7γ + 2)/4
        assert_eq!(
            inv.coords(),
            vec![rat(-1, 2), rat(7, 4), rat(3, 1), rat(-1, 1), rat(-2, 1)]
        );
        assert!((&g * &inv - g.one_like()).is_zero());
        let one = g.one_like();
        assert_eq!(one.inverse().unwrap().coords(), one.coords());
        let w = g.pow(2) + g.pow(3) * g.embed_int(2);
        let winv = w.inverse().unwrap();
        assert_eq!((&w * &winv).coords(), ints(&[1, 0, 0, 0, 0]));
        assert_eq!(g.zero_like().inverse().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn zero_test_and_sign() {
        let g = gamma();
        assert!(g.zero_like().is_zero());
        assert!(!(g.clone() - g.one_like()).is_zero());
        assert_eq!((g.clone() - g.one_like()).sign(), Sign::Negative);
        assert_eq!(g.sign(), Sign::Positive);
        assert_eq!(g.zero_like().sign(), Sign::Zero);
        let w = g.pow(2) + g.pow(3) * g.embed_int(2);
        assert_eq!((w.clone() - w.one_like()).sign(), Sign::Positive);
        assert_eq!((w.one_like() + g.pow(2) - w).sign(), Sign::Positive);
    }

    #[test]
    fn zero_test_with_reducible_modulus() {
        // (x − 1/2)(x² − 2) has the root 1/2 in [0, 1]; x − 1/2 is zero there
        // while x² − 2 is not, although both share a factor with the modulus
        let m = &Poly::new(vec![rat(-1, 2), rat(1, 1)]) * &Poly::from_ints(&[-2, 0, 1]);
        let field = NumberField::new(m, &rat(0, 1), &rat(1, 1)).unwrap();
        let a = field.element(&[rat(-1, 2), rat(1, 1)]);
        let b = field.element(&ints(&[-2, 0, 1]));
        assert!(a.is_zero());
        assert!(!b.is_zero());
        assert_eq!(b.sign(), Sign::Negative);
        let binv = b.inverse().unwrap();
        assert!((&b * &binv - b.one_like()).is_zero());
    }

    #[test]
    fn rejects_bad_moduli() {
        let sq = &NumberField::lambda_polynomial() * &NumberField::lambda_polynomial();
        assert_eq!(
            NumberField::new(sq, &rat(0, 1), &rat(1, 1)).unwrap_err(),
            FieldError::NotSquarefree
        );
        let mutated = Poly::from_ints(&[5, 2, -7, -12, 4, 8]);
        assert!(matches!(
            NumberField::new(mutated, &rat(0, 1), &rat(1, 1)),
            Err(FieldError::EndpointRoot(_))
        ));
        assert_eq!(
            NumberField::new(Poly::from_ints(&[3]), &rat(0, 1), &rat(1, 1)).unwrap_err(),
            FieldError::ConstantModulus
        );
    }

    #[test]
    fn approximations() {
        let g = gamma();
        // 0.71553886…: the familiar six-digit form is a truncation
        assert_eq!(g.approx(6), "0.715539");
        assert!(g.approx(7).starts_with("0.715538"));
        let theta = g.embed_int(2) + g.embed_int(2) * g.clone() - g.embed_int(4) * g.pow(3);
        assert_eq!(theta.approx(4), "1.9657");
        let rho = theta.one_like() + theta.clone() - &theta * &g.inverse().unwrap();
        let r4 = rho.approx(4);
        assert!(r4 == "0.2185" || r4 == "0.2186", "{r4}");
        assert_eq!(g.embed(&rat(1, 8)).approx(2), "0.12");
        assert_eq!(g.embed(&rat(-3, 8)).approx(2), "-0.38");
        assert!((g.to_f64() - 0.715538).abs() < 1e-6);
    }

    #[test]
    fn lambda_field() {
        let field =
            NumberField::new(NumberField::lambda_polynomial(), &rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(field.generator().approx(6), "0.657298");
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        prop::collection::vec(small(), 5).prop_map(|c| reduce_mod_p(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(((&a * &b) * c.clone()).coords(), (&a * &(&b * &c)).coords());
            prop_assert_eq!((&a * &(&b + &c)).coords(), (&(&a * &b) + &(&a * &c)).coords());
            prop_assert_eq!((&a * &b).coords(), (&b * &a).coords());
            if !a.is_zero() {
                let inv = a.inverse().unwrap();
                prop_assert_eq!((&a * &inv).coords(), ints(&[1, 0, 0, 0, 0]));
            }
        }

        #[test]
        fn sign_matches_enclosure(a in element()) {
            let s = a.sign();
            let (lo, hi) = a.enclosure(&rat(1, 1_000_000_000));
            match s {
                Sign::Positive => prop_assert!(hi.is_positive()),
                Sign::Negative => prop_assert!(lo.is_negative()),
                Sign::Zero => prop_assert!(a.coords().iter().all(Zero::is_zero)),
            }
            let f = a.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(f > 0.0, s == Sign::Positive);
            }
        }

        #[test]
        fn embedded_rational_sign(r in small()) {
            let e = NumberField::gamma().from_rational(&r);
            prop_assert_eq!(e.sign(), Sign::of_rational(&r));
        }
    }
}
