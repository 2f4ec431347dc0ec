use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};


use super::{rat, FieldError, Rational, Sign};

/// Dense univariate polynomial over the rationals, lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> Sign {
        Sign::of_rational(&self.eval(x))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64, 1))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(rat(1, 1)), |acc, _| &acc * self)
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let factor = &rem[top] / &lc;
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Option<Poly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let one = Poly::constant(rat(1, 1));
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        Poly::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Image of the polynomial under `x ↦ value` for any ring value.
    pub fn eval_in<R: super::Ring>(&self, value: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(value.zero_like(), |acc, c| acc * value.clone() + value.embed(c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            if !unit || i == 0 {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl super::Ring for Poly {
    fn embed(&self, r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
}

/// Rational interval `[lo, hi]` known to contain exactly one real root of
/// a given polynomial, which changes sign across it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2, 1)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Halve the interval, keeping the half in which `f` changes sign.
    /// If the midpoint is itself a root, the interval collapses to it.
    pub fn bisect(&mut self, f: &Poly) {
        let mid = self.midpoint();
        let s_mid = f.sign_at(&mid);
        if s_mid == Sign::Zero {
            self.lo = mid.clone();
            self.hi = mid;
        } else if f.sign_at(&self.lo) == s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

/// Standard Sturm sequence `f, f', -rem(f, f'), ...`.
pub fn sturm_sequence(f: &Poly) -> Vec<Poly> {
    let mut seq = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign_variations(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<Sign> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|s| *s != Sign::Zero)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `f` in `(lo, hi)`.
pub fn sturm_count(f: &Poly, lo: &Rational, hi: &Rational) -> Result<usize, FieldError> {
    if lo >= hi {
        return Err(FieldError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    for end in [lo, hi] {
        if f.sign_at(end) == Sign::Zero {
            return Err(FieldError::EndpointRoot(end.to_string()));
        }
    }
    let seq = sturm_sequence(f);
    Ok(sign_variations(&seq, lo) - sign_variations(&seq, hi))
}

/// Shrinks `[lo, hi]` around the unique root of `f` it contains until the
/// width is at most `width`.
pub fn isolate_root(
    f: &Poly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<IsolatingInterval, FieldError> {
    let count = sturm_count(f, lo, hi)?;
    if count != 1 {
        return Err(FieldError::NotIsolating(count));
    }
    let mut iv = IsolatingInterval {
        lo: lo.clone(),
        hi: hi.clone(),
    };
    if f.sign_at(lo) == f.sign_at(hi) {
        // a root of even multiplicity; sign bisection cannot track it
        return Err(FieldError::NotSquarefree);
    }
    while &iv.width() > width {
        iv.bisect(f);
        if iv.lo == iv.hi {
            // exact rational root: widen symmetrically inside the old bracket
            let r = iv.lo.clone();
            let eps = width / rat(4, 1);
            let mut e = eps;
            loop {
                let (a, b) = (&r - &e, &r + &e);
                if a > *lo && b < *hi && sturm_count(f, &a, &b) == Ok(1) {
                    return Ok(IsolatingInterval { lo: a, hi: b });
                }
                e = e / rat(2, 1);
            }
        }
    }
    Ok(iv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Poly {
        Poly::from_ints(&[4, 2, -7, -12, 4, 8])
    }

    fn q() -> Poly {
        Poly::from_ints(&[-1, 0, 1, 2])
    }

    /// Sign-change count on a fine rational grid: an independent (lower
    /// bound) oracle for the number of roots.
    fn grid_sign_changes(f: &Poly, lo: i64, hi: i64, steps: i64) -> usize {
        let pts: Vec<Sign> = (0..=steps)
            .map(|i| f.sign_at(&(rat(lo, 1) + rat((hi - lo) * i, steps))))
            .collect();
        pts.windows(2).filter(|w| w[0] != w[1]).count()
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[3, -1, 0, 5, 2, 7, 1]);
        let b = Poly::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(a.div_rem(&Poly::zero()).is_none());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[2, 0, 1]);
        let b = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[5, 1]);
        let (g, s, t) = Poly::ext_gcd(&a, &b);
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn defining_polynomials_are_squarefree() {
        assert!(p().is_squarefree());
        assert!(q().is_squarefree());
        assert!(!(&q() * &q()).is_squarefree());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_count(&p(), &rat(0, 1), &rat(1, 1)), Ok(1));
        assert_eq!(sturm_count(&q(), &rat(0, 1), &rat(1, 1)), Ok(1));
        assert_eq!(sturm_count(&p(), &rat(2, 1), &rat(3, 1)), Ok(0));
        assert!(sturm_count(&p(), &rat(-10, 1), &rat(10, 1)).unwrap() >= 1);
        let err = sturm_count(&q(), &rat(0, 1), &rat(1, 2));
        assert!(err.is_ok());
        // x = 1 is a root of x^2 - 1
        let e = sturm_count(&Poly::from_ints(&[-1, 0, 1]), &rat(0, 1), &rat(1, 1));
        assert!(matches!(e, Err(FieldError::EndpointRoot(_))));
    }

    #[test]
    fn sturm_agrees_with_grid_oracle() {
        // grid sign changes never exceed the root count; for these
        // well-separated examples they coincide
        for (f, lo, hi) in [
            (p(), -10, 10),
            (q(), -10, 10),
            (Poly::from_ints(&[6, -5, -2, 1]), -10, 10), // roots -2, 1, 3
        ] {
            let n = sturm_count(&f, &rat(lo, 1), &rat(hi, 1)).unwrap();
            assert_eq!(n, grid_sign_changes(&f, lo, hi, 20011));
        }
    }

    #[test]
    fn isolates_gamma_and_lambda() {
        let w = rat(1, 1_000_000);
        let g = isolate_root(&p(), &rat(0, 1), &rat(1, 1), &w).unwrap();
        assert!((g.midpoint() - rat(715538, 1_000_000)).abs() <= w);
        assert!(g.width() <= w);
        assert!(g.lo > rat(7155, 10000) && g.hi < rat(7156, 10000));
        let l = isolate_root(&q(), &rat(0, 1), &rat(1, 1), &w).unwrap();
        assert!((l.midpoint() - rat(657298, 1_000_000)).abs() <= w);
        assert!(l.lo > rat(6572, 10000) && l.hi < rat(6573, 10000));
    }

    #[test]
    fn narrow_bracket() {
        assert_eq!(p().sign_at(&rat(7, 10)), Sign::Positive);
        assert_eq!(p().sign_at(&rat(72, 100)), Sign::Negative);
        let iv = isolate_root(&p(), &rat(7, 10), &rat(72, 100), &rat(1, 100)).unwrap();
        assert!(iv.lo >= rat(7, 10) && iv.hi <= rat(72, 100));
        assert!(iv.width() <= rat(1, 100));
    }

    #[test]
    fn isolation_requires_unique_root() {
        let f = Poly::from_ints(&[6, -5, -2, 1]);
        assert_eq!(
            isolate_root(&f, &rat(-5, 1), &rat(5, 1), &rat(1, 10)),
            Err(FieldError::NotIsolating(3))
        );
    }

    #[test]
    fn rational_root_is_isolated() {
        let f = Poly::from_ints(&[-1, 2]); // root 1/2, the first midpoint
        let iv = isolate_root(&f, &rat(0, 1), &rat(1, 1), &rat(1, 100)).unwrap();
        assert!(iv.contains(&rat(1, 2)) && iv.lo < iv.hi);
        assert!(iv.width() <= rat(1, 100));
    }

    #[test]
    fn display() {
        assert_eq!(p().to_string(), "8x^5 + 4x^4 - 12x^3 - 7x^2 + 2x + 4");
        assert_eq!(q().to_string(), "2x^3 + x^2 - 1");
    }
}
