use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.73"`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let t = s.trim();
    let err = || FieldError::Parse(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// `"p/q"` with an explicit denominator, including `"/1"` for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest integer, ties to even.
pub fn round_half_even(r: &Rational) -> BigInt {
    let floor = r.floor().to_integer();
    let frac = r - Rational::from_integer(floor.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Renders the integer `k` as the decimal `k / 10^digits`.
/// `r` rounded half-to-even to `digits` decimal places.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = Rational::from_integer(BigInt::from(10).pow(digits as u32));
    format_scaled(&round_half_even(&(r * scale)), digits)
}

pub(crate) fn format_scaled(k: &BigInt, digits: usize) -> String {
    let sign = if k.is_negative() { "-" } else { "" };
    let s = k.abs().to_string();
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let padded = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    format!("{sign}{int}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&rat(0, 5)), "0/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("56/45").unwrap(), rat(56, 45));
        assert_eq!(parse_rational(" -3 ").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("0.73").unwrap(), rat(73, 100));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn rounding_ties_to_even() {
        assert_eq!(round_half_even(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(7, 2)), BigInt::from(4));
        assert_eq!(round_half_even(&rat(-5, 2)), BigInt::from(-2));
        assert_eq!(round_half_even(&rat(-7, 3)), BigInt::from(-2));
        assert_eq!(round_half_even(&rat(26, 10)), BigInt::from(3));
    }

    #[test]
    fn scaled_formatting() {
        assert_eq!(format_scaled(&BigInt::from(715538), 6), "0.715538");
        assert_eq!(format_scaled(&BigInt::from(-7033), 4), "-0.7033");
        assert_eq!(format_scaled(&BigInt::from(12447), 4), "1.2447");
        assert_eq!(format_scaled(&BigInt::from(5), 3), "0.005");
    }
}
