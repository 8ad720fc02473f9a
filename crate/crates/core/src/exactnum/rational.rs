//! Exact rational scalars and their text forms.
//!
//! Rationals print as `p/q` (or `p` when `q = 1`) and parse from that form
//! or from a decimal literal such as `-2.781e-7`, which is converted digit by
//! digit with no rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision fraction (positive denominator, reduced).
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

const MAX_DECIMAL_SHIFT: u32 = 4096;

/// Parse `p/q`, an integer, or a decimal literal with optional exponent.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(whole.len() + frac.len() + 1);
    all.push_str(whole);
    all.push_str(frac);
    let mut numer: BigInt = all.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac.len() as i32;
    if shift.unsigned_abs() > MAX_DECIMAL_SHIFT {
        return None;
    }
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    Some(if shift >= 0 {
        Rational::from_integer(numer * scale)
    } else {
        Rational::new(numer, scale)
    })
}

/// `p/q` text, or `p` for integers.
pub fn to_fraction_string(x: &Rational) -> String {
    x.to_string()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Format with `sig` significant digits, `%g` style.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= sig as i32 {
        let s = format!("{:.*e}", sig.saturating_sub(1), x);
        let (m, e) = s.split_once('e').unwrap();
        format!("{}e{}", trim_zeros(m), e)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Twelve significant digits, the decimal form used in reports.
pub fn to_decimal_string(x: &Rational) -> String {
    format_sig(to_f64(x), 12)
}

/// Serde adapters: rationals travel as `"p/q"` strings; plain JSON numbers
/// are accepted on input and converted exactly from their literal text.
pub mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Item {
        Text(String),
        Number(serde_json::Number),
    }

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_fraction_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let items = Vec::<Item>::deserialize(d)?;
        items
            .into_iter()
            .map(|item| {
                let text = match item {
                    Item::Text(s) => s,
                    Item::Number(n) => n.to_string(),
                };
                parse_rational(&text).map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_reduces() {
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.01").unwrap(), ratio(1, 100));
        assert_eq!(parse_rational("-1e-4").unwrap(), ratio(-1, 10_000));
        assert_eq!(parse_rational("2.781e-7").unwrap(), ratio(2781, 10_000_000_000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3.").unwrap(), int(3));
        assert_eq!(parse_rational("1.5E2").unwrap(), int(150));
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn prints_canonical_form() {
        assert_eq!(to_fraction_string(&ratio(4, 8)), "1/2");
        assert_eq!(to_fraction_string(&ratio(-6, 3)), "-2");
        assert_eq!(to_fraction_string(&ratio(3, -9)), "-1/3");
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.75, 12), "0.75");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(2.78053e-7, 4), "2.781e-7");
        assert_eq!(format_sig(-21.0, 12), "-21");
        assert_eq!(format_sig(0.0, 12), "0");
    }
}
