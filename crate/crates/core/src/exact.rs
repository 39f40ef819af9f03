//! Exact numbers of the form `r + c·√d` and directed-rounded decimal output.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rounding direction for decimal output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rounding {
    pub fn as_str(self) -> &'static str {
        match self {
            Rounding::Down => "down",
            Rounding::Up => "up",
        }
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

pub fn from_biguint(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational of the form p/q: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `r + c·√d` with rational `r`, `c` and non-negative rational `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalExpr {
    pub r: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl From<BigRational> for RadicalExpr {
    fn from(r: BigRational) -> Self {
        RadicalExpr {
            r,
            c: BigRational::zero(),
            d: BigRational::zero(),
        }
    }
}

/// Exact square root of a non-negative rational when it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let a = x.numer().to_biguint()?;
    let b = x.denom().to_biguint()?;
    let (ra, rb) = (a.sqrt(), b.sqrt());
    (&ra * &ra == a && &rb * &rb == b).then(|| BigRational::new(ra.into(), rb.into()))
}

impl RadicalExpr {
    pub fn new(r: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidParameter(format!("square root of negative {d}")));
        }
        Ok(RadicalExpr { r, c, d })
    }

    /// `c·√d` alone.
    pub fn sqrt_term(c: BigRational, d: BigRational) -> Result<Self> {
        Self::new(BigRational::zero(), c, d)
    }

    pub fn is_rational(&self) -> bool {
        self.c.is_zero() || self.d.is_zero() || rational_sqrt(&self.d).is_some()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c.is_zero() || self.d.is_zero() {
            return Some(self.r.clone());
        }
        rational_sqrt(&self.d).map(|s| &self.r + &self.c * s)
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        RadicalExpr {
            r: &self.r + x,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, x: &BigRational) -> Self {
        RadicalExpr {
            r: &self.r * x,
            c: &self.c * x,
            d: self.d.clone(),
        }
    }

    /// Exact sign of `r + c·√d`.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let a = self.r.cmp(&zero);
        let b = if self.d.is_zero() {
            Ordering::Equal
        } else {
            self.c.cmp(&zero)
        };
        if b == Ordering::Equal {
            return a;
        }
        if a == Ordering::Equal || a == b {
            return b;
        }
        // opposite signs: the larger magnitude wins
        let rr = &self.r * &self.r;
        let cd = &self.c * &self.c * &self.d;
        match rr.cmp(&cd) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        self.add_rational(&-x).signum()
    }

    /// Exact comparison with another expression sharing the same radicand.
    pub fn cmp_same_radicand(&self, other: &RadicalExpr) -> Option<Ordering> {
        if self.d != other.d && !self.c.is_zero() && !other.c.is_zero() {
            return None;
        }
        let d = if self.c.is_zero() { other.d.clone() } else { self.d.clone() };
        let diff = RadicalExpr {
            r: &self.r - &other.r,
            c: &self.c - &other.c,
            d,
        };
        Some(diff.signum())
    }

    /// Enclosing interval `[lo, hi]` whose width is at most `2^-64` of the
    /// magnitude of the value (a point when the value is rational).
    pub fn enclose(&self) -> Interval {
        if let Some(x) = self.as_rational() {
            return Interval::point(x);
        }
        let a = self.d.numer().to_biguint().expect("radicand is non-negative");
        let b = self.d.denom().to_biguint().expect("denominator is positive");
        // √(a/b) = √(ab)/b
        let ab = &a * &b;
        let mut bits = 128u64;
        loop {
            let scaled: BigUint = &ab << (2 * bits);
            let root = scaled.sqrt();
            let den = BigInt::from(&b << bits);
            let lo_root = BigRational::new(BigInt::from(root.clone()), den.clone());
            let hi_root = BigRational::new(BigInt::from(root + 1u32), den);
            let (p, q) = (&self.r + &self.c * &lo_root, &self.r + &self.c * &hi_root);
            let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
            let width = &hi - &lo;
            let mag = lo.abs().min(hi.abs());
            let both_same_side = !(lo.is_negative() && hi.is_positive());
            let tight = &width * BigRational::from_integer(BigInt::one() << 64u32) <= mag;
            if both_same_side && tight {
                return Interval { lo, hi };
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose().lo.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() || self.d.is_zero() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.r, self.c, self.d)
        }
    }
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// `floor(log10(x))` for positive `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigRational::from_integer(10.into());
    let at = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::one() / BigRational::from_integer(pow10((-e) as u32))
        }
    };
    while at(e) > *x {
        e -= 1;
    }
    while at(e) * &ten <= *x {
        e += 1;
    }
    e
}

/// Render `x` with exactly `sig` significant digits, rounding in the given
/// direction. Plain notation for exponents in `[-30, 30]`, otherwise
/// scientific.
pub fn format_decimal(x: &BigRational, sig: u32, dir: Rounding) -> String {
    if x.is_zero() {
        return if sig > 1 {
            format!("0.{}", "0".repeat(sig as usize - 1))
        } else {
            "0".to_string()
        };
    }
    let negative = x.is_negative();
    let mag = x.abs();
    // rounding the magnitude: toward zero unless the direction says otherwise
    let away = matches!((dir, negative), (Rounding::Up, false) | (Rounding::Down, true));
    let mut e = decimal_exponent(&mag);
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &mag * BigRational::from_integer(pow10(shift as u32))
    } else {
        &mag / BigRational::from_integer(pow10((-shift) as u32))
    };
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = q;
    if away && !rem.is_zero() {
        digits += 1;
    }
    if digits == pow10(sig) {
        digits /= 10;
        e += 1;
    }
    let s = digits.to_str_radix(10);
    debug_assert_eq!(s.len(), sig as usize);
    let sign = if negative { "-" } else { "" };
    if (-30..=30).contains(&e) {
        let body = if e >= 0 {
            let int_len = e as usize + 1;
            if int_len >= s.len() {
                format!("{s}{}", "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{s}", "0".repeat((-e - 1) as usize))
        };
        format!("{sign}{body}")
    } else {
        let mantissa = if s.len() > 1 {
            format!("{}.{}", &s[..1], &s[1..])
        } else {
            s
        };
        format!("{sign}{mantissa}e{e}")
    }
}

/// Exact integer or reduced fraction as `"p/q"`.
pub fn rational_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn is_nonneg_integer(x: &BigRational) -> bool {
    x.is_integer() && x.numer().sign() != Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(rational_string(&rat(6, 3)), "2");
        assert_eq!(rational_string(&rat(3, 5)), "3/5");
    }

    #[test]
    fn signs() {
        // 1 - √2 < 0
        let e = RadicalExpr::new(rat(1, 1), rat(-1, 1), rat(2, 1)).unwrap();
        assert_eq!(e.signum(), Ordering::Less);
        // 3/2 - √(9/4) = 0
        let e = RadicalExpr::new(rat(3, 2), rat(-1, 1), rat(9, 4)).unwrap();
        assert_eq!(e.signum(), Ordering::Equal);
        // -1 + √2 > 0
        let e = RadicalExpr::new(rat(-1, 1), rat(1, 1), rat(2, 1)).unwrap();
        assert_eq!(e.signum(), Ordering::Greater);
        assert_eq!(e.cmp_rational(&rat(2, 5)), Ordering::Greater);
        assert_eq!(e.cmp_rational(&rat(1, 2)), Ordering::Less);
    }

    #[test]
    fn enclosure_width() {
        let e = RadicalExpr::new(rat(3, 4), rat(-11, 1), rat(1, 10_000)).unwrap();
        let i = e.enclose();
        assert!(i.is_point());
        let e = RadicalExpr::new(rat(1, 1), rat(-1, 1), rat(2, 5)).unwrap();
        let i = e.enclose();
        assert!(i.lo < i.hi);
        let w = (&i.hi - &i.lo) * int(BigInt::one() << 64u32);
        assert!(w <= i.lo.abs());
        assert_eq!(e.cmp_rational(&i.lo), Ordering::Greater);
        assert_eq!(e.cmp_rational(&i.hi), Ordering::Less);
    }

    #[test]
    fn decimals() {
        assert_eq!(format_decimal(&rat(6389, 10_000), 12, Rounding::Down), "0.638900000000");
        assert_eq!(format_decimal(&rat(2, 3), 4, Rounding::Down), "0.6666");
        assert_eq!(format_decimal(&rat(2, 3), 4, Rounding::Up), "0.6667");
        assert_eq!(format_decimal(&rat(-2, 3), 4, Rounding::Down), "-0.6667");
        assert_eq!(format_decimal(&rat(-2, 3), 4, Rounding::Up), "-0.6666");
        assert_eq!(format_decimal(&rat(91, 4), 4, Rounding::Up), "22.75");
        assert_eq!(format_decimal(&rat(16, 1), 3, Rounding::Down), "16.0");
        assert_eq!(format_decimal(&rat(999_999, 1), 3, Rounding::Up), "1000000");
        assert_eq!(format_decimal(&rat(1, 1000), 2, Rounding::Down), "0.0010");
        let tiny = BigRational::new(1.into(), pow10(40));
        assert_eq!(format_decimal(&tiny, 3, Rounding::Down), "1.00e-40");
        assert_eq!(format_decimal(&rat(0, 1), 3, Rounding::Down), "0.00");
    }

    proptest! {
        #[test]
        fn signum_matches_enclosure(r in -1000i64..1000, c in -50i64..50, d in 0i64..500, q in 1i64..40) {
            let e = RadicalExpr::new(rat(r, q), rat(c, 1), rat(d, q)).unwrap();
            let i = e.enclose();
            match e.signum() {
                Ordering::Greater => prop_assert!(i.lo.is_positive()),
                Ordering::Less => prop_assert!(i.hi.is_negative()),
                Ordering::Equal => prop_assert!(i.is_point() && i.lo.is_zero()),
            }
            let f = (r as f64) / (q as f64) + (c as f64) * ((d as f64) / (q as f64)).sqrt();
            prop_assert!(i.lo.to_f64().unwrap() <= f + 1e-9 && f - 1e-9 <= i.hi.to_f64().unwrap());
        }

        #[test]
        fn decimal_brackets(p in -100_000i64..100_000, q in 1i64..1000) {
            let x = rat(p, q);
            let lo = parse_decimal(&format_decimal(&x, 6, Rounding::Down));
            let hi = parse_decimal(&format_decimal(&x, 6, Rounding::Up));
            prop_assert!(lo <= x && x <= hi);
        }
    }

    fn parse_decimal(s: &str) -> BigRational {
        let (body, exp) = match s.split_once('e') {
            Some((b, e)) => (b, e.parse::<i32>().unwrap()),
            None => (s, 0),
        };
        let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
        let digits: BigInt = format!("{int_part}{frac}").parse().unwrap();
        let mut x = BigRational::new(digits, pow10(frac.len() as u32));
        if exp >= 0 {
            x *= BigRational::from_integer(pow10(exp as u32));
        } else {
            x /= BigRational::from_integer(pow10((-exp) as u32));
        }
        x
    }
}
