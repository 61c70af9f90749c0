//! Exact scalars: the field ℚ(i) of Gaussian rationals.
//!
//! Every coefficient in the workbench lives here. `Rational` is an
//! arbitrary-precision reduced fraction (numerator carries the sign,
//! denominator is positive); `GaussianRational` is a pair of those.
//! There is no floating point anywhere: `(x + y) - y == x` holds exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Reduced arbitrary-precision fraction, the real and imaginary parts of a scalar.
pub type Rational = BigRational;

/// Error raised when a scalar cannot be built or parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// Zero denominator in `gq_normalize` or in a parsed fraction.
    ZeroDenominator,
    /// Unparseable textual form; carries the offending fragment.
    Malformed(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::ZeroDenominator => write!(f, "malformed scalar: zero denominator"),
            ScalarError::Malformed(s) => write!(f, "malformed scalar: {s:?}"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// An element of ℚ(i), stored as canonical (individually reduced) real and
/// imaginary parts. Equality is component-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Short alias used pervasively in this crate.
pub type Gq = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Gq { re: Rational::one(), im: Rational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gq { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_int(k: i64) -> Self {
        Gq { re: Rational::from_integer(BigInt::from(k)), im: Rational::zero() }
    }

    /// `re + im·i` from machine integers.
    pub fn from_ints(re: i64, im: i64) -> Self {
        Gq {
            re: Rational::from_integer(BigInt::from(re)),
            im: Rational::from_integer(BigInt::from(im)),
        }
    }

    /// `a/b` as a real scalar.
    pub fn from_frac(a: i64, b: i64) -> Self {
        assert!(b != 0, "zero denominator");
        Gq { re: Rational::new(BigInt::from(a), BigInt::from(b)), im: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|² = re² + im², a rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; panics on zero (callers check).
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero scalar");
        Gq { re: &self.re / &n, im: -&self.im / &n }
    }

    /// i^k for any integer k (the units of the Gaussian integers).
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gq::one(),
            1 => Gq::i(),
            2 => -Gq::one(),
            _ => -Gq::i(),
        }
    }

    /// Canonical textual form: `p/q`, `r/s*i` or `p/q+r/s*i` (denominator 1 omitted,
    /// sign carried by the numerator). This is the form used verbatim in files.
    pub fn to_text(&self) -> String {
        if self.im.is_zero() {
            return rational_text(&self.re);
        }
        let im = format!("{}*i", rational_text(&self.im));
        if self.re.is_zero() {
            im
        } else if self.im.is_negative() {
            format!("{}-{}*i", rational_text(&self.re), rational_text(&-self.im.clone()))
        } else {
            format!("{}+{}", rational_text(&self.re), im)
        }
    }

    /// Parse the textual forms accepted by the file format and the CLI:
    /// `p/q`, `p/q+r/s*i`, `p/q-r/s*i`, `r/s*i`, `i`, `-i`, `3i`, ...
    pub fn parse_text(s: &str) -> Result<Self, ScalarError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ScalarError::Malformed(String::new()));
        }
        // Split at the last top-level '+'/'-' (not at position 0, not after '/'
        // or '*': those belong to the preceding token).
        let bytes = s.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, '/' | '*' | '+' | '-') {
                split = Some(idx);
                break;
            }
        }
        let (a, b) = match split {
            Some(idx) => (&s[..idx], &s[idx..]),
            None => ("", &s[..]),
        };
        if a.is_empty() {
            // single component: imaginary iff it mentions i
            if b.contains('i') {
                Ok(Gq { re: Rational::zero(), im: parse_im(b)? })
            } else {
                Ok(Gq { re: parse_rat(b)?, im: Rational::zero() })
            }
        } else {
            if !b.contains('i') {
                return Err(ScalarError::Malformed(s.clone()));
            }
            if a.contains('i') {
                return Err(ScalarError::Malformed(s.clone()));
            }
            Ok(Gq { re: parse_rat(a)?, im: parse_im(b)? })
        }
    }
}

/// Canonical `p/q` rendering of a rational (denominator 1 omitted).
pub fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rational, ScalarError> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| ScalarError::Malformed(s.into()))?;
            let d = BigInt::from_str(d).map_err(|_| ScalarError::Malformed(s.into()))?;
            if d.is_zero() {
                return Err(ScalarError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|_| ScalarError::Malformed(s.into()))?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Parse an imaginary component: `r/s*i`, `r*i`, `ri` (e.g. `3i`), `i`, `-i`, `+i`.
fn parse_im(s: &str) -> Result<Rational, ScalarError> {
    let body = s.strip_suffix('i').ok_or_else(|| ScalarError::Malformed(s.into()))?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rat(body),
    }
}

/// Canonicalise four integers into a scalar: `re_num/re_den + (im_num/im_den)·i`.
///
/// Rejects zero denominators; gcd reduction and sign normalisation are
/// performed component-wise.
pub fn gq_normalize(
    re_num: i64,
    re_den: i64,
    im_num: i64,
    im_den: i64,
) -> Result<GaussianRational, ScalarError> {
    if re_den == 0 || im_den == 0 {
        return Err(ScalarError::ZeroDenominator);
    }
    Ok(Gq {
        re: Rational::new(BigInt::from(re_num), BigInt::from(re_den)),
        im: Rational::new(BigInt::from(im_num), BigInt::from(im_den)),
    })
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// Gaussian integers (denominator 1 on every component) are by far the most
// common values in the calculus; Ratio's gcd normalisation is skipped for
// them since an integer result needs no reduction.
fn is_int(r: &Rational) -> bool {
    r.denom().is_one()
}

fn int(n: BigInt) -> Rational {
    Rational::new_raw(n, BigInt::from(1))
}

fn rat_add(a: &Rational, b: &Rational) -> Rational {
    if is_int(a) && is_int(b) {
        int(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rat_sub(a: &Rational, b: &Rational) -> Rational {
    if is_int(a) && is_int(b) {
        int(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    if is_int(a) && is_int(b) {
        int(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        Gq { re: rat_add(&self.re, &o.re), im: rat_add(&self.im, &o.im) }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        Gq { re: rat_sub(&self.re, &o.re), im: rat_sub(&self.im, &o.im) }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        Gq {
            re: rat_sub(&rat_mul(&self.re, &o.re), &rat_mul(&self.im, &o.im)),
            im: rat_add(&rat_mul(&self.re, &o.im), &rat_mul(&self.im, &o.re)),
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    // complex division is multiplication by the inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv();
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Gq { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re = rat_add(&self.re, &o.re);
        self.im = rat_add(&self.im, &o.im);
    }
}

macro_rules! owned_binop {
    ($trait:ident, $m:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gq_normalize_reduces() {
        let x = gq_normalize(2, 4, 0, 1).unwrap();
        assert_eq!(x, Gq::from_frac(1, 2));
        assert_eq!(x.to_text(), "1/2");
    }

    #[test]
    fn gq_normalize_sign() {
        // (0,5,−3,−6) → 0 + (1/2)i
        let x = gq_normalize(0, 5, -3, -6).unwrap();
        assert_eq!(x, Gq { re: Rational::zero(), im: Rational::new(1.into(), 2.into()) });
        assert_eq!(x.to_text(), "1/2*i");
    }

    #[test]
    fn unit_modulus_rational_point() {
        // (3/5 + 4/5 i) has |·|² = (3/5)² + (4/5)² = 1, checked by direct arithmetic.
        let e = gq_normalize(3, 5, 4, 5).unwrap();
        assert!(e.norm_sq().is_one());
    }

    #[test]
    fn zero_denominator_is_error() {
        assert_eq!(gq_normalize(1, 0, 0, 1), Err(ScalarError::ZeroDenominator));
        assert_eq!(gq_normalize(1, 1, 2, 0), Err(ScalarError::ZeroDenominator));
    }

    #[test]
    fn field_ops_are_exact() {
        let x = gq_normalize(7, 3, -2, 5).unwrap();
        let y = gq_normalize(-1, 6, 9, 4).unwrap();
        assert_eq!(&(&x + &y) - &y, x);
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(&x * &x.inv(), Gq::one());
    }

    #[test]
    fn i_pow_cycle() {
        assert_eq!(Gq::i_pow(0), Gq::one());
        assert_eq!(Gq::i_pow(1), Gq::i());
        assert_eq!(Gq::i_pow(2), -Gq::one());
        assert_eq!(Gq::i_pow(3), -Gq::i());
        assert_eq!(Gq::i_pow(9), Gq::i());
        assert_eq!(Gq::i_pow(-1), -Gq::i());
        assert_eq!(Gq::i_pow(16), Gq::one());
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "0", "1", "-1", "1/2", "-3/7", "1*i", "-1*i", "1/2*i", "3/5+4/5*i",
            "-2-1/3*i",
        ] {
            let v = Gq::parse_text(s).unwrap();
            assert_eq!(v.to_text(), s, "canonical form of {s}");
            assert_eq!(Gq::parse_text(&v.to_text()).unwrap(), v);
        }
        // accepted non-canonical spellings
        assert_eq!(Gq::parse_text("i").unwrap(), Gq::i());
        assert_eq!(Gq::parse_text("-i").unwrap(), -Gq::i());
        assert_eq!(Gq::parse_text("2i").unwrap(), Gq::from_ints(0, 2));
        assert_eq!(Gq::parse_text("1/2 + 1/2*i").unwrap(), gq_normalize(1, 2, 1, 2).unwrap());
        assert_eq!(Gq::parse_text("4/8").unwrap(), Gq::from_frac(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Gq::parse_text("").is_err());
        assert!(Gq::parse_text("1/0").is_err());
        assert!(Gq::parse_text("phi").is_err());
        assert!(Gq::parse_text("1+i+i").is_err());
    }
}
