//! Complex numbers with exact rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Exact element of the Gaussian rationals `Q(i)`.
///
/// `BigRational` keeps both parts in lowest terms with a positive
/// denominator, so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Multiply by `i` without a general product.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // real operands dominate in practice
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&im_abs))
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_txt}")
            } else {
                write!(f, "{im_txt}")
            }
        } else {
            write!(f, "{}{sign}{im_txt}", fmt_rational(&self.re))
        }
    }
}

/// Parses an unsigned rational literal `a` or `a/b` with decimal digits.
fn parse_unsigned_rational(text: &str, whole: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::Coefficient(whole.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseError::ZeroDenominator(whole.to_string()));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    /// Accepts `a`, `a/b`, `a/b+c/d*i`, `c/d*i`, `i`, `-i`, with optional
    /// leading signs. The Unicode minus sign is treated like `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(ParseError::Coefficient(s.to_string()));
        }

        // split into signed terms at +/- that are not leading
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            if bytes[i] == b'+' || bytes[i] == b'-' {
                terms.push((negative, &cleaned[start..i]));
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((negative, &cleaned[start..]));
        if terms.len() > 2 {
            return Err(ParseError::Coefficient(s.to_string()));
        }

        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for (neg, body) in terms {
            let (value, imaginary) = if body == "i" {
                (BigRational::one(), true)
            } else if let Some(coeff) = body.strip_suffix("*i") {
                (parse_unsigned_rational(coeff, s)?, true)
            } else {
                (parse_unsigned_rational(body, s)?, false)
            };
            let value = if neg { -value } else { value };
            let slot = if imaginary { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(ParseError::Coefficient(s.to_string()));
            }
            *slot = Some(value);
        }
        Ok(Self::new(
            re.unwrap_or_else(BigRational::zero),
            im.unwrap_or_else(BigRational::zero),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_documented_forms() {
        let cases = [
            ("1/2", q(1, 2), q(0, 1)),
            ("-1/2+3*i", q(-1, 2), q(3, 1)),
            ("\u{2212}1/2+3*i", q(-1, 2), q(3, 1)),
            ("2/4-1/3*i", q(1, 2), q(-1, 3)),
            ("i", q(0, 1), q(1, 1)),
            ("-i", q(0, 1), q(-1, 1)),
            ("+7", q(7, 1), q(0, 1)),
            ("0", q(0, 1), q(0, 1)),
        ];
        for (text, re, im) in cases {
            let g: GaussianRational = text.parse().unwrap();
            assert_eq!(g, GaussianRational::new(re, im), "{text}");
        }
    }

    #[test]
    fn rejects_malformed() {
        for text in ["1//2", "", "1/0", "abc", "1+2+3", "1/2*", "2*i+3*i", "1.5", "/2"] {
            assert!(text.parse::<GaussianRational>().is_err(), "{text}");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["1/2", "-1/2+3*i", "-i", "5/7*i", "3-2/9*i"] {
            let g: GaussianRational = text.parse().unwrap();
            let back: GaussianRational = g.to_string().parse().unwrap();
            assert_eq!(g, back);
        }
    }

    #[test]
    fn conjugation_and_inverse() {
        let x: GaussianRational = "2/3-5*i".parse().unwrap();
        let y: GaussianRational = "-1+1/4*i".parse().unwrap();
        assert_eq!(x.conj().conj(), x);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        assert_eq!(&x * &x.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(x.mul_i(), &x * &GaussianRational::i());
    }
}
