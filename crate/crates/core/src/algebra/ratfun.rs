//! Quotients of bivariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{gcd, BiPoly, GaussianRational};

static REDUCTION_THRESHOLD: AtomicU32 = AtomicU32::new(40);

/// Denominator total degree above which arithmetic results are reduced by
/// their gcd.
pub fn reduction_threshold() -> u32 {
    REDUCTION_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_reduction_threshold(degree: u32) {
    REDUCTION_THRESHOLD.store(degree, Ordering::Relaxed);
}

/// Rational function `num / den` in ξ and ξ̄.
///
/// The denominator is kept monic under the graded-lex order. Numerator and
/// denominator are not gcd-reduced in general, so equality is decided by
/// cross-multiplication (see [`RatFun::rf_equal`]), not structurally.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: BiPoly,
    den: BiPoly,
}

impl RatFun {
    /// Panics if `den` is zero.
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: BiPoly, den: BiPoly) -> Option<Self> {
        let (_, lc) = den.leading_term()?;
        if num.is_zero() {
            return Some(Self::zero());
        }
        let out = if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        };
        Some(out)
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self { num: p, den: BiPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (BiPoly, BiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact equality by cross-multiplication: `a.num·b.den − b.num·a.den = 0`.
    pub fn rf_equal(&self, other: &RatFun) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }

    /// The constant value if this function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        let c = self.den.as_constant()?;
        let n = self.num.as_constant()?;
        Some(&n / &c)
    }

    pub fn d_xi(&self) -> RatFun {
        self.derive(BiPoly::d_xi)
    }

    pub fn d_xibar(&self) -> RatFun {
        self.derive(BiPoly::d_xibar)
    }

    fn derive(&self, d: impl Fn(&BiPoly) -> BiPoly) -> RatFun {
        if self.den.is_constant() {
            return RatFun::new(d(&self.num), self.den.clone());
        }
        let num = &d(&self.num) * &self.den - &self.num * &d(&self.den);
        RatFun::new(num, &self.den * &self.den).maybe_reduce()
    }

    /// Complex conjugate on the real slice: conjugate coefficients and
    /// exchange ξ with ξ̄.
    pub fn conj(&self) -> RatFun {
        RatFun::new(self.num.conj(), self.den.conj())
    }

    pub fn scale(&self, c: &GaussianRational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse; `None` for the zero function.
    pub fn inv(&self) -> Option<RatFun> {
        RatFun::try_new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFun) -> Option<RatFun> {
        Some(self * &other.inv()?)
    }

    /// Cancels the gcd of numerator and denominator.
    pub fn reduce(&self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_constant() {
            return self.clone();
        }
        let g = gcd(&self.num, &self.den);
        if g.is_one() {
            return self.clone();
        }
        RatFun::new(
            self.num.div_exact(&g).expect("gcd divides numerator"),
            self.den.div_exact(&g).expect("gcd divides denominator"),
        )
    }

    fn maybe_reduce(self) -> RatFun {
        if self.den.total_degree() > reduction_threshold() {
            self.reduce()
        } else {
            self
        }
    }

    /// Evaluates on the real slice ξ̄ = conj(ξ).
    pub fn eval(&self, point: Complex64) -> Complex64 {
        self.num.eval(point) / self.den.eval(point)
    }

    /// Exact value at a Gaussian-rational point, `None` at a pole.
    pub fn eval_exact(&self, xi: &GaussianRational) -> Option<GaussianRational> {
        let xibar = xi.conj();
        let d = self.den.eval_exact(xi, &xibar);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval_exact(xi, &xibar) / &d)
    }
}

/// Free-function form of [`RatFun::rf_equal`].
pub fn rf_equal(a: &RatFun, b: &RatFun) -> bool {
    a.rf_equal(b)
}

/// Free-function form of [`RatFun::d_xi`].
pub fn d_xi(f: &RatFun) -> RatFun {
    f.d_xi()
}

/// Free-function form of [`RatFun::d_xibar`].
pub fn d_xibar(f: &RatFun) -> RatFun {
    f.d_xibar()
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        RatFun::new(num, &self.den * &rhs.den).maybe_reduce()
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).maybe_reduce()
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

impl From<BiPoly> for RatFun {
    fn from(p: BiPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::term;

    fn one_plus_r2() -> BiPoly {
        &term(1, 0, 0) + &term(1, 1, 1)
    }

    #[test]
    fn equality_examples() {
        let a = RatFun::new(term(1, 1, 0), term(1, 1, 1));
        let b = RatFun::new(BiPoly::one(), term(1, 0, 1));
        assert!(rf_equal(&a, &b));

        let c = RatFun::new(BiPoly::one(), one_plus_r2());
        let d = RatFun::new(BiPoly::one(), &term(1, 0, 0) + &term(1, 1, 0));
        assert!(!rf_equal(&c, &d));

        let e = RatFun::new(one_plus_r2().pow(2), one_plus_r2());
        assert!(rf_equal(&e, &RatFun::from_poly(one_plus_r2())));
    }

    #[test]
    fn derivative_examples() {
        let f = RatFun::from_poly(term(1, 2, 1));
        assert!(f.d_xi().rf_equal(&RatFun::from_poly(term(2, 1, 1))));
        assert!(RatFun::from_poly(term(1, 3, 0)).d_xibar().is_zero());

        // d/dξ 1/(1+ξξ̄) = −ξ̄/(1+ξξ̄)²
        let g = RatFun::new(BiPoly::one(), one_plus_r2());
        let expected = RatFun::new(term(-1, 0, 1), one_plus_r2().pow(2));
        assert!(g.d_xi().rf_equal(&expected));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFun::new(term(3, 1, 0), term(6, 2, 0));
        assert_eq!(f.den().leading_term().unwrap().1, &GaussianRational::from_integer(1));
        assert!(f.rf_equal(&RatFun::new(term(1, 0, 0), term(2, 1, 0))));
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let f = RatFun::new(&one_plus_r2() * &term(1, 1, 0), &one_plus_r2() * &term(1, 0, 2));
        let r = f.reduce();
        assert_eq!(r.den(), &term(1, 0, 2));
        assert!(r.rf_equal(&f));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::try_new(BiPoly::one(), BiPoly::zero()).is_none());
        assert!(RatFun::zero().inv().is_none());
    }
}
