//! Sparse polynomials in the two commuting indeterminates ξ and ξ̄.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GaussianRational;

/// Exponent pair `ξ^xi · ξ̄^xibar`.
///
/// Ordered graded-lexicographically with ξ > ξ̄: higher total degree first,
/// ties broken by the ξ exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub xi: u32,
    pub xibar: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xi: 0, xibar: 0 };

    pub fn new(xi: u32, xibar: u32) -> Self {
        Self { xi, xibar }
    }

    pub fn degree(self) -> u32 {
        self.xi + self.xibar
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.xi + other.xi, self.xibar + other.xibar)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial::new(
            self.xi.checked_sub(other.xi)?,
            self.xibar.checked_sub(other.xibar)?,
        ))
    }

    pub fn swapped(self) -> Monomial {
        Monomial::new(self.xibar, self.xi)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.xi.cmp(&other.xi))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in ξ and ξ̄ with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so the empty map is the zero
/// polynomial and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// The indeterminate ξ.
    pub fn xi() -> Self {
        Self::monomial(Monomial::new(1, 0), GaussianRational::one())
    }

    /// The indeterminate ξ̄.
    pub fn xibar() -> Self {
        Self::monomial(Monomial::new(0, 1), GaussianRational::one())
    }

    /// Holomorphic polynomial from ascending coefficients of ξ.
    pub fn from_xi_coeffs(coeffs: &[GaussianRational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(p, c)| (Monomial::new(p as u32, 0), c.clone())),
        )
    }

    /// Builds a polynomial from possibly repeated terms, merging and
    /// dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut map: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(GaussianRational::zero) += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> GaussianRational {
        self.terms.get(&m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.leading_monomial().map_or(0, Monomial::degree)
    }

    pub fn degree_xi(&self) -> u32 {
        self.terms.keys().map(|m| m.xi).max().unwrap_or(0)
    }

    pub fn degree_xibar(&self) -> u32 {
        self.terms.keys().map(|m| m.xibar).max().unwrap_or(0)
    }

    /// True when no term carries a power of ξ̄.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.xibar == 0)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(Monomial, &GaussianRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, lc)) if !lc.is_one() => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative in ξ.
    pub fn d_xi(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi > 0)
                .map(|(m, c)| {
                    (
                        Monomial::new(m.xi - 1, m.xibar),
                        c * &GaussianRational::from_integer(m.xi as i64),
                    )
                })
                .collect(),
        }
    }

    /// Exact partial derivative in ξ̄.
    pub fn d_xibar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xibar > 0)
                .map(|(m, c)| {
                    (
                        Monomial::new(m.xi, m.xibar - 1),
                        c * &GaussianRational::from_integer(m.xibar as i64),
                    )
                })
                .collect(),
        }
    }

    /// Complex conjugation on the real slice ξ̄ = conj(ξ): conjugate every
    /// coefficient and exchange the roles of ξ and ξ̄.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.swapped(), c.conj())).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Panics on a zero divisor.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inv().expect("nonzero constant")));
        }
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.terms.clone();
        let mut quotient: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            let qm = m.checked_div(lm)?;
            let qc = c * &lc_inv;
            for (dm, dc) in divisor.terms.iter() {
                let key = dm.mul(qm);
                let prod = dc * &qc;
                let slot = rem.entry(key).or_insert_with(GaussianRational::zero);
                *slot -= &prod;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.insert(qm, qc);
        }
        Some(BiPoly { terms: quotient })
    }

    /// Evaluates on the real slice, substituting `conj(point)` for ξ̄.
    pub fn eval(&self, point: Complex64) -> Complex64 {
        self.eval_independent(point, point.conj())
    }

    /// Evaluates with independent values for ξ and ξ̄.
    pub fn eval_independent(&self, xi: Complex64, xibar: Complex64) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (m, c)| {
            acc + c.to_complex64() * xi.powu(m.xi) * xibar.powu(m.xibar)
        })
    }

    /// Exact evaluation at Gaussian-rational arguments.
    pub fn eval_exact(&self, xi: &GaussianRational, xibar: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.xi {
                t = &t * xi;
            }
            for _ in 0..m.xibar {
                t = &t * xibar;
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes a value for ξ̄, leaving a polynomial in ξ alone.
    pub fn specialize_xibar(&self, xibar: &GaussianRational) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut t = c.clone();
            for _ in 0..m.xibar {
                t = &t * xibar;
            }
            (Monomial::new(m.xi, 0), t)
        }))
    }

    /// Sum of coefficient moduli weighted by `|ξ|^degree`; a scale for
    /// deciding when an evaluated value is numerically zero.
    pub fn magnitude_at(&self, point: Complex64) -> f64 {
        let r = point.norm();
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex64().norm() * r.powi(m.degree() as i32))
            .sum()
    }
}

fn add_into(acc: &mut BTreeMap<Monomial, GaussianRational>, m: Monomial, c: &GaussianRational, negate: bool) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            if negate {
                *e.get_mut() -= c;
            } else {
                *e.get_mut() += c;
            }
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(if negate { -c } else { c.clone() });
        }
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_into(&mut terms, *m, c, false);
        }
        BiPoly { terms }
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_into(&mut terms, *m, c, true);
        }
        BiPoly { terms }
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut acc: HashMap<Monomial, GaussianRational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(*mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        BiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -(self.clone())
    }
}

impl From<GaussianRational> for BiPoly {
    fn from(c: GaussianRational) -> Self {
        BiPoly::constant(c)
    }
}

impl From<BigRational> for BiPoly {
    fn from(c: BigRational) -> Self {
        BiPoly::constant(c.into())
    }
}

impl From<i64> for BiPoly {
    fn from(n: i64) -> Self {
        BiPoly::from_integer(n)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (m.xi, m.xibar) {
                (0, 0) => String::new(),
                (a, 0) => pow_txt("ξ", a),
                (0, b) => pow_txt("ξ̄", b),
                (a, b) => format!("{}{}", pow_txt("ξ", a), pow_txt("ξ̄", b)),
            };
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c}){mono}")?;
            }
        }
        Ok(())
    }
}

fn pow_txt(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// Convenience for tests and examples: `c · ξ^a ξ̄^b` with an integer `c`.
pub fn term(c: i64, xi: u32, xibar: u32) -> BiPoly {
    BiPoly::monomial(Monomial::new(xi, xibar), GaussianRational::from_integer(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_xi() {
        let mut ms = vec![
            Monomial::new(0, 2),
            Monomial::new(1, 1),
            Monomial::new(2, 0),
            Monomial::new(0, 0),
            Monomial::new(0, 1),
            Monomial::new(1, 0),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Monomial::new(0, 0),
                Monomial::new(0, 1),
                Monomial::new(1, 0),
                Monomial::new(0, 2),
                Monomial::new(1, 1),
                Monomial::new(2, 0),
            ]
        );
    }

    #[test]
    fn power_rule_derivatives() {
        let p = term(1, 2, 1);
        assert_eq!(p.d_xi(), term(2, 1, 1));
        assert_eq!(p.d_xibar(), term(1, 2, 0));
        assert!(term(1, 3, 0).d_xibar().is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &term(1, 0, 0) + &term(1, 1, 1);
        let b = &term(1, 2, 0) - &term(3, 0, 1);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &term(1, 0, 0)).div_exact(&a), None);
        assert_eq!(BiPoly::zero().div_exact(&a), Some(BiPoly::zero()));
    }

    #[test]
    fn conj_swaps_and_conjugates() {
        let p = BiPoly::monomial(Monomial::new(2, 1), "1+2*i".parse().unwrap());
        let c = p.conj();
        assert_eq!(c, BiPoly::monomial(Monomial::new(1, 2), "1-2*i".parse().unwrap()));
        let z = Complex64::new(0.3, -0.7);
        assert!((c.eval(z) - p.eval(z).conj()).norm() < 1e-14);
    }
}
