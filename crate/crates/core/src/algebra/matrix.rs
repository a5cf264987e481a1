//! Square matrices over [`RatFun`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd, BiPoly, GaussianRational, RatFun};

/// Denominator kept as a product of monic factors with multiplicities.
///
/// The factors need not be irreducible or coprime. Keeping them apart lets
/// the quotient rule multiply by the product of distinct factors instead of
/// squaring the whole denominator, and lets cancellation be found by cheap
/// trial division instead of gcds.
#[derive(Clone, Debug, Default)]
struct Factored {
    factors: Vec<(BiPoly, u32)>,
    product: BiPoly,
}

impl Factored {
    fn one() -> Self {
        Self { factors: Vec::new(), product: BiPoly::one() }
    }

    /// `factors` must be monic and non-constant.
    fn from_factors(mut factors: Vec<(BiPoly, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        let mut out = Self { factors, product: BiPoly::one() };
        out.refresh();
        out
    }

    fn refresh(&mut self) {
        self.factors.retain(|(_, e)| *e > 0);
        self.product = self
            .factors
            .iter()
            .fold(BiPoly::one(), |acc, (b, e)| &acc * &b.pow(*e));
    }

    fn exponent_of(&self, base: &BiPoly) -> u32 {
        self.factors.iter().find(|(b, _)| b == base).map_or(0, |(_, e)| *e)
    }

    /// Product of the distinct factors, each to the first power.
    fn radical(&self) -> BiPoly {
        self.factors.iter().fold(BiPoly::one(), |acc, (b, _)| &acc * b)
    }

    fn bases(&self) -> impl Iterator<Item = &BiPoly> {
        self.factors.iter().map(|(b, _)| b)
    }

    /// Least common multiple on the factor level and the cofactors that
    /// lift `self` and `other` to it.
    fn lcm(&self, other: &Self) -> (Self, BiPoly, BiPoly) {
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            match factors.iter_mut().find(|(fb, _)| fb == b) {
                Some((_, fe)) => *fe = (*fe).max(*e),
                None => factors.push((b.clone(), *e)),
            }
        }
        let cofactor = |d: &Self| {
            factors
                .iter()
                .fold(BiPoly::one(), |acc, (b, e)| &acc * &b.pow(e - d.exponent_of(b)))
        };
        let (qa, qb) = (cofactor(self), cofactor(other));
        (Self::from_factors(factors), qa, qb)
    }

    fn product_with(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            match factors.iter_mut().find(|(fb, _)| fb == b) {
                Some((_, fe)) => *fe += e,
                None => factors.push((b.clone(), *e)),
            }
        }
        Self::from_factors(factors)
    }
}

/// `n × n` matrix of rational functions in ξ, ξ̄.
///
/// Entries are stored over one shared monic denominator: entry `(i, j)` is
/// `nums[i*n + j] / den`. Sums and products keep the representation closed,
/// so every entry-wise operation reduces to polynomial arithmetic.
#[derive(Clone, Debug)]
pub struct MatRF {
    n: usize,
    nums: Vec<BiPoly>,
    den: Factored,
}

impl MatRF {
    pub fn zero(n: usize) -> Self {
        Self { n, nums: vec![BiPoly::zero(); n * n], den: Factored::one() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussianRational::from_integer(1))
    }

    /// `c · I`.
    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.nums[i * n + i] = BiPoly::constant(c.clone());
        }
        m
    }

    /// Matrix with polynomial entries given row-major.
    pub fn from_polys(n: usize, entries: Vec<BiPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        Self { n, nums: entries, den: Factored::one() }
    }

    /// Row-major numerators over a shared denominator. Panics if `den` is
    /// zero or the entry count is not `n²`.
    pub fn with_denominator(n: usize, nums: Vec<BiPoly>, den: BiPoly) -> Self {
        Self::with_factors(n, nums, vec![(den, 1)])
    }

    /// Numerators over `∏ base^exp`. Bases may be any nonzero polynomials;
    /// constants are folded into the numerators.
    pub fn with_factors(n: usize, mut nums: Vec<BiPoly>, factors: Vec<(BiPoly, u32)>) -> Self {
        assert_eq!(nums.len(), n * n, "expected {} entries", n * n);
        let mut kept = Vec::with_capacity(factors.len());
        for (b, e) in factors {
            let (_, lc) = b.leading_term().expect("zero denominator");
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero").pow(e);
                nums = nums.iter().map(|p| p.scale(&inv)).collect();
            }
            if !b.is_constant() && e > 0 {
                let b = b.monic();
                match kept.iter_mut().find(|(kb, _): &&mut (BiPoly, u32)| *kb == b) {
                    Some((_, ke)) => *ke += e,
                    None => kept.push((b, e)),
                }
            }
        }
        Self { n, nums, den: Factored::from_factors(kept) }
    }

    /// Brings arbitrary entries to a shared denominator.
    pub fn from_entries(n: usize, entries: Vec<RatFun>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        entries
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                let mut nums = vec![BiPoly::zero(); n * n];
                let (num, den) = e.into_parts();
                nums[k] = num;
                Self::with_denominator(n, nums, den)
            })
            .fold(Self::zero(n), |acc, m| acc.add_raw(&m))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The shared denominator, expanded.
    pub fn den(&self) -> &BiPoly {
        &self.den.product
    }

    /// The denominator's factors with multiplicities.
    pub fn den_factors(&self) -> &[(BiPoly, u32)] {
        &self.den.factors
    }

    pub fn nums(&self) -> &[BiPoly] {
        &self.nums
    }

    pub fn num(&self, i: usize, j: usize) -> &BiPoly {
        &self.nums[i * self.n + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> RatFun {
        RatFun::new(self.num(i, j).clone(), self.den().clone())
    }

    pub fn entries(&self) -> Vec<RatFun> {
        (0..self.n * self.n)
            .map(|k| RatFun::new(self.nums[k].clone(), self.den().clone()))
            .collect()
    }

    /// True iff every numerator is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(BiPoly::is_zero)
    }

    /// Exact equality (cross-multiplied).
    pub fn equals(&self, other: &MatRF) -> bool {
        self.combine(other, |a, b| a - b).is_zero()
    }

    pub fn trace(&self) -> RatFun {
        let mut t = BiPoly::zero();
        for i in 0..self.n {
            t = &t + self.num(i, i);
        }
        RatFun::new(t, self.den().clone())
    }

    /// Numerator of the trace over [`MatRF::den`].
    pub fn trace_num(&self) -> BiPoly {
        (0..self.n).fold(BiPoly::zero(), |acc, i| &acc + self.num(i, i))
    }

    pub fn transpose(&self) -> MatRF {
        let n = self.n;
        let nums = (0..n * n).map(|k| self.nums[(k % n) * n + k / n].clone()).collect();
        Self { n, nums, den: self.den.clone() }
    }

    /// Hermitian conjugate: transpose, conjugate coefficients, swap ξ ↔ ξ̄.
    pub fn herm_conj(&self) -> MatRF {
        let n = self.n;
        let nums: Vec<BiPoly> = (0..n * n)
            .map(|k| self.nums[(k % n) * n + k / n].conj())
            .collect();
        // conjugating a monic base can leave a non-unit leading coefficient
        let factors = self.den.factors.iter().map(|(b, e)| (b.conj(), *e)).collect();
        Self::with_factors(n, nums, factors)
    }

    pub fn d_xi(&self) -> MatRF {
        self.derive(BiPoly::d_xi)
    }

    pub fn d_xibar(&self) -> MatRF {
        self.derive(BiPoly::d_xibar)
    }

    /// Quotient rule over the factored denominator:
    /// `(N/∏bᵉ)' = (N'·R − N·Σ eᵢ bᵢ' R/bᵢ) / (∏bᵉ · R)` with `R = ∏b`.
    fn derive(&self, d: impl Fn(&BiPoly) -> BiPoly) -> MatRF {
        if self.den.factors.is_empty() {
            let nums = self.nums.iter().map(&d).collect();
            return Self { n: self.n, nums, den: self.den.clone() };
        }
        let radical = self.den.radical();
        let mut log_deriv = BiPoly::zero();
        for (i, (b, e)) in self.den.factors.iter().enumerate() {
            let db = d(b);
            if db.is_zero() {
                continue;
            }
            let others = self
                .den
                .factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(BiPoly::one(), |acc, (_, (c, _))| &acc * c);
            log_deriv = &log_deriv + &(&db * &others).scale(&GaussianRational::from_integer(*e as i64));
        }
        let nums = self
            .nums
            .iter()
            .map(|p| &(&d(p) * &radical) - &(p * &log_deriv))
            .collect();
        let den = Factored::from_factors(
            self.den.factors.iter().map(|(b, e)| (b.clone(), e + 1)).collect(),
        );
        Self { n: self.n, nums, den }.stripped()
    }

    pub fn scale(&self, c: &GaussianRational) -> MatRF {
        if c.is_zero() {
            return MatRF::zero(self.n);
        }
        Self {
            n: self.n,
            nums: self.nums.iter().map(|p| p.scale(c)).collect(),
            den: self.den.clone(),
        }
    }

    /// Entry-wise product with a scalar function.
    pub fn scale_rf(&self, f: &RatFun) -> MatRF {
        if f.is_zero() {
            return MatRF::zero(self.n);
        }
        let extra = Self::with_denominator(1, vec![BiPoly::one()], f.den().clone()).den;
        Self {
            n: self.n,
            nums: self.nums.iter().map(|p| p * f.num()).collect(),
            den: self.den.product_with(&extra),
        }
        .stripped()
    }

    /// Entry-wise quotient by a scalar function; `None` if `f` is zero.
    pub fn div_rf(&self, f: &RatFun) -> Option<MatRF> {
        Some(self.scale_rf(&f.inv()?))
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &GaussianRational) -> MatRF {
        let mut out = self.clone();
        let shift = self.den().scale(c);
        for i in 0..self.n {
            let k = i * self.n + i;
            out.nums[k] = &out.nums[k] + &shift;
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &MatRF) -> MatRF {
        let ab = self.mul_raw(other);
        let ba = other.mul_raw(self);
        ab.combine(&ba, |a, b| a - b).stripped()
    }

    /// Divides out every denominator factor that also divides all
    /// numerators, as often as it does.
    pub fn stripped(mut self) -> MatRF {
        if self.is_zero() {
            return MatRF::zero(self.n);
        }
        let mut order: Vec<usize> = (0..self.nums.len()).filter(|&k| !self.nums[k].is_zero()).collect();
        order.sort_by_key(|&k| self.nums[k].num_terms());
        let mut changed = false;
        for f in 0..self.den.factors.len() {
            while self.den.factors[f].1 > 0 {
                let base = &self.den.factors[f].0;
                let mut quotients = Vec::with_capacity(order.len());
                for &k in &order {
                    match self.nums[k].div_exact(base) {
                        Some(q) => quotients.push((k, q)),
                        None => break,
                    }
                }
                if quotients.len() < order.len() {
                    break;
                }
                for (k, q) in quotients {
                    self.nums[k] = q;
                }
                self.den.factors[f].1 -= 1;
                changed = true;
            }
        }
        if changed {
            self.den.refresh();
        }
        self
    }

    /// Splits a new denominator polynomial against this matrix's factors.
    /// Returns the factor list of `poly` in terms of the known bases plus a
    /// cofactor base for whatever is left.
    pub fn factor_over(&self, poly: &BiPoly) -> Vec<(BiPoly, u32)> {
        let mut rest = poly.clone();
        let mut out = Vec::new();
        for b in self.den.bases() {
            let mut e = 0;
            while let Some(q) = rest.div_exact(b) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((b.clone(), e));
            }
        }
        out.push((rest, 1));
        out
    }

    /// Cancels the gcd shared by the denominator and every numerator.
    /// Each factor is split by its gcd with the numerators and the pieces
    /// are then stripped.
    pub fn reduce(&self) -> MatRF {
        let m = self.clone().stripped();
        if m.is_zero() {
            return m;
        }
        let mut order: Vec<&BiPoly> = m.nums.iter().filter(|p| !p.is_zero()).collect();
        order.sort_by_key(|p| p.num_terms());
        let mut factors = Vec::new();
        for (b, e) in &m.den.factors {
            let mut g = b.clone();
            for p in &order {
                if p.div_exact(&g).is_none() {
                    g = gcd(&g, p);
                }
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() || &g == b {
                factors.push((b.clone(), *e));
            } else {
                let cofactor = b.div_exact(&g).expect("gcd divides factor");
                factors.push((g, *e));
                factors.push((cofactor, *e));
            }
        }
        Self::with_factors(m.n, m.nums, factors).stripped()
    }

    /// Lifts both operands to a shared denominator and combines numerators.
    fn combine(&self, other: &MatRF, op: impl Fn(&BiPoly, &BiPoly) -> BiPoly) -> MatRF {
        assert_eq!(self.n, other.n, "dimension mismatch");
        if other.is_zero() {
            let zero = BiPoly::zero();
            return Self {
                n: self.n,
                nums: self.nums.iter().map(|a| op(a, &zero)).collect(),
                den: self.den.clone(),
            };
        }
        if self.is_zero() {
            let zero = BiPoly::zero();
            return Self {
                n: self.n,
                nums: other.nums.iter().map(|b| op(&zero, b)).collect(),
                den: other.den.clone(),
            };
        }
        let (den, qa, qb) = self.den.lcm(&other.den);
        let lift = |p: &BiPoly, q: &BiPoly| if q.is_one() { p.clone() } else { p * q };
        let nums = self
            .nums
            .iter()
            .zip(&other.nums)
            .map(|(a, b)| op(&lift(a, &qa), &lift(b, &qb)))
            .collect();
        Self { n: self.n, nums, den }
    }

    fn add_raw(&self, other: &MatRF) -> MatRF {
        self.combine(other, |a, b| a + b)
    }

    fn mul_raw(&self, rhs: &MatRF) -> MatRF {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut nums = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BiPoly::zero();
                for k in 0..n {
                    let (a, b) = (self.num(i, k), rhs.num(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                nums.push(acc);
            }
        }
        Self { n, nums, den: self.den.product_with(&rhs.den) }
    }
}

/// Free-function form of [`MatRF::herm_conj`].
pub fn herm_conj(m: &MatRF) -> MatRF {
    m.herm_conj()
}

/// Free-function form of [`MatRF::is_zero`].
pub fn mat_is_zero(m: &MatRF) -> bool {
    m.is_zero()
}

impl<'a> Add<&'a MatRF> for &'a MatRF {
    type Output = MatRF;
    fn add(self, rhs: &MatRF) -> MatRF {
        self.add_raw(rhs).stripped()
    }
}

impl<'a> Sub<&'a MatRF> for &'a MatRF {
    type Output = MatRF;
    fn sub(self, rhs: &MatRF) -> MatRF {
        self.combine(rhs, |a, b| a - b).stripped()
    }
}

impl<'a> Mul<&'a MatRF> for &'a MatRF {
    type Output = MatRF;
    fn mul(self, rhs: &MatRF) -> MatRF {
        self.mul_raw(rhs).stripped()
    }
}

impl Add for MatRF {
    type Output = MatRF;
    fn add(self, rhs: MatRF) -> MatRF {
        &self + &rhs
    }
}

impl Sub for MatRF {
    type Output = MatRF;
    fn sub(self, rhs: MatRF) -> MatRF {
        &self - &rhs
    }
}

impl Mul for MatRF {
    type Output = MatRF;
    fn mul(self, rhs: MatRF) -> MatRF {
        &self * &rhs
    }
}

impl Neg for &MatRF {
    type Output = MatRF;
    fn neg(self) -> MatRF {
        MatRF {
            n: self.n,
            nums: self.nums.iter().map(|p| -p).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for MatRF {
    type Output = MatRF;
    fn neg(self) -> MatRF {
        -&self
    }
}

impl fmt::Display for MatRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "1/({}) ·", self.den())?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.num(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
