//! Exact combinatorics of the surface eigenvalues.
//!
//! Surface `X_k` of dimension `n` acts on the range of `P_j` as `iλ` with
//! `λ ∈ {c_k, c_k − 1, c_k − 2}`, `c_k = (1 + 2k)/n`. Collecting these over
//! `k` gives three classes: `D⁺ = {c_k}`, `D⁰ = {c_k − 1}`,
//! `D⁻ = {c_k − 2}`. The two values that no surface realises, `c_{n−1}`
//! and `c_0 − 2`, are kept as flagged ghosts.

mod figure;

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

pub use figure::{figure_data, Arrow, CsvRow, FigureData, Marker, MarkerKind};

pub type Q = Rational64;

fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// `c_k = (1 + 2k)/n`.
pub fn c_of(k: usize, n: usize) -> Result<Q> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(q(1 + 2 * k as i64, n as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Klass {
    #[serde(rename = "Dminus")]
    Minus,
    #[serde(rename = "Dzero")]
    Zero,
    #[serde(rename = "Dplus")]
    Plus,
}

impl Klass {
    pub fn label(self) -> &'static str {
        match self {
            Klass::Minus => "Dminus",
            Klass::Zero => "Dzero",
            Klass::Plus => "Dplus",
        }
    }

    /// Offset from `c_k`: 0, −1 or −2.
    fn offset(self) -> i64 {
        match self {
            Klass::Plus => 0,
            Klass::Zero => -1,
            Klass::Minus => -2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EigenValue {
    pub value: Q,
    pub klass: Klass,
    pub k_origin: usize,
    pub ghost: bool,
}

/// All `3n` values `c_k, c_k − 1, c_k − 2`, ghosts included, sorted by
/// value, then class, then `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSet {
    pub n: usize,
    pub members: Vec<EigenValue>,
}

impl EigenSet {
    fn from_members(n: usize, mut members: Vec<EigenValue>) -> Self {
        members.sort();
        Self { n, members }
    }

    fn class(&self, klass: Klass) -> Vec<Q> {
        self.members
            .iter()
            .filter(|m| m.klass == klass && !m.ghost)
            .map(|m| m.value)
            .collect()
    }

    pub fn dplus(&self) -> Vec<Q> {
        self.class(Klass::Plus)
    }

    pub fn dzero(&self) -> Vec<Q> {
        self.class(Klass::Zero)
    }

    pub fn dminus(&self) -> Vec<Q> {
        self.class(Klass::Minus)
    }

    /// `D = D⁺ ∪ D⁻`, distinct and sorted.
    pub fn d(&self) -> Vec<Q> {
        let set: BTreeSet<Q> = self.dplus().into_iter().chain(self.dminus()).collect();
        set.into_iter().collect()
    }

    /// Distinct realised eigenvalues, sorted.
    pub fn s(&self) -> Vec<Q> {
        let set: BTreeSet<Q> = self.realised().map(|m| m.value).collect();
        set.into_iter().collect()
    }

    pub fn realised(&self) -> impl Iterator<Item = &EigenValue> {
        self.members.iter().filter(|m| !m.ghost)
    }

    pub fn ghosts(&self) -> impl Iterator<Item = &EigenValue> {
        self.members.iter().filter(|m| m.ghost)
    }

    /// Class sizes and ranges:
    /// `D⁺ ⊂ [1/n, 2 − 3/n]`, `D⁰ ⊂ [−1 + 1/n, 1 − 1/n]`,
    /// `D⁻ ⊂ [−2 + 3/n, −1/n]`, `|D±| = n − 1`, `|D⁰| = n`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n as i64;
        let ranges = [
            (Klass::Plus, q(1, n), q(2 * n - 3, n), self.n - 1),
            (Klass::Zero, q(1 - n, n), q(n - 1, n), self.n),
            (Klass::Minus, q(3 - 2 * n, n), q(-1, n), self.n - 1),
        ];
        for (klass, lo, hi, size) in ranges {
            let values = self.class(klass);
            if values.len() != size {
                return Err(violation(format!("{} has {} members, expected {size}", klass.label(), values.len())));
            }
            if let Some(v) = values.iter().find(|v| **v < lo || **v > hi) {
                return Err(violation(format!("{} member {v} outside [{lo}, {hi}]", klass.label())));
            }
        }
        for g in self.ghosts() {
            let expected = match g.klass {
                Klass::Plus => q(2 * n - 1, n),
                Klass::Minus => q(1 - 2 * n, n),
                Klass::Zero => return Err(violation("ghost in D⁰".into())),
            };
            if g.value != expected {
                return Err(violation(format!("ghost at {}", g.value)));
            }
        }
        Ok(())
    }
}

fn violation(msg: String) -> Error {
    Error::PropositionViolated(msg)
}

/// The eigenvalue set for dimension `n`.
pub fn build_s(n: usize) -> Result<EigenSet> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut members = Vec::with_capacity(3 * n);
    for k in 0..n {
        let c = c_of(k, n)?;
        for klass in [Klass::Plus, Klass::Zero, Klass::Minus] {
            let ghost = match klass {
                Klass::Plus => k == n - 1,
                Klass::Minus => k == 0,
                Klass::Zero => false,
            };
            members.push(EigenValue { value: c + Q::from_integer(klass.offset()), klass, k_origin: k, ghost });
        }
    }
    Ok(EigenSet::from_members(n, members))
}

/// `D⁰ = −D⁰` and `D⁻ = −D⁺`.
pub fn verify_symmetry(n: usize) -> Result<bool> {
    let s = build_s(n)?;
    let negate = |v: Vec<Q>| -> BTreeSet<Q> { v.into_iter().map(|x| -x).collect() };
    let zero: BTreeSet<Q> = s.dzero().into_iter().collect();
    let minus: BTreeSet<Q> = s.dminus().into_iter().collect();
    Ok(negate(s.dzero()) == zero && negate(s.dplus()) == minus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Intersection {
    Disjoint,
    Contained,
}

/// Odd `n`: `D⁰ ∩ D = ∅`. Even `n`: `D⁰ ⊆ D`.
pub fn verify_intersections(n: usize) -> Result<Intersection> {
    let s = build_s(n)?;
    let d: BTreeSet<Q> = s.d().into_iter().collect();
    let zero = s.dzero();
    let shared = zero.iter().filter(|v| d.contains(v)).count();
    match (n % 2, shared) {
        (1, 0) => Ok(Intersection::Disjoint),
        (0, m) if m == zero.len() => Ok(Intersection::Contained),
        _ => Err(violation(format!("n = {n}: {shared} of {} D⁰ values lie in D", zero.len()))),
    }
}

/// A closed interval of `S` whose points are evenly spaced by `step`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spacing {
    pub lo: Q,
    pub hi: Q,
    pub step: Q,
}

/// Claimed step structure of `S`: one step `2/n` throughout for even `n`;
/// for odd `n` step `1/n` on `[−1, 1]` and `2/n` on the outer intervals
/// `[−2 + 3/n, −1]` and `[1, 2 − 3/n]` when they hold two or more points.
pub fn spacing_profile(n: usize) -> Result<Vec<Spacing>> {
    let s = build_s(n)?.s();
    let ni = n as i64;
    let (first, last) = (s[0], s[s.len() - 1]);
    if n % 2 == 0 {
        return Ok(vec![Spacing { lo: first, hi: last, step: q(2, ni) }]);
    }
    let one = Q::one();
    let mut out = Vec::with_capacity(3);
    if first < -one {
        out.push(Spacing { lo: first, hi: -one, step: q(2, ni) });
    }
    out.push(Spacing { lo: -one, hi: one, step: q(1, ni) });
    if last > one {
        out.push(Spacing { lo: one, hi: last, step: q(2, ni) });
    }
    Ok(out)
}

/// Checks [`spacing_profile`] against `S`: within each interval the points
/// of `S` are exactly `lo, lo + step, …, hi`, and the intervals cover `S`.
pub fn verify_spacing(n: usize) -> Result<bool> {
    let s = build_s(n)?.s();
    let profile = spacing_profile(n)?;
    let mut covered = BTreeSet::new();
    for seg in &profile {
        let inside: Vec<Q> = s.iter().copied().filter(|v| *v >= seg.lo && *v <= seg.hi).collect();
        let mut expected = Vec::new();
        let mut x = seg.lo;
        while x <= seg.hi {
            expected.push(x);
            x += seg.step;
        }
        if inside != expected || *expected.last().expect("nonempty") != seg.hi {
            return Ok(false);
        }
        covered.extend(inside);
    }
    Ok(covered.len() == s.len())
}

/// `(distinct, with multiplicity)` sizes of `S`.
pub fn cardinality(n: usize) -> Result<(usize, usize)> {
    let s = build_s(n)?;
    Ok((s.s().len(), s.realised().count()))
}

/// Closed forms: distinct `3n − 2` (odd) or `2n − 2` (even); `3n − 2`
/// with multiplicity.
pub fn expected_cardinality(n: usize) -> (usize, usize) {
    let distinct = if n % 2 == 1 { 3 * n - 2 } else { 2 * n - 2 };
    (distinct, 3 * n - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// `m` points on `[a, a + 2]`, evenly spaced at maximal distance with end
/// gaps `1/m`: `a + 1/m + 2j/m`.
pub fn interval_points(a: Q, m: usize) -> Vec<Q> {
    let mi = m as i64;
    (0..mi).map(|j| a + q(1 + 2 * j, mi)).collect()
}

/// True iff `points` (sorted) are evenly spaced on `[a, a + 2]` with both
/// end gaps equal to `1/M`, `M` the number of points.
pub fn satisfies_placement(points: &[Q], a: Q) -> bool {
    points == interval_points(a, points.len()).as_slice()
}

/// Induction on the dimension: reads the three interval configurations of
/// `S(n)` (ghosts included), checks they obey the placement rule, then
/// places `n ± 1` points per interval by the same rule.
pub fn induct(n: usize, direction: Direction) -> Result<EigenSet> {
    let target = match direction {
        Direction::Up => n + 1,
        Direction::Down if n >= 3 => n - 1,
        Direction::Down => return Err(Error::DimensionTooSmall(n)),
    };
    let current = build_s(n)?;
    let mut members = Vec::with_capacity(3 * target);
    for (klass, start) in [(Klass::Minus, -2), (Klass::Zero, -1), (Klass::Plus, 0)] {
        let a = Q::from_integer(start);
        let points: Vec<Q> = current
            .members
            .iter()
            .filter(|m| m.klass == klass)
            .map(|m| m.value)
            .collect();
        if points.len() != n || !satisfies_placement(&points, a) {
            return Err(violation(format!("{} of S({n}) breaks the placement rule", klass.label())));
        }
        for (j, value) in interval_points(a, target).into_iter().enumerate() {
            let ghost = match klass {
                Klass::Minus => j == 0,
                Klass::Plus => j == target - 1,
                Klass::Zero => false,
            };
            members.push(EigenValue { value, klass, k_origin: j, ghost });
        }
    }
    Ok(EigenSet::from_members(target, members))
}

/// Multiplicities of `c_k`, `c_k − 1`, `c_k − 2` as eigenvalues of
/// `−iX_k`: the ranges of `P_j` for `j > k`, `j = k` and `j < k`.
pub fn surface_multiplicities(k: usize, n: usize) -> (usize, usize, usize) {
    (n - 1 - k, 1, k)
}

/// The eigenvalues of `−iX_k` in ascending order, with multiplicity.
pub fn surface_spectrum(k: usize, n: usize) -> Result<Vec<Q>> {
    let c = c_of(k, n)?;
    let (top, mid, low) = surface_multiplicities(k, n);
    let mut out = Vec::with_capacity(n);
    out.extend(std::iter::repeat(c - Q::from_integer(2)).take(low));
    out.extend(std::iter::repeat(c - Q::one()).take(mid));
    out.extend(std::iter::repeat(c).take(top));
    Ok(out)
}

/// Eigenvalues of the spin matrix `−(i/2)Σ X_k`: `−(n−1)/2, …, (n−1)/2`.
pub fn spin_spectrum(n: usize) -> Vec<Q> {
    (0..n).map(|k| q(2 * k as i64 - (n as i64 - 1), 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn c_values() {
        assert_eq!(c_of(0, 2).unwrap(), q(1, 2));
        assert_eq!(c_of(1, 3).unwrap(), Q::one());
        assert_eq!(c_of(6, 7).unwrap(), q(2, 1) - q(1, 7));
        assert_eq!(c_of(3, 3).unwrap_err(), Error::IndexOutOfRange { index: 3, n: 3 });
    }

    #[test]
    fn small_sets() {
        let s2 = build_s(2).unwrap();
        assert_eq!(s2.s(), vec![q(-1, 2), q(1, 2)]);
        assert_eq!(build_s(8).unwrap().s().len(), 14);
        assert_eq!(build_s(9).unwrap().s().len(), 25);
        assert_eq!(s2.ghosts().count(), 2);
        assert_eq!(build_s(1).unwrap_err(), Error::DimensionTooSmall(1));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(cardinality(9).unwrap(), (25, 25));
        assert_eq!(cardinality(8).unwrap(), (14, 22));
        assert_eq!(cardinality(2).unwrap(), (2, 4));
    }

    #[test]
    fn intersections() {
        assert_eq!(verify_intersections(9).unwrap(), Intersection::Disjoint);
        assert_eq!(verify_intersections(8).unwrap(), Intersection::Contained);
        assert_eq!(verify_intersections(2).unwrap(), Intersection::Contained);
    }

    #[test]
    fn spacing_examples() {
        assert_eq!(spacing_profile(8).unwrap(), vec![Spacing { lo: q(-13, 8), hi: q(13, 8), step: q(1, 4) }]);
        let nine = spacing_profile(9).unwrap();
        assert_eq!(nine.len(), 3);
        assert_eq!(nine[1], Spacing { lo: -Q::one(), hi: Q::one(), step: q(1, 9) });
        assert_eq!(nine[2].step, q(2, 9));
        assert_eq!(spacing_profile(3).unwrap(), vec![Spacing { lo: -Q::one(), hi: Q::one(), step: q(1, 3) }]);
        for n in [3, 8, 9] {
            assert!(verify_spacing(n).unwrap());
        }
    }

    #[test]
    fn symmetry_examples() {
        for n in [2, 5, 8] {
            assert!(verify_symmetry(n).unwrap());
        }
    }

    #[test]
    fn induction_examples() {
        assert_eq!(induct(2, Direction::Up).unwrap(), build_s(3).unwrap());
        assert_eq!(induct(9, Direction::Down).unwrap(), build_s(8).unwrap());
        assert_eq!(induct(2, Direction::Down).unwrap_err(), Error::DimensionTooSmall(2));
    }

    #[test]
    fn surface_spectra() {
        assert_eq!(surface_spectrum(0, 2).unwrap(), vec![q(-1, 2), q(1, 2)]);
        // k = 1 of n = 4: c = 3/4 with multiplicity 2
        assert_eq!(surface_spectrum(1, 4).unwrap(), vec![q(-5, 4), q(-1, 4), q(3, 4), q(3, 4)]);
        assert_eq!(spin_spectrum(3), vec![-Q::one(), Q::zero(), Q::one()]);
    }
}
