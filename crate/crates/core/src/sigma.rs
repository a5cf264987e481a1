//! Holomorphic seeds, the rank-one projector they define, the ladder
//! operators Π± and the projector tower `P_k = Π₊^k P_0`.

use crate::algebra::{gcd_holomorphic, BiPoly, GaussianRational, MatRF, RatFun};
use crate::error::{Error, Result};
use crate::par::Exec;

/// A vector of `n ≥ 2` polynomials in ξ alone with no common factor.
#[derive(Clone, Debug)]
pub struct HoloSeed {
    components: Vec<BiPoly>,
}

impl HoloSeed {
    /// Validates and wraps seed components.
    ///
    /// The common-factor test is the exact univariate gcd over `Q(i)`.
    pub fn new(components: Vec<BiPoly>) -> Result<Self> {
        let n = components.len();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if let Some(k) = components.iter().position(|c| !c.is_holomorphic()) {
            return Err(Error::NotHolomorphic(k));
        }
        if components.iter().all(BiPoly::is_zero) {
            return Err(Error::ZeroSeed);
        }
        let g = gcd_holomorphic(&components).expect("components are holomorphic");
        if !g.is_constant() {
            return Err(Error::CommonFactor(g.to_string()));
        }
        Ok(Self { components })
    }

    /// Seed from ascending ξ-coefficient lists, one per component.
    pub fn from_coefficients(coeffs: &[Vec<GaussianRational>]) -> Result<Self> {
        Self::new(coeffs.iter().map(|c| BiPoly::from_xi_coeffs(c)).collect())
    }

    /// Seed with small integer coefficients, e.g. `&[&[1], &[0, 1]]` for (1, ξ).
    pub fn from_integers(coeffs: &[&[i64]]) -> Result<Self> {
        let c: Vec<Vec<GaussianRational>> = coeffs
            .iter()
            .map(|row| row.iter().map(|&v| GaussianRational::from_integer(v)).collect())
            .collect();
        Self::from_coefficients(&c)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[BiPoly] {
        &self.components
    }
}

/// `P_0 = (f ⊗ f†) / (f† f)` for the seed `f`.
pub fn build_p0(seed: &HoloSeed) -> MatRF {
    let f = seed.components();
    let n = f.len();
    let fbar: Vec<BiPoly> = f.iter().map(BiPoly::conj).collect();
    let mut nums = Vec::with_capacity(n * n);
    for fi in f {
        for fj in &fbar {
            nums.push(fi * fj);
        }
    }
    let den = f
        .iter()
        .zip(&fbar)
        .fold(BiPoly::zero(), |acc, (a, b)| &acc + &(a * b));
    MatRF::with_denominator(n, nums, den)
}

/// Raising operator `∂P·P·∂̄P / tr(∂P·P·∂̄P)`.
pub fn pi_plus(p: &MatRF) -> Result<MatRF> {
    ladder(p, &p.d_xi(), &p.d_xibar())
}

/// Lowering operator `∂̄P·P·∂P / tr(∂̄P·P·∂P)`.
pub fn pi_minus(p: &MatRF) -> Result<MatRF> {
    ladder(p, &p.d_xibar(), &p.d_xi())
}

fn ladder(p: &MatRF, left: &MatRF, right: &MatRF) -> Result<MatRF> {
    let product = &(left * p) * right;
    let trace = product.trace_num();
    if trace.is_zero() {
        return Err(Error::Annihilated);
    }
    // the product's denominator cancels against the trace's
    let factors = product.factor_over(&trace);
    Ok(MatRF::with_factors(p.n(), product.nums().to_vec(), factors).reduce())
}

/// The projectors `P_0, …, P_{n−1}` of one finite-action tower.
#[derive(Clone, Debug)]
pub struct ProjectorTower {
    n: usize,
    projectors: Vec<MatRF>,
}

impl ProjectorTower {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn projectors(&self) -> &[MatRF] {
        &self.projectors
    }

    pub fn get(&self, k: usize) -> Result<&MatRF> {
        self.projectors
            .get(k)
            .ok_or(Error::IndexOutOfRange { index: k, n: self.n })
    }

    /// `P_k† = P_k`, `P_k² = P_k` and `tr P_k = 1`, exactly.
    pub fn is_projector(&self, k: usize) -> bool {
        let p = &self.projectors[k];
        is_rank_one_projector(p)
    }

    /// `P_j P_k = δ_jk P_k` for every ordered pair.
    pub fn orthogonality_holds(&self, exec: Exec) -> bool {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|j| (0..self.n).filter(move |&k| k != j).map(move |k| (j, k)))
            .collect();
        exec.map(&pairs, |&(j, k)| (&self.projectors[j] * &self.projectors[k]).is_zero())
            .into_iter()
            .all(|ok| ok)
    }

    /// `Σ P_k = I`.
    pub fn completeness_holds(&self) -> bool {
        let sum = self
            .projectors
            .iter()
            .fold(MatRF::zero(self.n), |acc, p| &acc + p);
        sum.equals(&MatRF::identity(self.n))
    }

    /// `Π₋(Π₊(P_k)) = P_k` for `k < n − 1`, using the stored `P_{k+1}`.
    pub fn ladder_inverse_holds(&self, k: usize) -> bool {
        if k + 1 >= self.n {
            return false;
        }
        match pi_minus(&self.projectors[k + 1]) {
            Ok(back) => back.equals(&self.projectors[k]),
            Err(_) => false,
        }
    }
}

/// True iff `P† = P = P²` and `tr P = 1` hold exactly.
pub fn is_rank_one_projector(p: &MatRF) -> bool {
    p.herm_conj().equals(p)
        && (p * p).equals(p)
        && p.trace().rf_equal(&RatFun::one())
}

/// Builds the full tower of `n` projectors from a seed.
///
/// Fails with [`Error::PrematureAnnihilation`] if Π₊ annihilates some
/// `P_k` with `k < n − 1`.
pub fn build_tower(seed: &HoloSeed) -> Result<ProjectorTower> {
    let n = seed.n();
    let mut projectors = vec![build_p0(seed)];
    for step in 1..n {
        let next = pi_plus(&projectors[step - 1]).map_err(|e| match e {
            Error::Annihilated => Error::PrematureAnnihilation { step: step - 1, n },
            other => other,
        })?;
        projectors.push(next);
    }
    Ok(ProjectorTower { n, projectors })
}

/// Euler–Lagrange equation `[∂∂̄P, P] = 0`, exactly.
pub fn verify_el(p: &MatRF) -> bool {
    p.d_xi().d_xibar().commutator(p).is_zero()
}

/// Conservation form `∂[∂̄P, P] + ∂̄[∂P, P] = 0`, exactly.
pub fn verify_conservation(p: &MatRF) -> bool {
    let a = p.d_xibar().commutator(p).d_xi();
    let b = p.d_xi().commutator(p).d_xibar();
    (&a + &b).is_zero()
}

/// Lagrangian density `tr(∂P ∂̄P)`.
pub fn lagrangian_density(p: &MatRF) -> RatFun {
    (&p.d_xi() * &p.d_xibar()).trace()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Holomorphy {
    Holomorphic,
    Antiholomorphic,
    Mixed,
}

/// Classifies a projector by which ladder operator annihilates it.
pub fn holomorphy_class(p: &MatRF) -> Result<Holomorphy> {
    let lowered = annihilated(pi_minus(p))?;
    let raised = annihilated(pi_plus(p))?;
    match (lowered, raised) {
        (true, true) => Err(Error::DegenerateProjector),
        (true, false) => Ok(Holomorphy::Holomorphic),
        (false, true) => Ok(Holomorphy::Antiholomorphic),
        (false, false) => Ok(Holomorphy::Mixed),
    }
}

fn annihilated(r: Result<MatRF>) -> Result<bool> {
    match r {
        Ok(_) => Ok(false),
        Err(Error::Annihilated) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Whether the scalar trace driving a ladder step vanishes, without
/// forming the normalised result.
pub fn ladder_trace_vanishes(p: &MatRF, raising: bool) -> bool {
    let (l, r) = if raising { (p.d_xi(), p.d_xibar()) } else { (p.d_xibar(), p.d_xi()) };
    (&(&l * p) * &r).trace().num().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat_is_zero, term};

    fn one_plus_r2() -> BiPoly {
        &term(1, 0, 0) + &term(1, 1, 1)
    }

    #[test]
    fn p0_of_linear_seed() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap();
        let p0 = build_p0(&seed);
        let expected = MatRF::with_denominator(
            2,
            vec![BiPoly::one(), term(1, 0, 1), term(1, 1, 0), term(1, 1, 1)],
            one_plus_r2(),
        );
        assert!(p0.equals(&expected));
        assert!(mat_is_zero(&(&(&p0 * &p0) - &p0)));
        assert!(p0.herm_conj().equals(&p0));
    }

    #[test]
    fn p0_of_constant_seed() {
        let seed = HoloSeed::from_integers(&[&[1], &[0]]).unwrap();
        let p0 = build_p0(&seed);
        let expected = MatRF::from_polys(2, vec![BiPoly::one(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(p0.equals(&expected));
    }

    #[test]
    fn p0_of_quadratic_seed_has_expected_denominator() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let p0 = build_p0(&seed);
        let den = &one_plus_r2() + &term(1, 2, 2);
        assert!(p0.entry(0, 0).rf_equal(&RatFun::new(BiPoly::one(), den)));
        assert!(is_rank_one_projector(&p0));
    }

    #[test]
    fn seed_validation() {
        assert!(matches!(HoloSeed::from_integers(&[&[0], &[0]]), Err(Error::ZeroSeed)));
        assert!(matches!(HoloSeed::from_integers(&[&[1]]), Err(Error::DimensionTooSmall(1))));
        // (ξ, ξ²) share ξ
        assert!(matches!(
            HoloSeed::from_integers(&[&[0, 1], &[0, 0, 1]]),
            Err(Error::CommonFactor(_))
        ));
        assert!(matches!(
            HoloSeed::new(vec![BiPoly::one(), term(1, 0, 1)]),
            Err(Error::NotHolomorphic(1))
        ));
    }

    #[test]
    fn raising_linear_seed_gives_complement() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap();
        let p0 = build_p0(&seed);
        let p1 = pi_plus(&p0).unwrap();
        assert!(p1.equals(&(&MatRF::identity(2) - &p0)));
        assert_eq!(pi_minus(&p0).unwrap_err(), Error::Annihilated);
    }

    #[test]
    fn ladder_operators_are_inverse() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let p0 = build_p0(&seed);
        let back = pi_minus(&pi_plus(&p0).unwrap()).unwrap();
        assert!(back.equals(&p0));
    }

    #[test]
    fn tower_errors_on_constant_seed() {
        let seed = HoloSeed::from_integers(&[&[1], &[0], &[0]]).unwrap();
        assert_eq!(
            build_tower(&seed).unwrap_err(),
            Error::PrematureAnnihilation { step: 0, n: 3 }
        );
    }

    #[test]
    fn tower_errors_on_degenerate_seed() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 1]]).unwrap();
        assert!(matches!(
            build_tower(&seed),
            Err(Error::PrematureAnnihilation { step: 1, n: 3 })
        ));
    }

    #[test]
    fn el_and_conservation() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap();
        let p0 = build_p0(&seed);
        assert!(verify_el(&p0));
        assert!(verify_conservation(&p0));

        let constant = MatRF::from_polys(2, vec![BiPoly::one(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(verify_el(&constant));

        // diagonal inputs commute with all their derivatives
        let diag_xi = MatRF::from_polys(2, vec![term(1, 1, 0), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(verify_el(&diag_xi));
        let diag_r2 = MatRF::from_polys(2, vec![term(1, 1, 1), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(verify_conservation(&diag_r2));

        let bad = MatRF::from_polys(2, vec![term(1, 1, 1), term(1, 1, 0), term(1, 0, 1), BiPoly::zero()]);
        assert!(!verify_el(&bad));
        assert!(!verify_conservation(&bad));
    }

    #[test]
    fn lagrangian_of_linear_seed() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap();
        let tower = build_tower(&seed).unwrap();
        let expected = RatFun::new(BiPoly::one(), one_plus_r2().pow(2));
        assert!(lagrangian_density(&tower.projectors()[0]).rf_equal(&expected));
        assert!(lagrangian_density(&tower.projectors()[1]).rf_equal(&expected));
        let constant = MatRF::from_polys(2, vec![BiPoly::one(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(lagrangian_density(&constant).is_zero());
    }

    #[test]
    fn holomorphy_of_quadratic_tower() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let tower = build_tower(&seed).unwrap();
        let classes: Vec<Holomorphy> = tower
            .projectors()
            .iter()
            .map(|p| holomorphy_class(p).unwrap())
            .collect();
        assert_eq!(
            classes,
            vec![Holomorphy::Holomorphic, Holomorphy::Mixed, Holomorphy::Antiholomorphic]
        );
        let constant = MatRF::from_polys(2, vec![BiPoly::one(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert_eq!(holomorphy_class(&constant), Err(Error::DegenerateProjector));
    }

    #[test]
    fn tower_invariants() {
        let seed = HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let tower = build_tower(&seed).unwrap();
        for k in 0..3 {
            assert!(tower.is_projector(k), "P_{k}");
            assert!(verify_el(&tower.projectors()[k]));
            assert!(verify_conservation(&tower.projectors()[k]));
        }
        assert!(tower.orthogonality_holds(Exec::Sequential));
        assert!(tower.completeness_holds());
        assert!(tower.ladder_inverse_holds(0));
        assert!(tower.ladder_inverse_holds(1));
        assert!(ladder_trace_vanishes(&tower.projectors()[2], true));
    }
}
