//! Soliton surfaces `X_k = −i(P_k + 2Σ_{j<k} P_j − c_k I)` attached to a
//! projector tower, and the exact identities they satisfy.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, MatRF};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::sigma::{pi_minus, pi_plus, ProjectorTower};

/// `c_k = (1 + 2k) / n`.
pub fn surface_constant(k: usize, n: usize) -> BigRational {
    BigRational::new((1 + 2 * k as i64).into(), (n as i64).into())
}

fn real(r: &BigRational) -> GaussianRational {
    GaussianRational::real(r.clone())
}

fn minus_i() -> GaussianRational {
    -GaussianRational::i()
}

/// The surfaces `X_0 … X_{n−1}` of one tower.
#[derive(Clone, Debug)]
pub struct SurfaceTower {
    n: usize,
    surfaces: Vec<MatRF>,
    constants: Vec<BigRational>,
}

impl SurfaceTower {
    pub fn from_tower(tower: &ProjectorTower, exec: Exec) -> Self {
        let n = tower.n();
        let surfaces = exec.map_range(n, |k| build_surface(tower, k).expect("k < n"));
        Self { n, surfaces, constants: (0..n).map(|k| surface_constant(k, n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn surfaces(&self) -> &[MatRF] {
        &self.surfaces
    }

    pub fn constants(&self) -> &[BigRational] {
        &self.constants
    }

    pub fn get(&self, k: usize) -> Result<&MatRF> {
        self.surfaces
            .get(k)
            .ok_or(Error::IndexOutOfRange { index: k, n: self.n })
    }

    /// `X_k† = −X_k`.
    pub fn is_anti_hermitian(&self, k: usize) -> bool {
        let x = &self.surfaces[k];
        (&x.herm_conj() + x).is_zero()
    }

    pub fn is_traceless(&self, k: usize) -> bool {
        self.surfaces[k].trace().is_zero()
    }

    /// `[X_j, X_k] = 0` for every pair `j < k`.
    pub fn mutually_commute(&self, exec: Exec) -> bool {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|j| (j + 1..self.n).map(move |k| (j, k)))
            .collect();
        exec.map(&pairs, |&(j, k)| self.surfaces[j].commutator(&self.surfaces[k]).is_zero())
            .into_iter()
            .all(|ok| ok)
    }
}

/// `X_k = −i(P_k + 2Σ_{j<k} P_j − c_k I)`.
pub fn build_surface(tower: &ProjectorTower, k: usize) -> Result<MatRF> {
    let n = tower.n();
    let p = tower.projectors();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let lower = p[..k]
        .iter()
        .fold(MatRF::zero(n), |acc, pj| &acc + pj)
        .scale(&GaussianRational::from_integer(2));
    let inner = (&p[k] + &lower).add_scalar(&-real(&surface_constant(k, n)));
    Ok(inner.scale(&minus_i()))
}

/// Tangent equations `∂X = −i[∂P, P]` and `∂̄X = i[∂̄P, P]`.
pub fn verify_tangent(x: &MatRF, p: &MatRF) -> bool {
    let holo = p.d_xi().commutator(p).scale(&minus_i());
    let anti = p.d_xibar().commutator(p).scale(&GaussianRational::i());
    x.d_xi().equals(&holo) && x.d_xibar().equals(&anti)
}

/// `∂X·∂̄X + ∂P·∂̄P = 0`.
pub fn verify_dxdx(x: &MatRF, p: &MatRF) -> bool {
    let lhs = &x.d_xi() * &x.d_xibar();
    let rhs = &p.d_xi() * &p.d_xibar();
    (&lhs + &rhs).is_zero()
}

/// Surface Euler–Lagrange equation `[∂∂̄X, X] = 0`.
pub fn verify_el_surface(x: &MatRF) -> bool {
    x.d_xi().d_xibar().commutator(x).is_zero()
}

/// The values `λ` with `X_k v = iλ v` on the range of some `P_j`, in the
/// order `c_k, c_k − 1, c_k − 2`, restricted to those that occur: `c_k`
/// needs `k < n − 1` and `c_k − 2` needs `k > 0`.
pub fn surface_roots(k: usize, n: usize) -> Vec<BigRational> {
    let c = surface_constant(k, n);
    let one = BigRational::one();
    let mut out = Vec::with_capacity(3);
    if k + 1 < n {
        out.push(c.clone());
    }
    out.push(&c - &one);
    if k > 0 {
        out.push(&c - &one - &one);
    }
    out
}

/// `∏ (X − iλ I)` over the given roots.
pub fn root_product(x: &MatRF, roots: &[BigRational]) -> MatRF {
    let i = GaussianRational::i();
    roots.iter().fold(MatRF::identity(x.n()), |acc, lambda| {
        let factor = x.add_scalar(&-(&i * &real(lambda)));
        &acc * &factor
    })
}

/// True iff the minimal polynomial for surface `k` annihilates `x`: the
/// cubic with roots `i c_k, i(c_k − 1), i(c_k − 2)` for interior `k`, and
/// the quadratic without the missing root at either end.
pub fn minimal_poly_check(x: &MatRF, k: usize, n: usize) -> bool {
    root_product(x, &surface_roots(k, n)).is_zero()
}

/// [`minimal_poly_check`] plus minimality: no product over a proper subset
/// of the roots annihilates `x`.
pub fn minimal_poly_is_minimal(x: &MatRF, k: usize, n: usize) -> bool {
    let roots = surface_roots(k, n);
    if !root_product(x, &roots).is_zero() {
        return false;
    }
    let m = roots.len();
    (0..(1u32 << m) - 1).all(|mask| {
        let subset: Vec<BigRational> = (0..m)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| roots[b].clone())
            .collect();
        !root_product(x, &subset).is_zero()
    })
}

/// Recovers `P_k` from `X_0 … X_k`:
/// `i(Σ_{j=1}^k (−1)^{k−j}(X_j − X_{j−1}) + (−1)^k X_0) + I/n`.
pub fn invert_linear(surfaces: &[MatRF], k: usize, n: usize) -> Result<MatRF> {
    if surfaces.len() <= k {
        return Err(Error::LengthMismatch { expected: k + 1, found: surfaces.len() });
    }
    let sign = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    let mut acc = surfaces[0].scale(&GaussianRational::from_integer(sign(k)));
    for j in 1..=k {
        let step = &surfaces[j] - &surfaces[j - 1];
        acc = &acc + &step.scale(&GaussianRational::from_integer(sign(k - j)));
    }
    Ok(acc
        .scale(&GaussianRational::i())
        .add_scalar(&GaussianRational::from_ratio(1, n as i64)))
}

/// Recovers `P_k` from `X_k` alone:
/// `X_k² − 2i(c_k − 1) X_k − c_k(c_k − 2) I`.
pub fn invert_quadratic(x: &MatRF, k: usize, n: usize) -> MatRF {
    let c = surface_constant(k, n);
    let two = BigRational::from_integer(2.into());
    let linear = GaussianRational::new(BigRational::zero(), -(&two * (&c - BigRational::one())));
    let constant = real(&(-(&c * (&c - &two))));
    (&(x * x) + &x.scale(&linear)).add_scalar(&constant)
}

/// `χ₊(X_k) = X_k − i(Π₊P_k + P_k) + (2i/n) I`, which equals `X_{k+1}`.
pub fn chi_plus(x: &MatRF, p: &MatRF, n: usize) -> Result<MatRF> {
    let raised = pi_plus(p)?;
    let shift = (&raised + p).scale(&minus_i());
    Ok((x + &shift).add_scalar(&two_i_over(n)))
}

/// `χ₋(X_k) = X_k + i(Π₋P_k + P_k) − (2i/n) I`, which equals `X_{k−1}`.
pub fn chi_minus(x: &MatRF, p: &MatRF, n: usize) -> Result<MatRF> {
    let lowered = pi_minus(p)?;
    let shift = (&lowered + p).scale(&GaussianRational::i());
    Ok((x + &shift).add_scalar(&-two_i_over(n)))
}

fn two_i_over(n: usize) -> GaussianRational {
    GaussianRational::new(BigRational::zero(), BigRational::new(2.into(), (n as i64).into()))
}

/// `−(i/2) Σ_k X_k`.
pub fn spin_sum(surfaces: &SurfaceTower) -> MatRF {
    let n = surfaces.n();
    let sum = surfaces.surfaces().iter().fold(MatRF::zero(n), |acc, x| &acc + x);
    sum.scale(&GaussianRational::new(BigRational::zero(), BigRational::new((-1).into(), 2.into())))
}

/// The spin weight `k − (n − 1)/2` carried by `P_k`.
pub fn spin_weight(k: usize, n: usize) -> BigRational {
    BigRational::new((2 * k as i64 - (n as i64 - 1)).into(), 2.into())
}

/// `Σ_k (k − (n−1)/2) P_k`.
pub fn weighted_projector_sum(tower: &ProjectorTower) -> MatRF {
    let n = tower.n();
    tower
        .projectors()
        .iter()
        .enumerate()
        .fold(MatRF::zero(n), |acc, (k, p)| &acc + &p.scale(&real(&spin_weight(k, n))))
}

/// Checks `spin_sum = Σ(k − (n−1)/2) P_k` and `S P_k = (k − (n−1)/2) P_k`
/// for every `k`, which fixes the spectrum to `{−(n−1)/2, …, (n−1)/2}`.
pub fn spin_sum_holds(surfaces: &SurfaceTower, tower: &ProjectorTower) -> bool {
    let s = spin_sum(surfaces);
    if !s.equals(&weighted_projector_sum(tower)) {
        return false;
    }
    let n = tower.n();
    tower
        .projectors()
        .iter()
        .enumerate()
        .all(|(k, p)| (&s * p).equals(&p.scale(&real(&spin_weight(k, n)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{term, BiPoly};
    use crate::sigma::{build_tower, HoloSeed};
    use num_complex::Complex64;

    fn tower(coeffs: &[&[i64]]) -> ProjectorTower {
        build_tower(&HoloSeed::from_integers(coeffs).unwrap()).unwrap()
    }

    fn linear() -> ProjectorTower {
        tower(&[&[1], &[0, 1]])
    }

    fn quadratic() -> ProjectorTower {
        tower(&[&[1], &[0, 1], &[0, 0, 1]])
    }

    #[test]
    fn x0_of_linear_seed_at_origin() {
        let x0 = build_surface(&linear(), 0).unwrap();
        let at = |i, j| x0.entry(i, j).eval(Complex64::new(0.0, 0.0));
        assert!((at(0, 0) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!((at(1, 1) - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!(at(0, 1).norm() < 1e-15);
        assert!(x0.trace().is_zero());
    }

    #[test]
    fn x1_of_linear_seed() {
        let t = linear();
        let p = t.projectors();
        let expected = (&p[1] + &p[0].scale(&GaussianRational::from_integer(2)))
            .add_scalar(&GaussianRational::from_ratio(-3, 2))
            .scale(&minus_i());
        assert!(build_surface(&t, 1).unwrap().equals(&expected));
        assert_eq!(build_surface(&t, 2).unwrap_err(), Error::IndexOutOfRange { index: 2, n: 2 });
    }

    #[test]
    fn tangent_equations() {
        let t = linear();
        assert!(verify_tangent(&build_surface(&t, 0).unwrap(), &t.projectors()[0]));
        let t = quadratic();
        let x0 = build_surface(&t, 0).unwrap();
        let x1 = build_surface(&t, 1).unwrap();
        assert!(verify_tangent(&x1, &t.projectors()[1]));
        assert!(!verify_tangent(&x0, &t.projectors()[1]));
    }

    #[test]
    fn dxdx_identity() {
        let t = quadratic();
        for k in 0..3 {
            assert!(verify_dxdx(&build_surface(&t, k).unwrap(), &t.projectors()[k]));
        }
        let constant = MatRF::from_polys(2, vec![BiPoly::one(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero()]);
        assert!(verify_dxdx(&MatRF::zero(2), &constant));
    }

    #[test]
    fn surface_el() {
        assert!(verify_el_surface(&build_surface(&linear(), 0).unwrap()));
        assert!(verify_el_surface(&build_surface(&quadratic(), 1).unwrap()));
        let i = GaussianRational::i();
        // diagonal matrices commute, so this one passes trivially
        let diagonal = MatRF::from_polys(
            2,
            vec![term(1, 1, 1).scale(&i), BiPoly::zero(), BiPoly::zero(), term(1, 1, 1).scale(&-i.clone())],
        );
        assert!(verify_el_surface(&diagonal));
        let bad = MatRF::from_polys(
            2,
            vec![term(1, 1, 1).scale(&i), term(1, 1, 0), term(-1, 0, 1), term(1, 1, 1).scale(&-i.clone())],
        );
        assert!((&bad.herm_conj() + &bad).is_zero());
        assert!(!verify_el_surface(&bad));
    }

    #[test]
    fn minimal_polynomials() {
        let t = linear();
        let x0 = build_surface(&t, 0).unwrap();
        assert_eq!(surface_roots(0, 2), vec![BigRational::new(1.into(), 2.into()), BigRational::new((-1).into(), 2.into())]);
        assert!(minimal_poly_is_minimal(&x0, 0, 2));
        // the cubic with the extra root also annihilates
        let c = surface_constant(0, 2);
        let two = BigRational::from_integer(2.into());
        let cubic = vec![c.clone(), &c - BigRational::one(), &c - &two];
        assert!(root_product(&x0, &cubic).is_zero());

        let t = quadratic();
        for k in 0..3 {
            let x = build_surface(&t, k).unwrap();
            assert!(minimal_poly_is_minimal(&x, k, 3), "k = {k}");
        }
    }

    #[test]
    fn inversions() {
        let t = quadratic();
        let xs: Vec<MatRF> = (0..3).map(|k| build_surface(&t, k).unwrap()).collect();
        for k in 0..3 {
            assert!(invert_linear(&xs, k, 3).unwrap().equals(&t.projectors()[k]));
            assert!(invert_quadratic(&xs[k], k, 3).equals(&t.projectors()[k]));
        }
        assert_eq!(
            invert_linear(&xs[..1], 2, 3).unwrap_err(),
            Error::LengthMismatch { expected: 3, found: 1 }
        );
        let t = linear();
        let x0 = build_surface(&t, 0).unwrap();
        assert!(invert_quadratic(&x0, 0, 2).equals(&t.projectors()[0]));
    }

    #[test]
    fn chi_ladders() {
        let t = linear();
        let s = SurfaceTower::from_tower(&t, Exec::Sequential);
        let p = t.projectors();
        let up = chi_plus(&s.surfaces()[0], &p[0], 2).unwrap();
        assert!(up.equals(&s.surfaces()[1]));
        assert!(chi_minus(&up, &p[1], 2).unwrap().equals(&s.surfaces()[0]));
        assert_eq!(chi_plus(&s.surfaces()[1], &p[1], 2).unwrap_err(), Error::Annihilated);
        assert_eq!(chi_minus(&s.surfaces()[0], &p[0], 2).unwrap_err(), Error::Annihilated);
    }

    #[test]
    fn cartan_and_invariants() {
        let t = quadratic();
        let s = SurfaceTower::from_tower(&t, Exec::Sequential);
        assert!(s.mutually_commute(Exec::Sequential));
        for k in 0..3 {
            assert!(s.is_anti_hermitian(k));
            assert!(s.is_traceless(k));
        }
    }

    #[test]
    fn spin_sums() {
        let t = linear();
        let s = SurfaceTower::from_tower(&t, Exec::Sequential);
        let p = t.projectors();
        let expected = &p[0].scale(&GaussianRational::from_ratio(-1, 2)) + &p[1].scale(&GaussianRational::from_ratio(1, 2));
        assert!(spin_sum(&s).equals(&expected));
        assert!(spin_sum_holds(&s, &t));
        let t = quadratic();
        let s = SurfaceTower::from_tower(&t, Exec::Sequential);
        assert!(spin_sum_holds(&s, &t));
        assert!(spin_sum(&s).trace().is_zero());
    }
}
