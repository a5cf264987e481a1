//! Pointwise towers, the diagonalising frame `V` and finite-difference
//! stencils around grid points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eval::CompiledMat;
use super::{hermitian_eigen, inf_norm, CMatrix};
use crate::error::{Error, Result};
use crate::report::{complex_pair, sig17, sig17_vec};
use crate::sigma::ProjectorTower;
use crate::spectrum::surface_spectrum;
use crate::surfaces::SurfaceTower;
use crate::Exec;

/// A column component smaller than this cannot fix the phase.
pub const GAUGE_THRESHOLD: f64 = 1e-6;
pub const UNITARITY_DRIFT: f64 = 1e-10;
pub const PROJECTOR_DRIFT: f64 = 1e-8;

/// Square sampling grid in the real coordinates `ξ = ξ¹ + iξ²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    #[serde(serialize_with = "complex_pair")]
    pub center: Complex64,
    #[serde(serialize_with = "sig17")]
    pub half_width: f64,
    pub samples: usize,
    /// Finite-difference step.
    #[serde(serialize_with = "sig17")]
    pub h: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { center: Complex64::new(0.3, 0.2), half_width: 1.0, samples: 41, h: 1e-3 }
    }
}

impl GridSpec {
    pub fn new(center: Complex64, half_width: f64, samples: usize, h: f64) -> Result<Self> {
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidGrid(format!("centre {center} is not finite")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!("half-width {half_width} must be positive")));
        }
        if samples < 3 {
            return Err(Error::InvalidGrid(format!("{samples} samples per axis, need at least 3")));
        }
        if !(h > 0.0 && h < half_width) {
            return Err(Error::InvalidGrid(format!("step {h} must lie in (0, half-width)")));
        }
        Ok(Self { center, half_width, samples, h })
    }

    pub fn with_step(self, h: f64) -> Result<Self> {
        Self::new(self.center, self.half_width, self.samples, h)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.samples - 1) as f64
    }

    /// All grid points, real index fastest.
    pub fn points(&self) -> Vec<Complex64> {
        let s = self.spacing();
        let lo = -self.half_width;
        (0..self.samples)
            .flat_map(|j| {
                (0..self.samples).map(move |i| self.center + Complex64::new(lo + i as f64 * s, lo + j as f64 * s))
            })
            .collect()
    }

    /// Whether the five-point stencil of step `h` around `point` stays in the square.
    pub fn stencil_fits(&self, point: Complex64) -> bool {
        let d = point - self.center;
        let lim = self.half_width * (1.0 + 1e-12);
        d.re.abs() + self.h <= lim && d.im.abs() + self.h <= lim
    }

    /// Grid points whose stencil fits.
    pub fn interior_points(&self) -> Vec<Complex64> {
        self.points().into_iter().filter(|&p| self.stencil_fits(p)).collect()
    }

    /// Uniform random point of the square with a fitting stencil.
    fn random_point(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let w = self.half_width - self.h;
        self.center + Complex64::new(rng.gen_range(-w..w), rng.gen_range(-w..w))
    }
}

/// A tower with its surfaces compiled for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericTower {
    projectors: Vec<CompiledMat>,
    surfaces: Vec<CompiledMat>,
}

impl NumericTower {
    pub fn new(tower: &ProjectorTower, exec: Exec) -> Self {
        let st = SurfaceTower::from_tower(tower, exec);
        Self {
            projectors: tower.projectors().iter().map(CompiledMat::new).collect(),
            surfaces: st.surfaces().iter().map(CompiledMat::new).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors_at(&self, point: Complex64) -> Result<Vec<CMatrix>> {
        self.projectors.iter().map(|p| p.eval(point)).collect()
    }

    pub fn surface_at(&self, k: usize, point: Complex64) -> Result<CMatrix> {
        let n = self.n();
        self.surfaces.get(k).ok_or(Error::IndexOutOfRange { index: k, n })?.eval(point)
    }
}

/// The diagonalising unitary at one point.
#[derive(Clone, Debug)]
pub struct Vframe {
    pub point: Complex64,
    pub v: CMatrix,
    /// `ordering[k]` is the projector whose range column `k` spans.
    pub ordering: Vec<usize>,
    /// Component of column `k` fixed real positive.
    pub gauge: Vec<usize>,
}

impl Vframe {
    /// `‖V†V − I‖∞`.
    pub fn unitarity_drift(&self) -> f64 {
        let n = self.v.nrows();
        inf_norm(&(self.v.adjoint() * &self.v - CMatrix::identity(n, n)))
    }

    /// `max_k ‖V†P_kV − I_k‖∞`.
    pub fn projector_drift(&self, projectors: &[CMatrix]) -> f64 {
        let n = self.v.nrows();
        projectors
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let mut ik = CMatrix::zeros(n, n);
                ik[(self.ordering[k], self.ordering[k])] = Complex64::new(1.0, 0.0);
                inf_norm(&(self.v.adjoint() * p * &self.v - ik))
            })
            .fold(0.0, f64::max)
    }
}

/// Frame whose column `k` is the range vector of `projectors[k]`, with
/// component `gauge[k]` real positive: `P_k[:, m] / √P_k[m, m]`.
pub fn frame_with_gauge(projectors: &[CMatrix], gauge: &[usize]) -> CMatrix {
    let n = projectors.len();
    let mut v = CMatrix::zeros(n, n);
    for (k, (p, &m)) in projectors.iter().zip(gauge).enumerate() {
        let scale = p[(m, m)].re.max(0.0).sqrt();
        for r in 0..n {
            v[(r, k)] = p[(r, m)] / scale;
        }
    }
    v
}

fn first_component_gauge(projectors: &[CMatrix]) -> Result<Vec<usize>> {
    projectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            (0..p.nrows())
                .find(|&m| p[(m, m)].re.max(0.0).sqrt() > GAUGE_THRESHOLD)
                .ok_or(Error::RankDeficient(k))
        })
        .collect()
}

fn largest_component_gauge(projectors: &[CMatrix]) -> Result<Vec<usize>> {
    projectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let m = (0..p.nrows()).max_by(|&a, &b| p[(a, a)].re.total_cmp(&p[(b, b)].re)).unwrap_or(0);
            if p[(m, m)].re.max(0.0).sqrt() > GAUGE_THRESHOLD {
                Ok(m)
            } else {
                Err(Error::RankDeficient(k))
            }
        })
        .collect()
}

/// Diagonalising frame at `point`, phase fixed by the first nonvanishing
/// component of each column.
pub fn assemble_v(tower: &NumericTower, point: Complex64) -> Result<Vframe> {
    let ps = tower.projectors_at(point)?;
    let gauge = first_component_gauge(&ps)?;
    let v = frame_with_gauge(&ps, &gauge);
    Ok(Vframe { point, v, ordering: (0..ps.len()).collect(), gauge })
}

/// Frames on the five-point stencil of a grid point.
///
/// The gauge component of each column is the largest one at the centre
/// and is held fixed on the whole stencil, so `V` is smooth across it even
/// where the first component of some range vector crosses zero.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub h: f64,
    pub centre: Vframe,
    pub projectors: Vec<CMatrix>,
    plus: [CMatrix; 2],
    minus: [CMatrix; 2],
}

impl Stencil {
    pub fn new(tower: &NumericTower, grid: &GridSpec, point: Complex64) -> Result<Self> {
        if !grid.stencil_fits(point) {
            return Err(Error::StencilOutOfGrid(format!("{point}")));
        }
        let h = grid.h;
        let projectors = tower.projectors_at(point)?;
        let gauge = largest_component_gauge(&projectors)?;
        let at = |q: Complex64| -> Result<CMatrix> { Ok(frame_with_gauge(&tower.projectors_at(q)?, &gauge)) };
        let steps = [Complex64::new(h, 0.0), Complex64::new(0.0, h)];
        let plus = [at(point + steps[0])?, at(point + steps[1])?];
        let minus = [at(point - steps[0])?, at(point - steps[1])?];
        let v = frame_with_gauge(&projectors, &gauge);
        let centre = Vframe { point, v, ordering: (0..projectors.len()).collect(), gauge };
        Ok(Self { h, centre, projectors, plus, minus })
    }

    pub fn v(&self) -> &CMatrix {
        &self.centre.v
    }

    /// Central difference along real axis `mu ∈ {0, 1}`.
    pub fn d(&self, mu: usize) -> CMatrix {
        (&self.plus[mu] - &self.minus[mu]) / Complex64::new(2.0 * self.h, 0.0)
    }

    /// `∂_μ∂_μ V` summed over both axes.
    pub fn laplacian(&self) -> CMatrix {
        let v2 = self.v() * Complex64::new(2.0, 0.0);
        let sum = (&self.plus[0] + &self.minus[0] - &v2) + (&self.plus[1] + &self.minus[1] - &v2);
        sum / Complex64::new(self.h * self.h, 0.0)
    }
}

/// Result of comparing the numerical spectrum of `−iX_k` with the exact one.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub k: usize,
    #[serde(serialize_with = "complex_pair")]
    pub point: Complex64,
    #[serde(serialize_with = "sig17_vec")]
    pub computed: Vec<f64>,
    #[serde(serialize_with = "sig17_vec")]
    pub expected: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    pub max_deviation: f64,
    /// Numerical multiplicities of `c_k − 2`, `c_k − 1`, `c_k`.
    pub multiplicities: (usize, usize, usize),
}

/// Diagonalises `−iX_k` for every `k` at each point and compares with
/// [`surface_spectrum`].
pub fn eigen_cross_check(tower: &NumericTower, points: &[Complex64], exec: Exec) -> Result<Vec<EigenCheck>> {
    let n = tower.n();
    let jobs: Vec<(usize, Complex64)> = points.iter().flat_map(|&p| (0..n).map(move |k| (k, p))).collect();
    exec.map(&jobs, |&(k, point)| {
        let x = tower.surface_at(k, point)?;
        let e = hermitian_eigen(&(x * Complex64::new(0.0, -1.0)))?;
        let expected: Vec<f64> =
            surface_spectrum(k, n)?.iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
        let max_deviation = e.values.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let count = |t: f64| e.values.iter().filter(|&&v| (v - t).abs() < 1e-8).count();
        let c = (1 + 2 * k) as f64 / n as f64;
        let multiplicities = (count(c - 2.0), count(c - 1.0), count(c));
        Ok(EigenCheck {
            k,
            point,
            computed: e.values,
            expected,
            max_deviation,
            multiplicities,
        })
    })
    .into_iter()
    .collect()
}

/// `count` reproducible random points of the grid square at which every
/// projector evaluates.
pub fn random_regular_points(tower: &NumericTower, grid: &GridSpec, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = grid.random_point(&mut rng);
        if tower.projectors_at(p).is_ok() {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::{build_tower, HoloSeed};

    fn tower(c: &[&[i64]]) -> NumericTower {
        NumericTower::new(&build_tower(&HoloSeed::from_integers(c).unwrap()).unwrap(), Exec::Sequential)
    }

    #[test]
    fn frame_at_origin_is_identity() {
        let t = tower(&[&[1], &[0, 1]]);
        let f = assemble_v(&t, Complex64::new(0.0, 0.0)).unwrap();
        assert!(inf_norm(&(f.v - CMatrix::identity(2, 2))) < 1e-15);
    }

    #[test]
    fn frame_at_one() {
        let t = tower(&[&[1], &[0, 1]]);
        let f = assemble_v(&t, Complex64::new(1.0, 0.0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let want = CMatrix::from_row_slice(2, 2, &[r.into(), r.into(), r.into(), (-r).into()]);
        assert!(inf_norm(&(f.v - want)) < 1e-15);
    }

    #[test]
    fn frame_diagonalises_projectors() {
        let t = tower(&[&[1], &[0, 1], &[0, 0, 1]]);
        let grid = GridSpec::default();
        for p in random_regular_points(&t, &grid, 10, 3) {
            let f = assemble_v(&t, p).unwrap();
            assert!(f.unitarity_drift() < UNITARITY_DRIFT);
            assert!(f.projector_drift(&t.projectors_at(p).unwrap()) < PROJECTOR_DRIFT);
        }
    }

    #[test]
    fn surface_eigenvalues() {
        let t = tower(&[&[1], &[0, 1]]);
        let c = eigen_cross_check(&t, &[Complex64::new(0.7, 0.0)], Exec::Sequential).unwrap();
        assert!((c[0].computed[0] + 0.5).abs() < 1e-12 && (c[0].computed[1] - 0.5).abs() < 1e-12);
        let t = tower(&[&[1], &[0, 1], &[0, 0, 1]]);
        for c in eigen_cross_check(&t, &[Complex64::new(0.4, -0.3)], Exec::Sequential).unwrap() {
            assert!(c.max_deviation < 1e-10);
            assert_eq!(c.multiplicities, (c.k, 1, 2 - c.k));
        }
    }

    #[test]
    fn stencil_bounds() {
        let t = tower(&[&[1], &[0, 1]]);
        let grid = GridSpec::default();
        let corner = grid.center + Complex64::new(1.0, 1.0);
        assert!(matches!(Stencil::new(&t, &grid, corner), Err(Error::StencilOutOfGrid(_))));
        assert_eq!(grid.interior_points().len(), 39 * 39);
    }
}
