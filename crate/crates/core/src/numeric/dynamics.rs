//! Finite-difference residuals of the equations of motion of the
//! diagonalising frame `V` and of its columns `z_k`.
//!
//! With `W_μ = V†∂_μV` and `∂_μV† = −V†∂_μV V†`, every equation is written
//! through `V`, `∂_μV` and `∂_μ∂_μV` only, which the stencil supplies.

use num_complex::Complex64;
use serde::Serialize;

use super::frame::{assemble_v, GridSpec, NumericTower, Stencil};
use super::{diag_part, inf_norm, CMatrix};
use crate::error::{Error, Result};
use crate::report::sig17;
use crate::Exec;

/// Expanded and covariant forms of one equation must agree this closely.
pub const FORM_AGREEMENT: f64 = 1e-8;
/// Closed-form multiplier against its extraction from the field equation.
pub const NU_AGREEMENT: f64 = 1e-6;
/// Accepted `residual(h/2) / residual(h)` for a second-order stencil.
pub const RATIO_RANGE: (f64, f64) = (0.15, 0.45);

/// `var(A) = diag(A²) − diag(A)²`.
pub fn var_op(a: &CMatrix) -> CMatrix {
    let d = diag_part(a);
    diag_part(&(a * a)) - &d * &d
}

fn axis_index(axis: usize) -> Result<usize> {
    match axis {
        1 | 2 => Ok(axis - 1),
        _ => Err(Error::IndexOutOfRange { index: axis, n: 2 }),
    }
}

impl Stencil {
    /// `D_μV = ∂_μV − V diag(V†∂_μV)` for `μ ∈ {1, 2}`.
    pub fn cov_deriv(&self, axis: usize) -> Result<CMatrix> {
        let mu = axis_index(axis)?;
        let v = self.v();
        let dv = self.d(mu);
        let w = v.adjoint() * &dv;
        Ok(&dv - v * diag_part(&w))
    }
}

/// Covariant derivative of the frame along real axis `axis ∈ {1, 2}`.
pub fn cov_deriv_matrix(tower: &NumericTower, grid: &GridSpec, axis: usize, point: Complex64) -> Result<CMatrix> {
    Stencil::new(tower, grid, point)?.cov_deriv(axis)
}

/// Every residual at one grid point.
#[derive(Clone, Debug, Serialize)]
pub struct PointResiduals {
    #[serde(serialize_with = "crate::report::complex_pair")]
    pub point: Complex64,
    #[serde(serialize_with = "sig17")]
    pub h: f64,
    #[serde(serialize_with = "sig17")]
    pub first_expanded: f64,
    #[serde(serialize_with = "sig17")]
    pub first_covariant: f64,
    /// `‖expanded − covariant‖∞` of the first form.
    #[serde(serialize_with = "sig17")]
    pub first_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub second_expanded: f64,
    #[serde(serialize_with = "sig17")]
    pub second_covariant: f64,
    #[serde(serialize_with = "sig17")]
    pub second_gap: f64,
    /// Multiplier: closed form against the diagonal of the extraction.
    #[serde(serialize_with = "sig17")]
    pub nu_gap: f64,
    /// Covariant column equation, per column.
    #[serde(serialize_with = "crate::report::sig17_vec")]
    pub z_covariant: Vec<f64>,
    /// Projected column equation, per column.
    #[serde(serialize_with = "crate::report::sig17_vec")]
    pub z_projected: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    pub z_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub unitarity_drift: f64,
}

fn vec_inf(v: impl Iterator<Item = Complex64>) -> f64 {
    v.map(|z| z.norm()).fold(0.0, f64::max)
}

/// Evaluates all frame and column equations at `point` with the grid's step.
pub fn point_residuals(tower: &NumericTower, grid: &GridSpec, point: Complex64) -> Result<PointResiduals> {
    let st = Stencil::new(tower, grid, point)?;
    let n = tower.n();
    let v = st.v();
    let vh = v.adjoint();
    let dv = [st.d(0), st.d(1)];
    let lap = st.laplacian();
    let w: Vec<CMatrix> = dv.iter().map(|d| &vh * d).collect();
    let dw: Vec<CMatrix> = w.iter().map(diag_part).collect();
    let two = Complex64::new(2.0, 0.0);

    let base = &lap - v * diag_part(&(&vh * &lap));
    let mut first = base.clone();
    let mut second = base.clone();
    let mut ddv = base.clone();
    let mut dv_vh_dv = CMatrix::zeros(n, n);
    let mut var_sum = CMatrix::zeros(n, n);
    let mut nu_rest = CMatrix::zeros(n, n);
    for mu in 0..2 {
        let (d, w, dw) = (&dv[mu], &w[mu], &dw[mu]);
        let w2 = diag_part(&(w * w));
        let dw2 = dw * dw;
        first += -(d * &vh * d) + v * &w2 - d * dw + v * dw * w;
        second += -(d * dw) * two + v * &dw2 * two;
        ddv += -(d * dw) * two + v * &w2 + v * &dw2;
        let cov = d - v * dw;
        dv_vh_dv += &cov * &vh * &cov;
        var_sum += var_op(w);
        nu_rest += -(v * &w2) * two + d * dw * two;
    }
    let first_cov = &ddv - &dv_vh_dv;
    let second_cov = &ddv - v * &var_sum;
    let nu_closed = &var_sum * Complex64::new(-4.0, 0.0);
    let nu_extracted = &vh * (-&base + nu_rest) * two;
    let nu_gap = vec_inf((diag_part(&nu_extracted) - nu_closed).iter().copied());

    let mut z_covariant = Vec::with_capacity(n);
    let mut z_projected = Vec::with_capacity(n);
    let mut z_gap: f64 = 0.0;
    for k in 0..n {
        let (zc, zp) = column_equation(v, &dv, &lap, k);
        z_gap = z_gap.max(vec_inf(zc.iter().zip(zp.iter()).map(|(a, b)| a - b)));
        z_covariant.push(vec_inf(zc.iter().copied()));
        z_projected.push(vec_inf(zp.iter().copied()));
    }

    Ok(PointResiduals {
        point,
        h: st.h,
        first_expanded: inf_norm(&first),
        first_covariant: inf_norm(&first_cov),
        first_gap: inf_norm(&(&first - &first_cov)),
        second_expanded: inf_norm(&second),
        second_covariant: inf_norm(&second_cov),
        second_gap: inf_norm(&(&second - &second_cov)),
        nu_gap,
        z_covariant,
        z_projected,
        z_gap,
        unitarity_drift: st.centre.unitarity_drift(),
    })
}

type CVec = nalgebra::DVector<Complex64>;

/// Both forms of the equation for column `k`:
/// `D_μD_μz + (D_μz†D_μz)z` with `D_μ = ∂_μ − z†∂_μz`, and
/// `(I − zz†)[∂_μ∂_μz − 2(z†∂_μz)∂_μz]`.
fn column_equation(v: &CMatrix, dv: &[CMatrix; 2], lap: &CMatrix, k: usize) -> (CVec, CVec) {
    let z: CVec = v.column(k).into_owned();
    let zh = z.adjoint();
    let lz: CVec = lap.column(k).into_owned();
    let z_lz = (&zh * &lz)[(0, 0)];
    // first derivatives of a unit vector are tangent: drop the O(h²) radial part
    let dz: Vec<CVec> = dv
        .iter()
        .map(|d| {
            let raw: CVec = d.column(k).into_owned();
            let radial = (&zh * &raw)[(0, 0)].re;
            raw - &z * Complex64::new(radial, 0.0)
        })
        .collect();
    let a: Vec<Complex64> = dz.iter().map(|d| (&zh * d)[(0, 0)]).collect();
    let da = Complex64::new(dz.iter().map(|d| d.norm_squared()).sum::<f64>(), 0.0) + z_lz;

    let mut cov = &lz - &z * da;
    let mut inner = lz.clone();
    for mu in 0..2 {
        let dcov = &dz[mu] - &z * a[mu];
        cov += &dz[mu] * (a[mu] * -2.0) + &z * (a[mu] * a[mu]) + &z * Complex64::new(dcov.norm_squared(), 0.0);
        inner -= &dz[mu] * (a[mu] * 2.0);
    }
    let projected = &inner - &z * (&zh * &inner)[(0, 0)];
    (cov, projected)
}

/// `∞`-norm of the expanded first form at `point`.
pub fn residual_first_form(tower: &NumericTower, grid: &GridSpec, point: Complex64) -> Result<f64> {
    Ok(point_residuals(tower, grid, point)?.first_expanded)
}

/// `∞`-norm of the expanded second form at `point`.
pub fn residual_second_form(tower: &NumericTower, grid: &GridSpec, point: Complex64) -> Result<f64> {
    Ok(point_residuals(tower, grid, point)?.second_expanded)
}

/// `∞`-norm of the covariant equation of column `k` at `point`.
pub fn z_equation_residual(tower: &NumericTower, k: usize, grid: &GridSpec, point: Complex64) -> Result<f64> {
    let n = tower.n();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(point_residuals(tower, grid, point)?.z_covariant[k])
}

/// One point of the serialised residual report.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualRecord {
    #[serde(serialize_with = "crate::report::complex_pair")]
    pub point: Complex64,
    #[serde(serialize_with = "sig17")]
    pub h: f64,
    #[serde(serialize_with = "sig17")]
    pub residual_first: f64,
    #[serde(serialize_with = "sig17")]
    pub residual_second: f64,
    #[serde(serialize_with = "crate::report::sig17_vec")]
    pub residual_z: Vec<f64>,
    #[serde(serialize_with = "sig17")]
    pub unitarity_drift: f64,
}

impl From<&PointResiduals> for ResidualRecord {
    fn from(r: &PointResiduals) -> Self {
        Self {
            point: r.point,
            h: r.h,
            residual_first: r.first_expanded,
            residual_second: r.second_expanded,
            residual_z: r.z_covariant.clone(),
            unitarity_drift: r.unitarity_drift,
        }
    }
}

/// Maxima over the interior grid points at one step size.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StudyLevel {
    #[serde(serialize_with = "sig17")]
    pub h: f64,
    #[serde(serialize_with = "sig17")]
    pub first_expanded: f64,
    #[serde(serialize_with = "sig17")]
    pub first_covariant: f64,
    #[serde(serialize_with = "sig17")]
    pub second_expanded: f64,
    #[serde(serialize_with = "sig17")]
    pub second_covariant: f64,
    #[serde(serialize_with = "sig17")]
    pub z_covariant: f64,
    #[serde(serialize_with = "sig17")]
    pub z_projected: f64,
    #[serde(serialize_with = "sig17")]
    pub first_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub second_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub z_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub nu_gap: f64,
    #[serde(serialize_with = "sig17")]
    pub unitarity_drift: f64,
}

impl StudyLevel {
    fn absorb(&mut self, r: &PointResiduals) {
        let up = |a: &mut f64, b: f64| *a = a.max(b);
        up(&mut self.first_expanded, r.first_expanded);
        up(&mut self.first_covariant, r.first_covariant);
        up(&mut self.second_expanded, r.second_expanded);
        up(&mut self.second_covariant, r.second_covariant);
        up(&mut self.z_covariant, r.z_covariant.iter().copied().fold(0.0, f64::max));
        up(&mut self.z_projected, r.z_projected.iter().copied().fold(0.0, f64::max));
        up(&mut self.first_gap, r.first_gap);
        up(&mut self.second_gap, r.second_gap);
        up(&mut self.z_gap, r.z_gap);
        up(&mut self.nu_gap, r.nu_gap);
        up(&mut self.unitarity_drift, r.unitarity_drift);
    }

    /// The residual series whose decay is tracked, by name.
    pub fn series(&self) -> [(&'static str, f64); 6] {
        [
            ("first_expanded", self.first_expanded),
            ("first_covariant", self.first_covariant),
            ("second_expanded", self.second_expanded),
            ("second_covariant", self.second_covariant),
            ("z_covariant", self.z_covariant),
            ("z_projected", self.z_projected),
        ]
    }
}

/// Decay ratio of one residual series between consecutive steps.
#[derive(Clone, Debug, Serialize)]
pub struct Ratio {
    pub name: &'static str,
    #[serde(serialize_with = "sig17")]
    pub from_h: f64,
    #[serde(serialize_with = "sig17")]
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualStudy {
    pub levels: Vec<StudyLevel>,
    pub ratios: Vec<Ratio>,
    /// `max ‖V†V − I‖∞` of the assembled frame over every grid point.
    #[serde(serialize_with = "sig17")]
    pub frame_unitarity_drift: f64,
    /// `max_k ‖V†P_kV − I_k‖∞` of the assembled frame over every grid point.
    #[serde(serialize_with = "sig17")]
    pub frame_projector_drift: f64,
    pub records: Vec<ResidualRecord>,
}

impl ResidualStudy {
    pub fn ratios_in_range(&self) -> bool {
        self.ratios.iter().all(|r| r.ratio >= RATIO_RANGE.0 && r.ratio <= RATIO_RANGE.1)
    }

    pub fn forms_agree(&self) -> bool {
        self.levels.iter().all(|l| l.first_gap < FORM_AGREEMENT && l.second_gap < FORM_AGREEMENT && l.z_gap < FORM_AGREEMENT)
    }

    pub fn nu_agrees(&self) -> bool {
        self.levels.iter().all(|l| l.nu_gap < NU_AGREEMENT)
    }
}

/// Residuals at every interior grid point for each step in `steps`
/// (largest first), with their decay ratios and the frame drift over the
/// whole grid.
pub fn residual_study(tower: &NumericTower, grid: &GridSpec, steps: &[f64], exec: Exec) -> Result<ResidualStudy> {
    let widest = steps.iter().copied().fold(grid.h, f64::max);
    let points = grid.with_step(widest)?.interior_points();

    let mut levels = Vec::with_capacity(steps.len());
    let mut records = Vec::new();
    for &h in steps {
        let g = grid.with_step(h)?;
        let rows = exec.map(&points, |&p| point_residuals(tower, &g, p)).into_iter().collect::<Result<Vec<_>>>()?;
        let mut level = StudyLevel { h, ..Default::default() };
        for r in &rows {
            level.absorb(r);
            records.push(ResidualRecord::from(r));
        }
        levels.push(level);
    }

    let mut ratios = Vec::new();
    for pair in levels.windows(2) {
        for ((name, a), (_, b)) in pair[0].series().into_iter().zip(pair[1].series()) {
            ratios.push(Ratio { name, from_h: pair[0].h, ratio: b / a });
        }
    }

    let drifts = exec
        .map(&grid.points(), |&p| -> Result<(f64, f64)> {
            let f = assemble_v(tower, p)?;
            Ok((f.unitarity_drift(), f.projector_drift(&tower.projectors_at(p)?)))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (frame_unitarity_drift, frame_projector_drift) =
        drifts.iter().fold((0.0, 0.0), |(u, p), &(a, b)| (f64::max(u, a), f64::max(p, b)));

    Ok(ResidualStudy { levels, ratios, frame_unitarity_drift, frame_projector_drift, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::{build_tower, HoloSeed};

    fn tower(c: &[&[i64]]) -> NumericTower {
        NumericTower::new(&build_tower(&HoloSeed::from_integers(c).unwrap()).unwrap(), Exec::Sequential)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn var_examples() {
        let swap = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        assert_eq!(var_op(&swap), CMatrix::identity(2, 2));
        let nil = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert_eq!(var_op(&nil), CMatrix::zeros(2, 2));
        let d = CMatrix::from_row_slice(2, 2, &[c(2., 1.), c(0., 0.), c(0., 0.), c(-3., 0.)]);
        assert!(inf_norm(&var_op(&d)) < 1e-15);
    }

    #[test]
    fn covariant_derivative_columnwise() {
        let t = tower(&[&[1], &[0, 1], &[0, 0, 1]]);
        let grid = GridSpec { h: 1e-4, ..Default::default() };
        let p = c(0.4, 0.1);
        let st = Stencil::new(&t, &grid, p).unwrap();
        for axis in [1, 2] {
            let dm = cov_deriv_matrix(&t, &grid, axis, p).unwrap();
            let dv = st.d(axis - 1);
            for k in 0..3 {
                let z = st.v().column(k);
                let dz = dv.column(k);
                let conn = (z.adjoint() * dz)[(0, 0)];
                let want = dz - z * conn;
                assert!((dm.column(k) - want).camax() < 1e-9);
            }
        }
        assert!(matches!(cov_deriv_matrix(&t, &grid, 3, p), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn residuals_small_and_second_order() {
        let t = tower(&[&[1], &[0, 1]]);
        let p = c(0.4, 0.1);
        let g = GridSpec { h: 1e-3, ..Default::default() };
        let r1 = point_residuals(&t, &g, p).unwrap();
        assert!(r1.first_expanded < 1e-4 && r1.second_expanded < 1e-4 && r1.z_covariant[0] < 1e-4);
        assert!(r1.first_gap < FORM_AGREEMENT && r1.second_gap < FORM_AGREEMENT && r1.z_gap < FORM_AGREEMENT);
        let r2 = point_residuals(&t, &GridSpec { h: 5e-4, ..g }, p).unwrap();
        let ratio = r2.first_expanded / r1.first_expanded;
        assert!(ratio > RATIO_RANGE.0 && ratio < RATIO_RANGE.1, "ratio {ratio}");
        assert!(z_equation_residual(&t, 0, &g, p).unwrap() < 1e-4);
    }

    #[test]
    fn nu_identity() {
        let t = tower(&[&[1], &[0, 1]]);
        let g = GridSpec { h: 1e-4, ..Default::default() };
        assert!(point_residuals(&t, &g, c(0.4, 0.1)).unwrap().nu_gap < NU_AGREEMENT);
    }
}
