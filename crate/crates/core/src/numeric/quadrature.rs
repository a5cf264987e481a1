//! Action of a projector over the plane, integrated on the sphere.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::eval::CompiledMat;
use super::CMatrix;
use crate::algebra::MatRF;
use crate::error::Result;
use crate::report::{sig17, sig17_vec};
use crate::Exec;

/// One quadrature run.
#[derive(Clone, Debug, Serialize)]
pub struct ActionQuadrature {
    pub resolution: usize,
    /// `∫ tr(∂P∂̄P) dξ¹dξ²`.
    #[serde(serialize_with = "sig17")]
    pub value: f64,
    /// `∫ −tr(∂X∂̄X) dξ¹dξ²` with `∂X = −i[∂P, P]`, `∂̄X = i[∂̄P, P]`.
    #[serde(serialize_with = "sig17")]
    pub surface_value: f64,
    /// Largest pointwise `|tr(∂P∂̄P) + tr(∂X∂̄X)|` over the samples.
    #[serde(serialize_with = "sig17")]
    pub max_density_gap: f64,
    /// Smallest sampled `tr(∂P∂̄P)`.
    #[serde(serialize_with = "sig17")]
    pub min_density: f64,
}

/// Composite midpoint rule in `(θ, φ) ∈ (0, π) × (0, 2π)` after
/// `ξ = tan(θ/2) e^{iφ}`, so `dξ¹dξ² = ½ tan(θ/2) sec²(θ/2) dθ dφ`, with
/// `resolution` cells along each angle.
pub fn action_quadrature(p: &MatRF, resolution: usize, exec: Exec) -> Result<ActionQuadrature> {
    let pm = CompiledMat::new(p);
    let dp = CompiledMat::new(&p.d_xi());
    let dbp = CompiledMat::new(&p.d_xibar());
    let res = resolution.max(1);
    let (dt, df) = (PI / res as f64, 2.0 * PI / res as f64);

    let rows = exec.map_range(res, |i| -> Result<(f64, f64, f64, f64)> {
        let theta = (i as f64 + 0.5) * dt;
        let r = (theta / 2.0).tan();
        let sec = 1.0 / (theta / 2.0).cos();
        let weight = 0.5 * r * sec * sec * dt * df;
        let (mut sum, mut xsum, mut gap, mut lo) = (0.0, 0.0, 0.0_f64, f64::INFINITY);
        for j in 0..res {
            let xi = Complex64::from_polar(r, (j as f64 + 0.5) * df);
            let (pv, a, b) = (pm.eval(xi)?, dp.eval(xi)?, dbp.eval(xi)?);
            let density = (&a * &b).trace();
            let ca: CMatrix = &a * &pv - &pv * &a;
            let cb: CMatrix = &b * &pv - &pv * &b;
            let surface = -(ca * cb).trace();
            gap = gap.max((density - surface).norm());
            lo = lo.min(density.re);
            sum += density.re * weight;
            xsum += surface.re * weight;
        }
        Ok((sum, xsum, gap, lo))
    });

    let mut out = ActionQuadrature { resolution: res, value: 0.0, surface_value: 0.0, max_density_gap: 0.0, min_density: f64::INFINITY };
    for row in rows {
        let (s, x, g, lo) = row?;
        out.value += s;
        out.surface_value += x;
        out.max_density_gap = out.max_density_gap.max(g);
        out.min_density = out.min_density.min(lo);
    }
    Ok(out)
}

/// Runs at increasing resolutions with the decay of successive differences
/// and a Richardson estimate of the limit.
#[derive(Clone, Debug, Serialize)]
pub struct ActionStudy {
    pub runs: Vec<ActionQuadrature>,
    /// `|I_{j} − I_{j−1}| / |I_{j+1} − I_j|`; about 4 for a second-order rule.
    #[serde(serialize_with = "sig17_vec")]
    pub difference_ratios: Vec<f64>,
    /// `I_last + (I_last − I_prev)/3`, eliminating the `O(res⁻²)` term.
    #[serde(serialize_with = "sig17")]
    pub extrapolated: f64,
}

impl ActionStudy {
    pub fn monotone(&self) -> bool {
        let v: Vec<f64> = self.runs.iter().map(|r| r.value).collect();
        v.windows(2).all(|w| w[1] >= w[0]) || v.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Quadrature at each resolution, typically doubling.
pub fn action_study(p: &MatRF, resolutions: &[usize], exec: Exec) -> Result<ActionStudy> {
    let runs = resolutions.iter().map(|&r| action_quadrature(p, r, exec)).collect::<Result<Vec<_>>>()?;
    let diffs: Vec<f64> = runs.windows(2).map(|w| (w[1].value - w[0].value).abs()).collect();
    let difference_ratios = diffs.windows(2).map(|d| d[0] / d[1]).collect();
    let extrapolated = match runs.len() {
        0 => 0.0,
        1 => runs[0].value,
        m => runs[m - 1].value + (runs[m - 1].value - runs[m - 2].value) / 3.0,
    };
    Ok(ActionStudy { runs, difference_ratios, extrapolated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::{build_p0, HoloSeed};

    #[test]
    fn fubini_study_area() {
        let p = build_p0(&HoloSeed::from_integers(&[&[1], &[0, 1]]).unwrap());
        let s = action_study(&p, &[64, 128, 256], Exec::default()).unwrap();
        assert!(s.monotone());
        assert!(s.difference_ratios.iter().all(|&r| r >= 4.0), "{:?}", s.difference_ratios);
        assert!((s.extrapolated - PI).abs() < 1e-6, "{}", s.extrapolated);
        for r in &s.runs {
            assert!(r.max_density_gap < 1e-10 && r.min_density >= -1e-12);
        }
    }

    #[test]
    fn constant_projector_has_no_action() {
        let p = MatRF::from_polys(2, vec![crate::algebra::BiPoly::one(), crate::algebra::BiPoly::zero(), crate::algebra::BiPoly::zero(), crate::algebra::BiPoly::zero()]);
        let q = action_quadrature(&p, 16, Exec::Sequential).unwrap();
        assert_eq!(q.value, 0.0);
    }
}
