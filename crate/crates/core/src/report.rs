//! Verification catalogue for one seed, and JSON number formatting.

use std::time::Instant;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::algebra::Monomial;
use crate::error::Result;
use crate::sigma::{build_tower, holomorphy_class, verify_conservation, verify_el, HoloSeed, Holomorphy, ProjectorTower};
use crate::surfaces::{
    chi_minus, chi_plus, invert_linear, invert_quadratic, minimal_poly_check, minimal_poly_is_minimal, spin_sum_holds,
    verify_dxdx, verify_el_surface, verify_tangent, SurfaceTower,
};
use crate::Exec;

/// `x` with 17 significant digits; non-finite values become `null`.
pub fn fixed17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(fixed17(x)).expect("formatted float is valid JSON")
}

/// Serde adapter writing a float through [`fixed17`].
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

pub fn sig17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&raw(x))?;
    }
    seq.end()
}

/// A complex number as `[re, im]`.
pub fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    sig17_vec(&[z.re, z.im], s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "sig17")]
    pub seconds: f64,
}

/// Names of the exact checks run by [`verify_seed`], in order.
pub const CATALOGUE: [&str; 18] = [
    "rank_one_projectors",
    "orthogonality",
    "completeness",
    "ladder_inverse",
    "holomorphy_classes",
    "euler_lagrange",
    "conservation_form",
    "surfaces_anti_hermitian",
    "surfaces_traceless",
    "tangent_equations",
    "dxdx_identity",
    "surface_euler_lagrange",
    "minimal_polynomials",
    "minimality",
    "linear_inversion",
    "quadratic_inversion",
    "chi_ladder",
    "cartan_and_spin",
];

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub n: usize,
    /// Seed components as ascending coefficient strings.
    pub seed: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    #[serde(serialize_with = "sig17")]
    pub seconds: f64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn seed_echo(seed: &HoloSeed) -> Vec<Vec<String>> {
    seed.components()
        .iter()
        .map(|p| {
            let deg = p.terms().map(|(m, _)| m.xi).max().unwrap_or(0);
            (0..=deg).map(|d| p.coeff(Monomial::new(d, 0)).to_string()).collect()
        })
        .collect()
}

/// Indices failing `ok`, formatted for a check detail.
fn failing(n: usize, ok: impl Fn(usize) -> bool) -> (bool, String) {
    let bad: Vec<usize> = (0..n).filter(|&k| !ok(k)).collect();
    if bad.is_empty() {
        (true, format!("all {n}"))
    } else {
        (false, format!("fails at k = {bad:?}"))
    }
}

/// Runs every exact check of the catalogue on the tower of `seed`.
///
/// Construction failures (for instance premature annihilation) are
/// returned as errors rather than as failed checks.
pub fn verify_seed(seed: &HoloSeed, exec: Exec) -> Result<Report> {
    let start = Instant::now();
    let tower = build_tower(seed)?;
    let surfaces = SurfaceTower::from_tower(&tower, exec);
    let checks = run_catalogue(&tower, &surfaces, exec)?;
    Ok(Report { n: seed.n(), seed: seed_echo(seed), checks, seconds: start.elapsed().as_secs_f64() })
}

fn run_catalogue(tower: &ProjectorTower, st: &SurfaceTower, exec: Exec) -> Result<Vec<Check>> {
    let n = tower.n();
    let ps = tower.projectors();
    let xs = st.surfaces();
    let mut checks = Vec::with_capacity(CATALOGUE.len());
    let mut run = |name: &'static str, f: &dyn Fn() -> Result<(bool, String)>| -> Result<()> {
        let t = Instant::now();
        let (passed, detail) = f()?;
        checks.push(Check { name, kind: CheckKind::Exact, passed, detail, seconds: t.elapsed().as_secs_f64() });
        Ok(())
    };
    let each = |ok: &(dyn Fn(usize) -> bool + Sync)| -> (bool, String) {
        let flags = exec.map_range(n, ok);
        failing(n, |k| flags[k])
    };

    run(CATALOGUE[0], &|| Ok(each(&|k| tower.is_projector(k))))?;
    run(CATALOGUE[1], &|| Ok((tower.orthogonality_holds(exec), "P_j P_k = 0 for j ≠ k".into())))?;
    run(CATALOGUE[2], &|| Ok((tower.completeness_holds(), "Σ P_k = I".into())))?;
    run(CATALOGUE[3], &|| Ok(failing(n - 1, |k| tower.ladder_inverse_holds(k))))?;
    run(CATALOGUE[4], &|| {
        let classes = ps.iter().map(holomorphy_class).collect::<Result<Vec<_>>>()?;
        let want = |k: usize| match k {
            0 => Holomorphy::Holomorphic,
            k if k + 1 == n => Holomorphy::Antiholomorphic,
            _ => Holomorphy::Mixed,
        };
        let ok = classes.iter().enumerate().all(|(k, &c)| c == want(k));
        Ok((ok, format!("{classes:?}")))
    })?;
    run(CATALOGUE[5], &|| Ok(each(&|k| verify_el(&ps[k]))))?;
    run(CATALOGUE[6], &|| Ok(each(&|k| verify_conservation(&ps[k]))))?;
    run(CATALOGUE[7], &|| Ok(each(&|k| st.is_anti_hermitian(k))))?;
    run(CATALOGUE[8], &|| Ok(each(&|k| st.is_traceless(k))))?;
    run(CATALOGUE[9], &|| Ok(each(&|k| verify_tangent(&xs[k], &ps[k]))))?;
    run(CATALOGUE[10], &|| Ok(each(&|k| verify_dxdx(&xs[k], &ps[k]))))?;
    run(CATALOGUE[11], &|| Ok(each(&|k| verify_el_surface(&xs[k]))))?;
    run(CATALOGUE[12], &|| Ok(each(&|k| minimal_poly_check(&xs[k], k, n))))?;
    run(CATALOGUE[13], &|| Ok(each(&|k| minimal_poly_is_minimal(&xs[k], k, n))))?;
    run(CATALOGUE[14], &|| {
        let flags = exec.map_range(n, |k| invert_linear(xs, k, n).map(|p| p.equals(&ps[k])));
        let flags = flags.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(failing(n, |k| flags[k]))
    })?;
    run(CATALOGUE[15], &|| Ok(each(&|k| invert_quadratic(&xs[k], k, n).equals(&ps[k]))))?;
    run(CATALOGUE[16], &|| {
        let flags = exec.map_range(n, |k| -> Result<bool> {
            let up = k + 1 < n;
            let down = k > 0;
            let up_ok = !up || chi_plus(&xs[k], &ps[k], n)?.equals(&xs[k + 1]);
            let down_ok = !down || chi_minus(&xs[k], &ps[k], n)?.equals(&xs[k - 1]);
            Ok(up_ok && down_ok)
        });
        let flags = flags.into_iter().collect::<Result<Vec<_>>>()?;
        let (ok, detail) = failing(n, |k| flags[k]);
        Ok((ok, format!("χ₊(X_k) = X_(k+1), χ₋(X_k) = X_(k−1): {detail}")))
    })?;
    run(CATALOGUE[17], &|| {
        let commute = st.mutually_commute(exec);
        let spin = spin_sum_holds(st, tower);
        Ok((commute && spin, format!("[X_j, X_k] = 0: {commute}; spin sum: {spin}")))
    })?;
    Ok(checks)
}
