//! Serialised towers: every matrix as a shared denominator and entry
//! numerators, each a list of `[xi_power, xibar_power, "coefficient"]`.

use cpn_surfaces::algebra::{BiPoly, MatRF};
use cpn_surfaces::sigma::ProjectorTower;
use serde::Serialize;

#[derive(Serialize)]
pub struct PolyTable(Vec<(u32, u32, String)>);

impl From<&BiPoly> for PolyTable {
    fn from(p: &BiPoly) -> Self {
        PolyTable(p.terms().map(|(m, c)| (m.xi, m.xibar, c.to_string())).collect())
    }
}

#[derive(Serialize)]
pub struct MatrixTable {
    pub den: PolyTable,
    /// Row-major.
    pub nums: Vec<PolyTable>,
}

impl From<&MatRF> for MatrixTable {
    fn from(m: &MatRF) -> Self {
        MatrixTable { den: m.den().into(), nums: m.nums().iter().map(PolyTable::from).collect() }
    }
}

#[derive(Serialize)]
pub struct TowerFile {
    pub n: usize,
    pub projectors: Vec<MatrixTable>,
}

impl From<&ProjectorTower> for TowerFile {
    fn from(t: &ProjectorTower) -> Self {
        TowerFile { n: t.n(), projectors: t.projectors().iter().map(MatrixTable::from).collect() }
    }
}
