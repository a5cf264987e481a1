//! Residual study on the default grid for the acceptance seeds, printing
//! per-step maxima and decay ratios.

use cpn_surfaces::numeric::{residual_study, GridSpec, NumericTower};
use cpn_surfaces::sigma::{build_tower, HoloSeed};
use cpn_surfaces::Exec;
use std::time::Instant;

fn main() {
    for c in [&[&[1][..], &[0, 1]][..], &[&[1], &[0, 1], &[0, 0, 1]], &[&[1], &[0, 1], &[1, 0, 1]], &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]]] {
        let t0 = Instant::now();
        let tower = build_tower(&HoloSeed::from_integers(c).unwrap()).unwrap();
        let nt = NumericTower::new(&tower, Exec::Parallel);
        let s = residual_study(&nt, &GridSpec::default(), &[2e-3, 1e-3, 5e-4], Exec::Parallel).unwrap();
        println!("n={} {:?}", c.len(), t0.elapsed());
        for l in &s.levels {
            println!("  h={} first={:.3e}/{:.3e} second={:.3e}/{:.3e} z={:.3e}/{:.3e} gaps={:.1e},{:.1e},{:.1e} nu={:.1e} u={:.1e}",
                l.h, l.first_expanded, l.first_covariant, l.second_expanded, l.second_covariant, l.z_covariant, l.z_projected,
                l.first_gap, l.second_gap, l.z_gap, l.nu_gap, l.unitarity_drift);
        }
        println!("  ratios {:?}", s.ratios.iter().map(|r| (r.name, (r.ratio * 1000.0).round() / 1000.0)).collect::<Vec<_>>());
        println!("  frame drift u={:.1e} p={:.1e}", s.frame_unitarity_drift, s.frame_projector_drift);
    }
}
