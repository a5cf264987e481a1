use std::collections::BTreeSet;

use cpn_surfaces::numeric::{hermitian_eigen, inf_norm, var_op, CMatrix};
use cpn_surfaces::spectrum::{build_s, expected_cardinality, figure_data, Q};
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian() -> impl Strategy<Value = CMatrix> {
    (1usize..7).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
            let m = CMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j].0, v[i * n + j].1));
            &m + m.adjoint()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_diagonalises(h in hermitian()) {
        let n = h.nrows();
        let e = hermitian_eigen(&h).unwrap();
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, e.values.iter().map(|&x| Complex64::new(x, 0.0))));
        prop_assert!(inf_norm(&(&h * &e.vectors - &e.vectors * d)) < 1e-9);
        prop_assert!(inf_norm(&(e.vectors.adjoint() * &e.vectors - CMatrix::identity(n, n))) < 1e-12);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = (0..n).map(|i| h[(i, i)].re).sum();
        prop_assert!((trace - e.values.iter().sum::<f64>()).abs() < 1e-9);
    }

    #[test]
    fn var_is_diagonal_and_vanishes_on_diagonals(h in hermitian()) {
        let n = h.nrows();
        let v = var_op(&h);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(v[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
        let d = CMatrix::from_diagonal(&h.diagonal());
        prop_assert!(inf_norm(&var_op(&d)) < 1e-12);
        // for Hermitian A, var(A)_ii = Σ_{j≠i} |A_ij|² ≥ 0
        for i in 0..n {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| h[(i, j)].norm_sqr()).sum();
            prop_assert!((v[(i, i)].re - off).abs() < 1e-9);
        }
    }

    #[test]
    fn spectrum_invariants(n in 2usize..80) {
        let s = build_s(n).unwrap();
        prop_assert!(s.check_invariants().is_ok());
        let distinct: BTreeSet<Q> = s.s().into_iter().collect();
        prop_assert_eq!(distinct.len(), expected_cardinality(n).0);
        let all: Vec<Q> = s.members.iter().map(|m| m.value).collect();
        let negated: BTreeSet<Q> = all.iter().map(|v| -*v).collect();
        prop_assert_eq!(negated, all.iter().copied().collect::<BTreeSet<Q>>());
        let fig = figure_data(n).unwrap();
        prop_assert_eq!(fig.arrows.len(), 3 * (n - 1));
        prop_assert!(fig.arrows.iter().all(|a| a.to - a.from == Q::new(2, n as i64)));
    }
}
