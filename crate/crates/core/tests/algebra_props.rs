use cpn_surfaces::algebra::{herm_conj, term, BiPoly, GaussianRational, MatRF, Monomial, RatFun};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
        &GaussianRational::from_ratio(a, d) + &GaussianRational::from_ratio(b, d).mul_i()
    })
}

fn poly(max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((coeff(), 0u32..3, 0u32..3), 0..=max_terms).prop_map(|terms| {
        terms.into_iter().fold(BiPoly::zero(), |acc, (c, i, j)| &acc + &BiPoly::monomial(Monomial::new(i, j), c))
    })
}

/// `1 + Σ a_m (ξξ̄)^m` with `a_m ≥ 0`: positive on the real slice, so no poles.
fn denominator() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(0i64..3, 0..3).prop_map(|a| {
        a.iter().enumerate().fold(term(1, 0, 0), |acc, (m, &c)| &acc + &term(c, m as u32 + 1, m as u32 + 1))
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(4), denominator()).prop_map(|(n, d)| RatFun::new(n, d))
}

fn mat2() -> impl Strategy<Value = MatRF> {
    prop::collection::vec(ratfun(), 4).prop_map(|e| MatRF::from_entries(2, e))
}

fn point() -> impl Strategy<Value = Complex64> {
    (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(x, y)| Complex64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz(f in ratfun(), g in ratfun()) {
        let lhs = (&f * &g).d_xi();
        let rhs = &(&f.d_xi() * &g) + &(&f * &g.d_xi());
        prop_assert!(lhs.rf_equal(&rhs));
        let lhs = (&f * &g).d_xibar();
        let rhs = &(&f.d_xibar() * &g) + &(&f * &g.d_xibar());
        prop_assert!(lhs.rf_equal(&rhs));
    }

    #[test]
    fn mixed_derivatives_commute(f in ratfun()) {
        prop_assert!(f.d_xi().d_xibar().rf_equal(&f.d_xibar().d_xi()));
    }

    #[test]
    fn conjugation_swaps_derivatives(f in ratfun()) {
        prop_assert!(f.conj().d_xibar().rf_equal(&f.d_xi().conj()));
    }

    #[test]
    fn hermitian_conjugate_is_an_antihomomorphic_involution(a in mat2(), b in mat2()) {
        prop_assert!(herm_conj(&herm_conj(&a)).equals(&a));
        prop_assert!(herm_conj(&(&a * &b)).equals(&(&herm_conj(&b) * &herm_conj(&a))));
    }

    #[test]
    fn rf_equal_is_an_equivalence(f in ratfun(), g in denominator(), h in denominator()) {
        let (n, d) = (f.num().clone(), f.den().clone());
        let fg = RatFun::new(&n * &g, &d * &g);
        let fgh = RatFun::new(&(&n * &g) * &h, &(&d * &g) * &h);
        prop_assert!(f.rf_equal(&f));
        prop_assert_eq!(f.rf_equal(&fg), fg.rf_equal(&f));
        prop_assert!(f.rf_equal(&fg) && fg.rf_equal(&fgh) && f.rf_equal(&fgh));
        let shifted = &f + &RatFun::one();
        prop_assert!(!f.rf_equal(&shifted));
    }

    #[test]
    fn matrix_derivative_is_entrywise(a in mat2()) {
        let d = a.d_xi();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!(d.entry(i, j).rf_equal(&a.entry(i, j).d_xi()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// `∂_ξ = (∂_x − i∂_y)/2` by central differences, error O(h²).
    #[test]
    fn derivative_matches_finite_differences(f in ratfun(), pts in prop::collection::vec(point(), 5)) {
        let exact = f.d_xi();
        for p in pts {
            let want = exact.eval(p);
            let mut errs = Vec::new();
            for h in [1e-3, 1e-4] {
                let dx = (f.eval(p + Complex64::new(h, 0.0)) - f.eval(p - Complex64::new(h, 0.0))) / (2.0 * h);
                let dy = (f.eval(p + Complex64::new(0.0, h)) - f.eval(p - Complex64::new(0.0, h))) / (2.0 * h);
                let fd = (dx - Complex64::i() * dy) * 0.5;
                errs.push((fd - want).norm());
            }
            let scale = 1.0 + want.norm() + f.eval(p).norm();
            prop_assert!(errs[0] < 1e-4 * scale, "h=1e-3 error {}", errs[0]);
            prop_assert!(errs[1] < 1e-6 * scale, "h=1e-4 error {}", errs[1]);
        }
    }
}
