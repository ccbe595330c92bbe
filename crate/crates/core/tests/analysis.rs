use proptest::prelude::*;
use thermistor::analysis::{h1_error, h1_norm, h1_norm_postprocessed, i2h_postprocess, l2_error};
use thermistor::fem::FeSpace;
use thermistor::schemes::SchemeConfig;
use thermistor::{build_mesh, macroelements, run_simulation, ElemKind, ErrorReport, ManufacturedProblem, SchemeKind, TauRule};

fn random_vector(n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

#[test]
fn i2h_is_h1_stable() {
    for kind in [ElemKind::Quad, ElemKind::Triangle] {
        for m in [8, 16, 32] {
            let sp = FeSpace::new(build_mesh(m, kind).unwrap());
            let blocks = macroelements(sp.mesh()).unwrap();
            let mut worst: f64 = 0.0;
            for seed in 0..100 {
                let v = random_vector(sp.ndofs(), seed);
                let field = i2h_postprocess(&sp, &blocks, &v);
                worst = worst.max(h1_norm_postprocessed(&sp, &field) / h1_norm(&sp, &v));
            }
            assert!(worst <= 10.0, "{kind:?} M={m}: ratio {worst}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h1_error_dominates_l2_error(seed in any::<u64>(), quad in any::<bool>(), a in -3.0f64..3.0) {
        let kind = if quad { ElemKind::Quad } else { ElemKind::Triangle };
        let sp = FeSpace::new(build_mesh(6, kind).unwrap());
        let v = random_vector(sp.ndofs(), seed);
        let f = move |x: f64, y: f64| (a * x).sin() + y * y;
        let g = move |x: f64, y: f64| [a * (a * x).cos(), 2.0 * y];
        let l2 = l2_error(&sp, &v, f);
        let h1 = h1_error(&sp, &v, f, g);
        prop_assert!(l2 > 0.0);
        prop_assert!(h1 >= l2);
    }

    #[test]
    fn error_vanishes_only_for_matching_fields(node in 0usize..25, delta in 1e-6f64..1.0, quad in any::<bool>()) {
        let kind = if quad { ElemKind::Quad } else { ElemKind::Triangle };
        let sp = FeSpace::new(build_mesh(4, kind).unwrap());
        let mut d = vec![0.0; sp.ndofs()];
        prop_assert_eq!(h1_error(&sp, &d, |_, _| 0.0, |_, _| [0.0, 0.0]), 0.0);
        d[node] = delta;
        prop_assert!(l2_error(&sp, &d, |_, _| 0.0) > 0.0);
    }
}

#[test]
fn report_fields_are_consistent() {
    for scheme in [SchemeKind::Bdf2, SchemeKind::Gao, SchemeKind::Ext1, SchemeKind::Euler] {
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let cfg = SchemeConfig::new(scheme, 8, kind, TauRule::SqrtH);
            let sim = run_simulation(&cfg, &ManufacturedProblem).unwrap();
            let r = ErrorReport::from_simulation(&sim, &ManufacturedProblem);
            assert!(r.numeric_fields().iter().all(|v| *v >= 0.0 && v.is_finite()));
            let c2 = r.u.l2 * r.u.l2 + r.phi.l2 * r.phi.l2;
            assert!((r.combined_l2 * r.combined_l2 - c2).abs() <= 1e-12 * c2);
            assert!(r.u.h1 >= r.u.l2 && r.phi.h1 >= r.phi.l2);
            assert_eq!((r.m, r.steps), (8, 3));
        }
    }
}
