use num_complex::Complex64;
use proptest::prelude::*;
use qlens_core::reps::*;

const TOL: f64 = 1e-10;

fn params() -> (f64, f64, f64) {
    default_params()
}

fn spec(kind: RepKind, beta: u32, dim: usize) -> RepSpec {
    let (p, q, th) = params();
    RepSpec::new(kind, p, q, th, beta, dim)
}

#[test]
fn all_families_satisfy_relations() {
    let (p, q, th) = params();
    for beta in 0..=3 {
        for s in all_families(beta, 64, p, q, th) {
            let r = relation_residual(&s).unwrap();
            assert!(r.max_residual() <= TOL, "{} beta {beta}: {r:?}", r.family);
        }
    }
}

#[test]
fn documented_actions() {
    let (p, _, _) = params();
    let dpp = build_rep(&spec(RepKind::LensDoublePrime { mu: 0.2 }, 2, 16)).unwrap();
    for n in 0..16 {
        assert!((dpp.get("xi")[(n, n)] - Complex64::new(p.powi(n as i32), 0.0)).norm() < 1e-15);
    }
    let dp = build_rep(&spec(RepKind::LensPrime { mu: 0.2 }, 2, 16)).unwrap();
    assert!(dp.get("z*").column(0).iter().all(|v| v.norm() == 0.0));
    let t = build_rep(&spec(
        RepKind::TorusRational {
            m: 1,
            n: 3,
            alpha: 0.5,
            beta_angle: 0.8,
        },
        0,
        3,
    ))
    .unwrap();
    let v = t.get("V");
    let v3 = v * v * v;
    let expect = nalgebra::DMatrix::<Complex64>::identity(3, 3) * Complex64::from_polar(1.0, 0.8);
    assert!((v3 - expect).norm() < 1e-14);
}

#[test]
fn unitary_generator_for_charge_zero() {
    for kind in [
        RepKind::LensZeroIrrational { mu: 0.4 },
        RepKind::LensZeroRational {
            m: 1,
            n: 4,
            mu: 0.4,
            nu: 1.0,
        },
    ] {
        let ops = build_rep(&spec(kind, 0, 32)).unwrap();
        let a = ops.get("a");
        let d = a.adjoint() * a - nalgebra::DMatrix::<Complex64>::identity(ops.dim(), ops.dim());
        assert!(interior_norm(&d, &ops.interior) <= 1e-12);
    }
}

#[test]
fn reduced_relations_are_checked() {
    let r = relation_residual(&spec(RepKind::LensPrime { mu: 0.1 }, 2, 32)).unwrap();
    let tags: Vec<&str> = r.reduced.iter().map(|(t, _)| t.as_str()).collect();
    assert!(tags.contains(&"xi = 0"));
    assert!(tags.contains(&"b = z^beta a*"));
    let r = relation_residual(&spec(RepKind::LensDoublePrime { mu: 0.1 }, 2, 32)).unwrap();
    assert!(r.reduced.iter().any(|(t, _)| t == "a = b* z^beta"));
}

#[test]
fn perturbed_operator_is_detected() {
    let mut ops = build_rep(&spec(RepKind::LensPrime { mu: 0.3 }, 1, 32)).unwrap();
    for (name, m) in ops.generators.iter_mut() {
        if *name == "a" {
            *m *= Complex64::from_polar(1.0, 0.0);
            m[(3, 3)] *= Complex64::from_polar(1.0, 0.05);
        }
    }
    let r = operator_residual(&ops);
    assert!(r.max_residual() > 1e-3);
}

#[test]
fn truncation_growth_does_not_increase_residuals() {
    let (p, q, th) = params();
    for beta in 0..=3 {
        let small = all_families(beta, 32, p, q, th);
        let large = all_families(beta, 64, p, q, th);
        for (s, l) in small.iter().zip(&large) {
            let rs = relation_residual(s).unwrap().max_residual();
            let rl = relation_residual(l).unwrap().max_residual();
            // rounding noise only
            assert!(rl <= rs.max(1e-14) * 4.0, "{} beta {beta}: {rs:e} -> {rl:e}", s.name());
        }
    }
}

#[test]
fn invalid_parameters_rejected() {
    let (_, q, th) = params();
    let bad = RepSpec::new(RepKind::DiscInf, 1.5, q, th, 0, 8);
    assert!(matches!(build_rep(&bad), Err(RepError::Domain(_))));
    let bad = spec(
        RepKind::TorusRational {
            m: 2,
            n: 4,
            alpha: 0.0,
            beta_angle: 0.0,
        },
        0,
        4,
    );
    assert!(build_rep(&bad).is_err());
    assert!(build_rep(&spec(RepKind::LensPrime { mu: 0.0 }, 3, 4)).is_err());
}

#[test]
fn gram_independence() {
    let disc = independence_gram(&[spec(RepKind::DiscInf, 0, 24)], 3).unwrap();
    assert!(disc.full_rank());
    assert_eq!(disc.monomials, 10);
    for beta in 0..=3 {
        let g = independence_gram(
            &[
                spec(RepKind::LensPrime { mu: 0.3 }, beta, 24),
                spec(RepKind::LensDoublePrime { mu: 0.7 }, beta, 24),
            ],
            3,
        )
        .unwrap();
        assert!(g.full_rank(), "beta {beta}: {g:?}");
        assert_eq!(g.monomials, 35);
    }
    let ch = independence_gram(&[spec(RepKind::DiscChar { phi: 0.3 }, 0, 1)], 2).unwrap();
    assert_eq!(ch.rank, 1);
    assert!(ch.null_combination.is_some());
}

#[test]
fn single_piece_is_not_faithful() {
    // ϱ' kills ξ, so the first basis family collapses
    let g = independence_gram(&[spec(RepKind::LensPrime { mu: 0.3 }, 1, 24)], 2).unwrap();
    assert!(!g.full_rank());
    assert!(independence_gram(
        &[spec(RepKind::DiscInf, 0, 24), spec(RepKind::LensPrime { mu: 0.0 }, 0, 24)],
        2
    )
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residuals_small_for_random_parameters(
        p in 0.05f64..0.95,
        q in 0.05f64..0.95,
        theta in 0.0f64..std::f64::consts::TAU,
        mu in 0.0f64..std::f64::consts::TAU,
        beta in 0u32..=3,
    ) {
        for kind in [
            RepKind::LensPrime { mu },
            RepKind::LensDoublePrime { mu },
            RepKind::LensZeroIrrational { mu },
            RepKind::SolidTorus { alpha: mu },
        ] {
            let r = relation_residual(&RepSpec::new(kind, p, q, theta, beta, 40)).unwrap();
            prop_assert!(r.max_residual() <= 1e-9, "{:?}", r);
        }
    }
}
