use proptest::prelude::*;
use qlens_core::comodule::GradedAlgebra;
use qlens_core::lens::*;
use qlens_core::ncalg::{AlgElement, AlgebraKind, Mono, StarAlgebra};
use qlens_core::scalar::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lens(beta: i32) -> LensAlgebra {
    LensAlgebra::new(beta).unwrap()
}

fn p_elem(k: u32, m: i32, n: i32, c: Scalar) -> AlgElement {
    AlgElement::mono(AlgebraKind::SolidTorusP, Mono::new(k, m, n), c)
}

fn q_elem(k: u32, m: i32, n: i32, c: Scalar) -> AlgElement {
    AlgElement::mono(AlgebraKind::SolidTorusQ, Mono::new(k, m, n), c)
}

fn torus(m: i32, n: i32, c: Scalar) -> AlgElement {
    AlgElement::mono(AlgebraKind::Torus, Mono::new(0, m, n), c)
}

#[test]
fn chi_map_values() {
    for beta in 0..=3 {
        let chi = build_chi_maps(beta).unwrap();
        assert_eq!(chi.chi21(&q_elem(0, 1, 0, Scalar::one())), torus(1, 0, Scalar::one()));
        assert_eq!(
            chi.chi21(&q_elem(0, 0, 1, Scalar::one())),
            torus(beta, 1, Scalar::u_pow(beta))
        );
        // (1 - x x*) x h = ξ x h up to the ξ-ordering phase
        let xi_xh = p_elem(1, 1, 1, Scalar::p());
        assert!(chi.chi12(&xi_xh).is_zero());
        assert_eq!(chi.verify_multiplicative(4), None);
    }
    assert!(matches!(build_chi_maps(-2), Err(LensError::NegativeCharge(-2))));
}

#[test]
fn glued_operations() {
    let l = lens(2);
    let g = l.generators();
    let zz = l.mul(&g.z, &l.star(&g.z));
    let one_minus_xi = |kind| {
        AlgElement::one(kind).minus(&AlgElement::mono(kind, Mono::new(1, 0, 0), Scalar::one()))
    };
    assert_eq!(zz.e1, one_minus_xi(AlgebraKind::SolidTorusP));
    assert_eq!(zz.e2, one_minus_xi(AlgebraKind::SolidTorusQ));
    assert!(l.is_member(&zz));
    let bad = l.pair(AlgElement::one(AlgebraKind::SolidTorusP), AlgElement::zero(AlgebraKind::SolidTorusQ));
    assert!(matches!(bad, Err(LensError::NotMember(_))));
    assert!(l
        .pair(p_elem(2, -1, 3, Scalar::one()), AlgElement::zero(AlgebraKind::SolidTorusQ))
        .is_ok());
}

#[test]
fn generator_degrees() {
    for beta in 0..=3 {
        let l = lens(beta);
        let g = l.generators();
        for (e, d) in [(&g.xi, 0), (&g.z, 0), (&g.a, 1), (&g.b, -1)] {
            assert!(l.is_member(e));
            assert!(l.is_homogeneous(e, d));
        }
    }
    let g0 = lens(0).generators();
    assert_eq!(g0.a.e1, p_elem(0, 0, 1, Scalar::one()));
    assert_eq!(g0.b.e2, q_elem(0, 0, -1, Scalar::one()));
}

#[test]
fn lens_relations_hold() {
    for beta in 0..=3u32 {
        let l = lens(beta as i32);
        let g = l.generators();
        let rels = lens_relations(&l, &g, beta, &Scalar::u());
        assert_eq!(rels.len(), 17);
        assert!(failing(&rels).is_empty(), "beta {beta}: {:?}", failing(&rels));
        let derived = derived_relations(&l, &g, beta, &Scalar::u(), 4);
        assert!(failing(&derived).is_empty(), "beta {beta}: {:?}", failing(&derived));
    }
}

#[test]
fn wrong_phase_is_detected() {
    let l = lens(1);
    let g = l.generators();
    let f = failing(&lens_relations(&l, &g, 1, &Scalar::u_pow(3)));
    assert!(f.iter().any(|t| t.starts_with("(c) z a")));
    assert!(f.iter().any(|t| t.starts_with("(f)")));
}

#[test]
fn ba_is_z_power_componentwise() {
    let l = lens(3);
    let g = l.generators();
    let ba = l.mul(&g.b, &g.a);
    assert_eq!(ba.e1, p_elem(0, 3, 0, Scalar::one()));
    assert_eq!(ba.e2, q_elem(0, 3, 0, Scalar::one()));
    // unitary case
    let l0 = lens(0);
    let g0 = l0.generators();
    assert_eq!(l0.mul(&l0.star(&g0.a), &g0.a), l0.one());
}

#[test]
fn decomposition_examples() {
    let l = lens(1);
    let g = l.generators();
    let cz = l.basis_decompose(&g.z).unwrap();
    assert_eq!(cz.f3.len(), 1);
    assert_eq!(cz.f3.get(&(1, 0)), Some(&Scalar::one()));
    let xa = l.mul(&g.xi, &g.a);
    let c = l.basis_decompose(&xa).unwrap();
    assert!(c.f2.is_empty() && c.f3.is_empty());
    assert_eq!(c.f1.len(), 1);
    assert_eq!(c.f1.get(&Mono::new(1, 1, 1)), Some(&Scalar::u()));
}

#[test]
fn basis_round_trip() {
    for beta in 0..=3 {
        let l = lens(beta);
        for idx in l.basis_enumerate(6) {
            let v = l.basis_vector(idx);
            let c = l.basis_decompose(&v).unwrap();
            assert_eq!(c.f1.len() + c.f2.len() + c.f3.len(), 1);
            assert_eq!(l.reassemble(&c), v);
        }
    }
}

#[test]
fn basis_products_close() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for beta in 0..=3 {
        let l = lens(beta);
        let basis = l.basis_enumerate(3);
        for _ in 0..50 {
            use rand::Rng;
            let x = l.basis_vector(basis[rng.gen_range(0..basis.len())]);
            let y = l.basis_vector(basis[rng.gen_range(0..basis.len())]);
            let xy = l.mul(&x, &y);
            let c = l.basis_decompose(&xy).expect("closed under products");
            assert_eq!(l.reassemble(&c), xy);
        }
    }
}

#[test]
fn generators_express_basis() {
    for beta in 0..=3 {
        assert!(lens(beta).generator_expressibility(5).is_empty(), "beta {beta}");
    }
    let l = lens(2);
    let g = l.generators();
    assert_eq!(l.generator_expression(LensBasis::F1(Mono::new(1, 0, 0))), g.xi);
    let eta_z = l.mul(&l.eta(), &g.z);
    assert_eq!(l.basis_vector(LensBasis::F2(Mono::new(1, 1, 0))), eta_z);
}

#[test]
fn coinvariants_generated_by_xi_and_z() {
    for beta in 0..=3 {
        let l = lens(beta);
        let g = l.generators();
        let zs = l.star(&g.z);
        let eta = l.eta();
        for idx in l.basis_enumerate(6) {
            let (k, m, is_eta) = match idx {
                LensBasis::F1(mono) if mono.n == 0 => (mono.k, mono.m, false),
                LensBasis::F2(mono) if mono.n == 0 => (mono.k, mono.m, true),
                LensBasis::F3(m, 0) => (0, m, false),
                _ => continue,
            };
            let zm = if m >= 0 { l.pow(&g.z, m) } else { l.pow(&zs, -m) };
            let base = if is_eta { &eta } else { &g.xi };
            let word = l.mul(&l.pow(base, k as i32), &zm);
            let v = l.basis_vector(idx);
            let c = l.basis_decompose(&word).unwrap();
            assert_eq!(c.f1.len() + c.f2.len() + c.f3.len(), 1, "{idx:?}");
            let coeff = c.f1.values().chain(c.f2.values()).chain(c.f3.values()).next().unwrap();
            assert_eq!(word, v.scaled(coeff), "{idx:?}");
        }
    }
}

#[test]
fn heegaard_reduction_and_f_beta() {
    for beta in 1..=3 {
        let r = heegaard_and_fbeta(beta);
        assert!(r.ok(), "beta {beta}: {r:?}");
    }
    let one = lens(1);
    let g = one.generators();
    assert_eq!(one.mul(&g.a, &g.b), one.mul(&g.b, &g.a).scaled(&Scalar::u_pow(2)));
    let images = f_beta_images(&one, 2);
    assert!(one.is_homogeneous(&images.z, 0));
    assert!(one.is_homogeneous(&images.a, 2));
    assert_eq!(one.mul(&images.b, &images.a), one.pow(&images.z, 2));
}

#[test]
fn negative_charge_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for beta in 1..=3 {
        let l = lens(beta);
        let r = l.reflected();
        assert_eq!(r.beta(), -beta);
        let g = l.generators();
        assert_eq!(l.negative_charge_iso(&g.z), g.z);
        for e in [&g.xi, &g.z, &g.a, &g.b] {
            assert!(r.is_member(&l.negative_charge_iso(e)));
        }
        for _ in 0..50 {
            let x = l.random_element(&mut rng, 4, 3);
            let y = l.random_element(&mut rng, 4, 3);
            let ix = l.negative_charge_iso(&x);
            assert!(r.is_member(&ix));
            assert_eq!(r.negative_charge_iso(&ix), x);
            assert_eq!(
                l.negative_charge_iso(&l.mul(&x, &y)),
                r.mul(&ix, &l.negative_charge_iso(&y))
            );
            assert_eq!(l.negative_charge_iso(&l.star(&x)), r.star(&ix));
        }
    }
}

#[test]
fn gauge_classification() {
    for beta in 0..=3 {
        let mu = move |n: i32| Scalar::u_pow(beta * n * n);
        let nu = move |n: i32| beta * n;
        assert_eq!(validate_gauge_classification(&mu, &nu, 4), Ok(()));
    }
    let sq = |n: i32| n * n;
    assert!(validate_gauge_classification(&|n| Scalar::u_pow(n * n), &sq, 4).is_err());
    let one = |_| Scalar::one();
    assert!(validate_gauge_classification(&one, &|n| n, 4).is_err());
    let alpha = |n: i32| Scalar::u_pow(n * n + 2 * n);
    assert!(validate_gauge_classification(&alpha, &|n| n, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_elements_round_trip(seed in any::<u64>(), beta in 0i32..=3) {
        let l = lens(beta);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = l.random_element(&mut rng, 4, 4);
        let c = l.basis_decompose(&x).unwrap();
        prop_assert_eq!(l.reassemble(&c), x);
    }

    #[test]
    fn products_and_adjoints_stay_glued(seed in any::<u64>(), beta in 0i32..=3) {
        let l = lens(beta);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = l.random_element(&mut rng, 3, 3);
        let y = l.random_element(&mut rng, 3, 3);
        prop_assert!(l.is_member(&l.mul(&x, &y)));
        prop_assert!(l.is_member(&l.star(&x)));
        prop_assert_eq!(l.star(&l.star(&x)), x.clone());
        prop_assert_eq!(l.star(&l.mul(&x, &y)), l.mul(&l.star(&y), &l.star(&x)));
    }

    #[test]
    fn chi_maps_preserve_degree(k in 0u32..3, m in -4i32..=4, n in -4i32..=4, beta in 0i32..=3) {
        let chi = build_chi_maps(beta).unwrap();
        for img in [chi.chi12(&p_elem(k, m, n, Scalar::one())), chi.chi21(&q_elem(k, m, n, Scalar::one()))] {
            prop_assert!(img.terms().all(|(mono, _)| mono.n == n));
        }
    }
}

#[test]
fn randomized_gauge_perturbations_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for beta in -2..=3 {
        assert_eq!(GaugeCandidate::family(beta).validate(4), Ok(()));
    }
    for i in 0..40 {
        let g = GaugeCandidate::random_perturbation(&mut rng, i % 4);
        assert!(g.validate(4).is_err(), "{g:?} accepted");
    }
}

#[test]
fn basis_closure_campaign() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let l = lens(2);
    let cases = l.basis_closure_check(&mut rng, 4, 20).unwrap();
    assert_eq!(cases, l.basis_enumerate(4).len() + 20);
}
