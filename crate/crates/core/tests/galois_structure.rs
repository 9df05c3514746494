use proptest::prelude::*;
use qlens_core::galois::*;
use qlens_core::lens::*;
use qlens_core::ncalg::{shared_algebra, AlgElement, AlgebraKind, Mono, StarAlgebra};
use qlens_core::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lens(beta: i32) -> LensAlgebra {
    LensAlgebra::new(beta).unwrap()
}

/// Random degree-zero element of filtration degree `≤ d`.
fn random_coinvariant(l: &LensAlgebra, rng: &mut ChaCha8Rng, d: u32) -> GluedElement {
    let basis: Vec<LensBasis> = l
        .basis_enumerate(d)
        .into_iter()
        .filter(|b| match b {
            LensBasis::F1(m) | LensBasis::F2(m) => m.n == 0,
            LensBasis::F3(_, n) => *n == 0,
        })
        .collect();
    let mut out = l.zero();
    for _ in 0..3 {
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        out = out.plus(&l.basis_vector(basis[rng.gen_range(0..basis.len())]).scaled(&c));
    }
    out
}

#[test]
fn canonical_map_on_small_tensors() {
    let l = lens(2);
    let g = l.generators();
    let c = canonical_map(&l, &PlainTensor::simple(l.one(), l.one()));
    assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(0, l.one())]);
    let c = canonical_map(&l, &PlainTensor::simple(l.one(), g.a.clone()));
    assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(1, g.a.clone())]);
}

#[test]
fn translation_map_unit_law() {
    for beta in 0..=3 {
        let l = lens(beta);
        for n in -4..=4 {
            let c = canonical_map(&l, &translation_tau(&l, n));
            assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(n, l.one())], "beta {beta} n {n}");
        }
        assert_eq!(translation_tau(&l, 0), PlainTensor::simple(l.one(), l.one()));
    }
}

#[test]
fn translation_map_at_minus_one() {
    let l = lens(1);
    let g = l.generators();
    let (as_, bs) = (l.star(&g.a), l.star(&g.b));
    let proj = l.sub(&l.one(), &l.mul(&bs, &g.b));
    let mut expected = PlainTensor::new();
    expected.push(Scalar::one(), bs.clone(), g.b.clone());
    expected.push(Scalar::one(), g.a.clone(), l.mul(&as_, &proj));
    assert_eq!(translation_tau(&l, -1), expected);
    // ξ η = 0 collapses a* a (1 - b b*) to 1 - b b*
    let t1 = translation_tau(&l, 1);
    let lhs = l.mul(&t1.terms[1].1, &t1.terms[1].2);
    assert_eq!(lhs, l.sub(&l.one(), &l.mul(&g.b, &bs)));
}

#[test]
fn translation_map_boundary_images() {
    // Both solid tori are cleft, so equality in P_i ⊗_{B_i} P_i is equality of canonical images.
    for beta in 0..=3 {
        let l = lens(beta);
        for n in -3..=3 {
            let t = translation_tau(&l, n);
            for (alg, pick) in [
                (l.p1().clone(), (|e: &GluedElement| e.e1.clone()) as fn(&GluedElement) -> AlgElement),
                (l.p2().clone(), |e: &GluedElement| e.e2.clone()),
            ] {
                let mut image = PlainTensor::new();
                for (c, a, b) in &t.terms {
                    image.push(c.clone(), pick(a), pick(b));
                }
                let one = AlgElement::one(alg.kind());
                let target = PlainTensor::simple(alg.h_pow(-n), alg.h_pow(n));
                assert_eq!(cleft_can_inverse(&one, n), target);
                assert_eq!(canonical_map(alg.as_ref(), &image), canonical_map(alg.as_ref(), &target));
            }
        }
    }
}

#[test]
fn normal_forms_of_basis_tensors() {
    for beta in 0..=3 {
        let l = lens(beta);
        let red = TensorReducer::new(&l);
        for s in red.sectors(3) {
            let mut expect = BTensor::default();
            expect.add_term(s, &Scalar::one());
            assert_eq!(red.normal_form(&red.sector_tensor(s)).unwrap(), expect, "{s:?}");
        }
    }
}

#[test]
fn mixed_kernels_vanish() {
    let l = lens(2);
    let red = TensorReducer::new(&l);
    let x = l.basis_vector(LensBasis::F1(Mono::new(1, 2, -1)));
    let y = l.basis_vector(LensBasis::F2(Mono::new(2, 0, 1)));
    assert!(red.normal_form(&PlainTensor::simple(x.clone(), y.clone())).unwrap().is_zero());
    assert!(red.normal_form(&PlainTensor::simple(y, x)).unwrap().is_zero());
}

#[test]
fn coinvariant_slide() {
    let l = lens(1);
    let red = TensorReducer::new(&l);
    let g = l.generators();
    let zx = l.mul(&g.z, &g.xi);
    let left = red.normal_form(&PlainTensor::simple(zx, g.a.clone())).unwrap();
    let right = red
        .normal_form(&PlainTensor::simple(g.z.clone(), l.mul(&g.xi, &g.a)))
        .unwrap();
    assert_eq!(left, right);
    assert!(!left.is_zero());
}

#[test]
fn trpp_on_basis_monomials() {
    for beta in 0..=3 {
        let l = lens(beta);
        for idx in l.basis_enumerate(4) {
            assert!(check_trpp(&l, &l.basis_vector(idx)).unwrap(), "beta {beta} {idx:?}");
        }
        let g = l.generators();
        for e in [l.one(), g.a.clone(), l.mul(&g.xi, &g.b)] {
            assert!(check_trpp(&l, &e).unwrap());
        }
    }
}

#[test]
fn kernel_intersection_is_trivial() {
    for beta in 0..=3 {
        let l = lens(beta);
        for d in 1..=4 {
            let r = kernel_intersection_report(&l, d, &[]);
            assert!(r.injective(), "beta {beta} d {d}: {r:?}");
        }
    }
}

#[test]
fn fabricated_common_kernel_vector_is_detected() {
    let l = lens(1);
    let x = l.basis_vector(LensBasis::F1(Mono::new(1, 0, 0)));
    let y = l.basis_vector(LensBasis::F2(Mono::new(1, 0, 0)));
    let fake = PlainTensor::simple(x, y);
    let r = kernel_intersection_report(&l, 2, &[fake]);
    assert_eq!(r.rank + 1, r.tensors);
    assert!(!r.injective());
}

#[test]
fn cleft_inverse_examples() {
    let st = shared_algebra(AlgebraKind::SolidTorusP);
    let one = AlgElement::one(AlgebraKind::SolidTorusP);
    assert_eq!(cleft_can_inverse(&one, 0), PlainTensor::simple(one.clone(), one.clone()));
    let x = st.x_pow(1);
    let t = cleft_can_inverse(&x, 2);
    assert_eq!(t.terms[0].1, st.mul(&x, &st.h_pow(-2)));
    assert_eq!(t.terms[0].2, st.h_pow(2));
    let xih = st.mul(&st.xi(), &st.h_pow(1));
    let t = cleft_can_inverse(&xih, -1);
    assert_eq!(t.terms[0].1, st.mul(&xih, &st.h_pow(1)));
    let c = canonical_map(st.as_ref(), &t);
    assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(-1, xih)]);
}

#[test]
fn cleft_inverse_round_trip() {
    for kind in [AlgebraKind::SolidTorusP, AlgebraKind::SolidTorusQ] {
        let st = shared_algebra(kind);
        for m in st.basis_enumerate(6) {
            for n in -3..=3 {
                let e = st.elem(m);
                let c = canonical_map(st.as_ref(), &cleft_can_inverse(&e, n));
                assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(n, e)]);
            }
        }
    }
}

#[test]
fn entwining_bow_ties() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let l = lens(2);
    let g = l.generators();
    let mut samples = vec![g.xi.clone(), g.z.clone(), g.a.clone(), g.b.clone()];
    for _ in 0..4 {
        samples.push(l.random_element(&mut rng, 3, 3));
    }
    let r = entwining_check(&l, &samples, 2);
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.cases, 5 * samples.len());
}

#[test]
fn kernel_factorization() {
    for d in 1..=5 {
        let r = kernel_factorization_check(d);
        assert!(r.ok(), "d {d}: {r:?}");
    }
    let st = shared_algebra(AlgebraKind::SolidTorusP);
    let xih = st.elem(Mono::new(1, 0, 1));
    assert_eq!(st.mul(&st.xi(), &st.h_pow(1)), xih);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_respects_coinvariant_slides(seed in any::<u64>(), beta in 0i32..=3) {
        let l = lens(beta);
        let red = TensorReducer::new(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = l.random_element(&mut rng, 3, 2);
        let q = l.random_element(&mut rng, 3, 2);
        let b = random_coinvariant(&l, &mut rng, 3);
        let left = red.normal_form(&PlainTensor::simple(l.mul(&p, &b), q.clone())).unwrap();
        let right = red.normal_form(&PlainTensor::simple(p, l.mul(&b, &q))).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_preserves_boundary_images(seed in any::<u64>(), beta in 0i32..=3) {
        let l = lens(beta);
        let red = TensorReducer::new(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = PlainTensor::simple(l.random_element(&mut rng, 3, 2), l.random_element(&mut rng, 3, 2));
        let nf = red.normal_form(&t).unwrap();
        let mut back = PlainTensor::new();
        for (s, c) in &nf.coords {
            back.extend(&red.sector_tensor(*s), c);
        }
        prop_assert_eq!(component_images(&l, &t), component_images(&l, &back));
        prop_assert_eq!(canonical_map(&l, &t), canonical_map(&l, &back));
    }

    #[test]
    fn trpp_on_random_elements(seed in any::<u64>(), beta in 0i32..=3) {
        let l = lens(beta);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = l.random_element(&mut rng, 3, 3);
        prop_assert!(check_trpp(&l, &e).unwrap());
    }
}
