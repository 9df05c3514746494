//! Acceptance criteria, one PASS/FAIL line each with wall time.

use std::io::Write;
use std::time::{Duration, Instant};

use qlens_core::cover::run_cover_suite;
use qlens_core::galois::{canonical_map, check_trpp, kernel_intersection_check, translation_tau};
use qlens_core::lens::{failing, heegaard_and_fbeta, lens_relations, GaugeCandidate, LensAlgebra};
use qlens_core::ncalg::{AlgebraKind, Gen, PowerIdentity, PresentedAlgebra, StarAlgebra};
use qlens_core::reps::{
    all_families, default_params, independence_gram, relation_residual, RepKind, RepSpec,
};
use qlens_core::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn lens(beta: i32) -> LensAlgebra {
    LensAlgebra::new(beta).expect("non-negative charge")
}

fn lens_relations_exact() -> Verdict {
    for beta in 0..=3u32 {
        let l = lens(beta as i32);
        let rels = lens_relations(&l, &l.generators(), beta, &Scalar::u());
        let bad = failing(&rels);
        if !bad.is_empty() {
            return Err(format!("beta {beta}: {bad:?}"));
        }
    }
    Ok("17 relations x 4 charges".into())
}

fn q_identities() -> Verdict {
    let mut cases = 0;
    for kind in [AlgebraKind::DiscP, AlgebraKind::DiscQ] {
        let alg = PresentedAlgebra::new(kind);
        for n in 0..=8 {
            for which in [PowerIdentity::StarFirst, PowerIdentity::StarLast] {
                if !alg.verify_power_identity(n, which).holds {
                    return Err(format!("{kind:?} power n={n} {which:?}"));
                }
                cases += 1;
            }
        }
        for n in 0..=6 {
            for m in -6..=6 {
                if !alg.verify_commutation_identity(n, m).holds {
                    return Err(format!("{kind:?} commutation n={n} m={m}"));
                }
                cases += 1;
            }
        }
        for n in -5..=5 {
            for m in -5..=5 {
                let q = alg.compute_q(n, m).map_err(|e| e.to_string())?;
                let deg = q.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as i32;
                if !q[0].is_zero() || deg > n.abs().min(m.abs()) {
                    return Err(format!("{kind:?} Q({n},{m}) degree {deg}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} identities"))
}

fn basis_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for beta in 0..=3 {
        cases += lens(beta)
            .basis_closure_check(&mut rng, 6, 200)
            .map_err(|e| format!("beta {beta}: {e}"))?;
    }
    Ok(format!("{cases} round trips"))
}

fn galois_structure() -> Verdict {
    for beta in 0..=3 {
        let l = lens(beta);
        for n in -4..=4 {
            let c = canonical_map(&l, &translation_tau(&l, n));
            if c.len() != 1 || c.get(&n) != Some(&l.one()) {
                return Err(format!("beta {beta}: can(tau({n})) = {c:?}"));
            }
        }
        for idx in l.basis_enumerate(4) {
            if !check_trpp(&l, &l.basis_vector(idx)).map_err(|e| e.to_string())? {
                return Err(format!("beta {beta}: trpp fails on {idx:?}"));
            }
        }
        for d in 1..=4 {
            if !kernel_intersection_check(&l, d) {
                return Err(format!("beta {beta}: kernel intersection at degree {d}"));
            }
        }
    }
    Ok("translation, trpp, kernel intersection for beta <= 3".into())
}

fn gauge_classification() -> Verdict {
    for beta in 0..=3 {
        GaugeCandidate::family(beta)
            .validate(4)
            .map_err(|w| format!("family beta={beta} rejected: {}", w.reason))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..20 {
        let g = GaugeCandidate::random_perturbation(&mut rng, i % 4);
        if g.validate(4).is_ok() {
            return Err(format!("perturbation accepted: {g:?}"));
        }
    }
    Ok("4 members accepted, 20 perturbations rejected".into())
}

fn covers_and_gluing() -> Verdict {
    let suite = run_cover_suite(100, SEED);
    let mut summary = Vec::new();
    for c in &suite.checks {
        if let Some(w) = &c.failure {
            return Err(format!("{}: {w}", c.name));
        }
        if c.instances == 0 {
            return Err(format!("{}: no instances", c.name));
        }
        summary.push(c.instances.to_string());
    }
    Ok(format!("instances {}", summary.join("/")))
}

fn representations() -> Verdict {
    let (p, q, theta) = default_params();
    let mut worst: f64 = 0.0;
    for beta in 0..=3 {
        for spec in all_families(beta, 64, p, q, theta) {
            let r = relation_residual(&spec).map_err(|e| e.to_string())?;
            let m = r.max_residual();
            if m > 1e-10 {
                return Err(format!("{} beta {beta}: residual {m:e}", spec.name()));
            }
            worst = worst.max(m);
        }
        let specs = [
            RepSpec::new(RepKind::LensPrime { mu: 0.3 }, p, q, theta, beta, 64),
            RepSpec::new(RepKind::LensDoublePrime { mu: 0.7 }, p, q, theta, beta, 64),
        ];
        let g = independence_gram(&specs, 3).map_err(|e| e.to_string())?;
        if !g.full_rank() {
            return Err(format!("beta {beta}: Gram rank {} of {}", g.rank, g.monomials));
        }
    }
    Ok(format!("max residual {worst:.1e}, Gram full rank"))
}

fn heegaard() -> Verdict {
    for beta in 2..=3 {
        let r = heegaard_and_fbeta(beta);
        if !r.ok() {
            return Err(format!("beta {beta}: {r:?}"));
        }
    }
    Ok("charge one reduces, f_2 and f_3 graded".into())
}

fn confluence() -> Verdict {
    let kinds = [
        AlgebraKind::DiscP,
        AlgebraKind::DiscQ,
        AlgebraKind::Torus,
        AlgebraKind::SolidTorusP,
        AlgebraKind::SolidTorusQ,
    ];
    let mut pairs = 0;
    for kind in kinds {
        for cp in PresentedAlgebra::new(kind).critical_pairs() {
            if !cp.joins {
                return Err(format!("{kind:?} {:?}", cp.word));
            }
            pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..200 {
        let kind = kinds[i % kinds.len()];
        let alg = PresentedAlgebra::new(kind);
        let gens = kind.generators();
        let len = rng.gen_range(0..=8);
        let w: Vec<Gen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        let cut = rng.gen_range(0..=len);
        let nf = |w: &[Gen]| alg.normal_form(w).expect("generators of the algebra");
        if alg.mul(&nf(&w[..cut]), &nf(&w[cut..])) != nf(&w) {
            return Err(format!("{kind:?} {w:?} split at {cut}"));
        }
    }
    Ok(format!("{pairs} critical pairs, 200 words"))
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, name: "lens relations", limit: secs(60), run: lens_relations_exact },
        Criterion { id: 2, name: "q-identities", limit: secs(10), run: q_identities },
        Criterion { id: 3, name: "basis round trip", limit: secs(120), run: basis_round_trip },
        Criterion { id: 4, name: "Galois structure", limit: secs(300), run: galois_structure },
        Criterion { id: 5, name: "gauge classification", limit: None, run: gauge_classification },
        Criterion { id: 6, name: "covers and gluing", limit: secs(60), run: covers_and_gluing },
        Criterion { id: 7, name: "representations", limit: secs(60), run: representations },
        Criterion { id: 8, name: "Heegaard and f_beta", limit: secs(30), run: heegaard },
        Criterion { id: 9, name: "confluence", limit: None, run: confluence },
    ]
}

#[test]
fn acceptance() {
    // Direct handle: the lines show without --nocapture.
    let mut out = std::io::stdout();
    let mut failures = Vec::new();
    let total = Instant::now();
    for c in criteria() {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (verdict, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
            }
            (v, _) => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d.clone()),
            Err(w) => ("FAIL", w.clone()),
        };
        let _ = writeln!(
            out,
            "{tag} criterion {} ({}) {:.2}s: {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if verdict.is_err() {
            failures.push(c.id);
        }
    }
    let _ = writeln!(out, "acceptance total {:.2}s", total.elapsed().as_secs_f64());
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
