//! Check campaigns behind each subcommand.

use qlens_core::cover::run_cover_suite;
use qlens_core::galois::{
    canonical_map, check_trpp, entwining_check, kernel_factorization_check,
    kernel_intersection_report, translation_tau,
};
use qlens_core::lens::{
    derived_relations, failing, heegaard_and_fbeta, lens_relations, GaugeCandidate, LensAlgebra,
};
use qlens_core::ncalg::{AlgebraKind, Gen, PowerIdentity, PresentedAlgebra, StarAlgebra};
use qlens_core::reps::{
    all_families, independence_gram, relation_residual, RepError, RepKind, RepSpec,
};
use qlens_core::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Outcome, Record};

pub type Job = Box<dyn FnOnce() -> Vec<Record> + Send>;

#[derive(Clone, Debug)]
pub struct RepsParams {
    pub dim: usize,
    pub p: f64,
    pub q: f64,
    pub theta: f64,
    pub betas: Vec<u32>,
    pub tol: f64,
}

impl Default for RepsParams {
    fn default() -> Self {
        let (p, q, theta) = qlens_core::reps::default_params();
        RepsParams {
            dim: 64,
            p,
            q,
            theta,
            betas: vec![0, 1, 2, 3],
            tol: 1e-10,
        }
    }
}

/// Runs jobs in parallel; output order is the job order.
pub fn run_jobs(jobs: Vec<Job>) -> Vec<Record> {
    let batches: Vec<Vec<Record>> = jobs.into_par_iter().map(|job| job()).collect();
    batches.into_iter().flatten().collect()
}

fn job(f: impl FnOnce() -> Record + Send + 'static) -> Job {
    Box::new(move || vec![f()])
}

/// Per-check generator seeded from the campaign seed and the check id.
fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn kind_name(k: AlgebraKind) -> &'static str {
    match k {
        AlgebraKind::DiscP => "disc_p",
        AlgebraKind::DiscQ => "disc_q",
        AlgebraKind::Torus => "torus",
        AlgebraKind::SolidTorusP => "solid_torus_p",
        AlgebraKind::SolidTorusQ => "solid_torus_q",
    }
}

const ALL_KINDS: [AlgebraKind; 5] = [
    AlgebraKind::DiscP,
    AlgebraKind::DiscQ,
    AlgebraKind::Torus,
    AlgebraKind::SolidTorusP,
    AlgebraKind::SolidTorusQ,
];

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(None)
    } else {
        Err(witness())
    }
}

pub fn identities(n_max: u32, seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for kind in [AlgebraKind::DiscP, AlgebraKind::DiscQ] {
        let name = kind_name(kind);
        jobs.push(job(move || {
            Record::run(format!("identities/power/{name}"), "power-identity", json!({ "n_max": n_max }), || {
                let alg = PresentedAlgebra::new(kind);
                for n in 0..=n_max {
                    for which in [PowerIdentity::StarFirst, PowerIdentity::StarLast] {
                        let c = alg.verify_power_identity(n, which);
                        if !c.holds {
                            return Err(format!("n={n} {which:?}: {} != {}", c.lhs, c.rhs));
                        }
                    }
                }
                Ok(None)
            })
        }));
        jobs.push(job(move || {
            let params = json!({ "n_max": n_max, "m_range": 6 });
            Record::run(format!("identities/commutation/{name}"), "commutation-identity", params, || {
                let alg = PresentedAlgebra::new(kind);
                for n in 0..=n_max {
                    for m in -6..=6 {
                        let c = alg.verify_commutation_identity(n, m);
                        if !c.holds {
                            return Err(format!("n={n} m={m}: {} != {}", c.lhs, c.rhs));
                        }
                    }
                }
                Ok(None)
            })
        }));
        jobs.push(job(move || {
            let r = n_max as i32;
            Record::run(format!("identities/q-polynomial/{name}"), "q-polynomial-degree", json!({ "range": r }), || {
                let alg = PresentedAlgebra::new(kind);
                for n in -r..=r {
                    for m in -r..=r {
                        let q = alg.compute_q(n, m).map_err(|e| e.to_string())?;
                        let deg = q.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as i32;
                        if !q[0].is_zero() || deg > n.abs().min(m.abs()) {
                            return Err(format!("Q({n},{m}) has degree {deg}"));
                        }
                    }
                }
                Ok(None)
            })
        }));
    }
    for kind in ALL_KINDS {
        let name = kind_name(kind);
        jobs.push(job(move || {
            Record::run(format!("identities/confluence/{name}"), "critical-pairs", json!({}), || {
                let alg = PresentedAlgebra::new(kind);
                for cp in alg.critical_pairs() {
                    if !cp.joins {
                        return Err(format!("{:?}: {} vs {}", cp.word, cp.left, cp.right));
                    }
                }
                Ok(None)
            })
        }));
        jobs.push(job(move || {
            let id = format!("identities/multiplicativity/{name}");
            let mut rng = rng_for(seed, &id);
            Record::run(id, "normal-form-multiplicativity", json!({ "words": 200, "max_len": 8 }), || {
                multiplicativity_campaign(kind, &mut rng, 200, 8)
            })
        }));
    }
    jobs
}

/// `nf(w1) nf(w2) = nf(w1 w2)` on random words of total length `≤ max_len`.
pub fn multiplicativity_campaign(kind: AlgebraKind, rng: &mut ChaCha8Rng, words: usize, max_len: usize) -> Outcome {
    let alg = PresentedAlgebra::new(kind);
    let gens = kind.generators();
    for _ in 0..words {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<Gen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        let cut = rng.gen_range(0..=len);
        let nf = |w: &[Gen]| alg.normal_form(w).map_err(|e| e.to_string());
        let lhs = alg.mul(&nf(&w[..cut])?, &nf(&w[cut..])?);
        if lhs != nf(&w)? {
            return Err(format!("{:?} split at {cut}", w));
        }
    }
    Ok(None)
}

pub fn lens(betas: &[u32], degree: u32, seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &beta in betas {
        let b = beta as i32;
        jobs.push(job(move || {
            Record::run(format!("lens/relations/beta={beta}"), "lens-relations", json!({ "beta": beta }), || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                let g = l.generators();
                let mut bad = failing(&lens_relations(&l, &g, beta, &Scalar::u()));
                bad.extend(failing(&derived_relations(&l, &g, beta, &Scalar::u(), 4)));
                ensure(bad.is_empty(), || bad.join("; "))
            })
        }));
        jobs.push(job(move || {
            let id = format!("lens/basis/beta={beta}");
            let mut rng = rng_for(seed, &id);
            let params = json!({ "beta": beta, "degree": degree, "products": 200 });
            Record::run(id, "basis-closure", params, || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                l.basis_closure_check(&mut rng, degree, 200).map(|_| None)
            })
        }));
        jobs.push(job(move || {
            let params = json!({ "beta": beta, "degree": degree });
            Record::run(format!("lens/generators/beta={beta}"), "generator-expressions", params, || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                let bad = l.generator_expressibility(degree);
                ensure(bad.is_empty(), || format!("{:?}", bad))
            })
        }));
        jobs.push(job(move || {
            let params = json!({ "beta": beta, "degree": degree });
            Record::run(format!("lens/gluing-maps/beta={beta}"), "gluing-maps", params, || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                match l.chi().verify_multiplicative(degree) {
                    None => Ok(None),
                    Some(w) => Err(format!("{w:?}")),
                }
            })
        }));
        jobs.push(job(move || {
            Record::run(format!("lens/heegaard/beta={beta}"), "heegaard-f-beta", json!({ "beta": beta }), || {
                if beta == 0 {
                    return Ok(Some("f_beta needs beta >= 1".into()));
                }
                let r = heegaard_and_fbeta(beta);
                ensure(r.ok(), || format!("{r:?}"))
            })
        }));
    }
    jobs.push(job(move || {
        let id = "lens/gauge".to_string();
        let mut rng = rng_for(seed, &id);
        Record::run(id, "gauge-classification", json!({ "perturbations": 20, "window": 4 }), || {
            gauge_campaign(&mut rng, 20, 4)
        })
    }));
    jobs
}

/// Family members for `β ∈ 0..=3` accepted, `count` random perturbations rejected.
pub fn gauge_campaign(rng: &mut ChaCha8Rng, count: usize, window: i32) -> Outcome {
    for beta in 0..=3 {
        if let Err(w) = GaugeCandidate::family(beta).validate(window) {
            return Err(format!("family beta={beta} rejected: {}", w.reason));
        }
    }
    for i in 0..count {
        let g = GaugeCandidate::random_perturbation(rng, i as i32 % 4);
        if g.validate(window).is_ok() {
            return Err(format!("perturbation accepted: {g:?}"));
        }
    }
    Ok(None)
}

pub fn galois(betas: &[u32], n_max: u32, degree: u32, seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    let n = n_max as i32;
    for &beta in betas {
        let b = beta as i32;
        jobs.push(job(move || {
            Record::run(format!("galois/translation/beta={beta}"), "translation-map", json!({ "beta": beta, "n_max": n_max }), || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                for k in -n..=n {
                    let c = canonical_map(&l, &translation_tau(&l, k));
                    if c.len() != 1 || c.get(&k) != Some(&l.one()) {
                        return Err(format!("can(tau({k})) = {c:?}"));
                    }
                }
                Ok(None)
            })
        }));
        jobs.push(job(move || {
            Record::run(format!("galois/trpp/beta={beta}"), "translation-properties", json!({ "beta": beta, "degree": degree }), || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                for idx in l.basis_enumerate(degree) {
                    if !check_trpp(&l, &l.basis_vector(idx)).map_err(|e| e.to_string())? {
                        return Err(format!("{idx:?}"));
                    }
                }
                Ok(None)
            })
        }));
        jobs.push(job(move || {
            Record::run(
                format!("galois/kernel-intersection/beta={beta}"),
                "kernel-intersection",
                json!({ "beta": beta, "degree": degree }),
                || {
                    let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                    for d in 1..=degree {
                        let r = kernel_intersection_report(&l, d, &[]);
                        if !r.injective() {
                            return Err(format!("degree {d}: rank {} of {}", r.rank, r.tensors));
                        }
                    }
                    Ok(None)
                },
            )
        }));
        jobs.push(job(move || {
            let id = format!("galois/entwining/beta={beta}");
            let mut rng = rng_for(seed, &id);
            Record::run(id, "entwining", json!({ "beta": beta, "samples": 8, "window": 2 }), || {
                let l = LensAlgebra::new(b).map_err(|e| e.to_string())?;
                let g = l.generators();
                let mut samples = vec![g.xi, g.z, g.a, g.b];
                for _ in 0..4 {
                    samples.push(l.random_element(&mut rng, 3, 3));
                }
                let r = entwining_check(&l, &samples, 2);
                ensure(r.ok(), || format!("{r:?}"))
            })
        }));
    }
    jobs.push(job(move || {
        Record::run("galois/kernel-factorization", "kernel-factorization", json!({ "degree": degree }), || {
            let r = kernel_factorization_check(degree);
            ensure(r.ok(), || format!("{r:?}"))
        })
    }));
    jobs
}

pub fn validate_reps(p: &RepsParams) -> Result<(), RepError> {
    for &beta in &p.betas {
        for s in all_families(beta, p.dim, p.p, p.q, p.theta) {
            s.validate()?;
        }
    }
    Ok(())
}

pub fn reps(params: &RepsParams) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &beta in &params.betas {
        for spec in all_families(beta, params.dim, params.p, params.q, params.theta) {
            let tol = params.tol;
            jobs.push(job(move || {
                let id = format!("reps/{}/beta={beta}", spec.name());
                let json_params = json!({
                    "family": spec.kind, "beta": beta, "dim": spec.dim,
                    "p": spec.p, "q": spec.q, "theta": spec.theta, "tol": tol,
                });
                Record::run(id, "representation-relations", json_params, || {
                    let r = relation_residual(&spec).map_err(|e| e.to_string())?;
                    if r.adjoint > tol {
                        return Err(format!("adjoint pairing: residual {:e}", r.adjoint));
                    }
                    let worst = r.relations.iter().chain(&r.reduced).max_by(|a, b| a.1.total_cmp(&b.1));
                    match worst {
                        Some((tag, v)) if *v > tol => Err(format!("{tag}: residual {v:e}")),
                        _ => Ok(None),
                    }
                })
            }));
        }
        let (p, q, theta, dim) = (params.p, params.q, params.theta, params.dim);
        jobs.push(job(move || {
            let json_params = json!({ "beta": beta, "degree": 3, "dim": dim, "p": p, "q": q, "theta": theta });
            Record::run(format!("reps/gram/beta={beta}"), "faithfulness-gram", json_params, || {
                let specs = [
                    RepSpec::new(RepKind::LensPrime { mu: 0.3 }, p, q, theta, beta, dim),
                    RepSpec::new(RepKind::LensDoublePrime { mu: 0.7 }, p, q, theta, beta, dim),
                ];
                let g = independence_gram(&specs, 3).map_err(|e| e.to_string())?;
                ensure(g.full_rank(), || {
                    format!("rank {} of {}, null combination {:?}", g.rank, g.monomials, g.null_combination)
                })
            })
        }));
    }
    jobs
}

pub fn cover(trials: usize, seed: u64) -> Vec<Job> {
    if trials == 0 {
        return vec![job(move || {
            Record::run("cover", "covers-and-gluing", json!({ "trials": 0 }), || {
                Ok(Some("empty campaign".into()))
            })
        })];
    }
    vec![Box::new(move || {
        let start = std::time::Instant::now();
        let suite = run_cover_suite(trials, seed);
        let per = start.elapsed().as_secs_f64() * 1e3 / suite.checks.len().max(1) as f64;
        // one suite run, reported per check
        suite
            .checks
            .iter()
            .map(|c| {
                let mut r = Record::run(format!("cover/{}", c.name.replace(' ', "-")), "covers-and-gluing", json!({ "trials": trials, "instances": c.instances }), || {
                    match &c.failure {
                        Some(w) => Err(w.clone()),
                        None if c.instances == 0 => Ok(Some("no instances".into())),
                        None => Ok(None),
                    }
                });
                r.wall_time_ms = per;
                r
            })
            .collect()
    })]
}
