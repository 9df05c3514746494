use qlens_core::cover::{exact_sequence_instance, run_cover_suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn seeded_suite_passes() {
    let suite = run_cover_suite(100, 42);
    for c in &suite.checks {
        println!("{}: {}/{}", c.name, c.passed, c.instances);
        assert!(c.ok(), "{}: {:?}", c.name, c.failure);
        assert!(c.instances > 0, "{} ran no instances", c.name);
    }
    println!("complete but not seminet: {:?}", suite.complete_not_seminet);
}

#[test]
fn exact_sequence_generator_hits_both_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut exact, mut inexact) = (0, 0);
    for _ in 0..200 {
        let (cap, sum) = exact_sequence_instance(&mut rng, 6);
        assert_eq!(cap, sum);
        if cap { exact += 1 } else { inexact += 1 }
    }
    assert!(exact > 0 && inexact > 0, "exact {exact}, inexact {inexact}");
}
