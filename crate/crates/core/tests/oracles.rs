//! Fast counting paths checked against brute-force reverse enumeration.

use rand::Rng;
use randreg::path_index::{b_loops, b_triples, PathIndex};
use randreg::switching::{apply, count_b_bruteforce, count_f_by_class, sample_candidate, space_size, validate};
use randreg::{stream_rng, Class, Pairing, Phase, SwitchKind};

const ALL: u128 = u128::MAX;

fn random_where(n: usize, d: usize, seed: u64, keep: impl Fn(&Pairing) -> bool) -> Pairing {
    let mut rng = stream_rng(seed, 0);
    loop {
        let p = Pairing::random(n, d, &mut rng).unwrap();
        if keep(&p) {
            return p;
        }
    }
}

fn phase3_state(p: &Pairing) -> bool {
    let s = p.summary();
    s.loops == 0 && s.triples == 0 && !s.forbidden
}

#[test]
fn class_a_index_matches_bruteforce() {
    for (n, d) in [(8, 3), (10, 3), (12, 3), (10, 4), (12, 4), (12, 5), (14, 5)] {
        for seed in 0..25 {
            let p = random_where(n, d, seed, phase3_state);
            let idx = PathIndex::init(&p);
            let brute = count_b_bruteforce(&p, Phase::Doubles, Class::A, ALL).unwrap();
            assert_eq!(idx.b_class_a(&p).unwrap(), brute, "n={n} d={d} seed={seed}");
        }
    }
}

#[test]
fn class_b_anchored_matches_bruteforce() {
    for (n, d) in [(8, 3), (10, 3), (12, 3), (10, 4), (12, 4), (12, 5), (14, 5)] {
        let mut nonzero = 0;
        for seed in 0..25 {
            let p = random_where(n, d, 100 + seed, |p| phase3_state(p) && p.summary().doubles > 0);
            let idx = PathIndex::init(&p);
            let brute = count_b_bruteforce(&p, Phase::Doubles, Class::B, ALL).unwrap();
            nonzero += (brute > 0) as u32;
            assert_eq!(idx.b_class_b(&p).unwrap(), brute, "n={n} d={d} seed={seed}");
        }
        assert!(nonzero > 0, "no class B pre-images at n={n} d={d}");
    }
}

#[test]
fn loop_phase_anchored_matches_bruteforce() {
    for (n, d) in [(8, 3), (10, 3), (10, 4), (12, 4), (11, 2), (12, 2)] {
        for seed in 0..30 {
            let p = random_where(n, d, 200 + seed, |p| !p.summary().forbidden);
            let brute = count_b_bruteforce(&p, Phase::Loops, Class::A, ALL).unwrap();
            assert_eq!(b_loops(&p), brute, "n={n} d={d} seed={seed}");
        }
    }
}

#[test]
fn triple_phase_anchored_matches_bruteforce() {
    for (n, d) in [(9, 4), (10, 3), (12, 3), (10, 4), (12, 5)] {
        for seed in 0..20 {
            let p = random_where(n, d, 300 + seed, |p| p.summary().loops == 0 && !p.summary().forbidden);
            let brute = count_b_bruteforce(&p, Phase::Triples, Class::A, ALL).unwrap();
            assert_eq!(b_triples(&p), brute, "n={n} d={d} seed={seed}");
        }
    }
}

// Apply random valid d-switchings (type I and II) and compare the updated
// index with one rebuilt from scratch after every step.
#[test]
fn index_updates_commute_with_rebuild() {
    for (n, d, seed) in [(12, 3, 1u64), (16, 4, 2), (20, 5, 3), (30, 6, 4), (40, 4, 5)] {
        let mut rng = stream_rng(seed, 99);
        let mut p = random_where(n, d, seed, |p| phase3_state(p) && p.summary().doubles >= 1);
        let mut idx = PathIndex::init(&p);
        let mut steps = 0;
        for _ in 0..20_000 {
            if steps >= 60 {
                break;
            }
            let kind = if d >= 4 && rng.random_bool(0.5) { SwitchKind::TypeII } else { SwitchKind::TypeI };
            if p.summary().doubles == 0 {
                break;
            }
            let c = sample_candidate(&p, kind, &mut rng).unwrap();
            if !validate(&p, &c).is_valid() {
                continue;
            }
            let (_, delta) = apply(&mut p, &c).unwrap();
            idx.apply_delta(&delta.removed_vertices(d), &delta.added_vertices(d), p.version());
            assert!(idx.audit(&p), "index drifted at n={n} d={d} step {steps}");
            assert_eq!(idx.point_two_paths(), n as u128 * (d * (d - 1)) as u128);
            steps += 1;
        }
        assert!(steps > 0);
    }
}

// Inverse switchings recreate doubles; the index must follow both directions.
#[test]
fn index_updates_survive_inverse_switchings() {
    let (n, d) = (14, 4);
    let mut rng = stream_rng(77, 0);
    let mut p = random_where(n, d, 77, |p| phase3_state(p) && p.summary().doubles >= 2);
    let mut idx = PathIndex::init(&p);
    let mut done = 0;
    while done < 40 {
        let c = sample_candidate(&p, SwitchKind::TypeI, &mut rng);
        let Ok(c) = c else { break };
        if !validate(&p, &c).is_valid() {
            continue;
        }
        let delta = c.delta();
        p.rewire(&delta.removed, &delta.added).unwrap();
        idx.apply_delta(&delta.removed_vertices(d), &delta.added_vertices(d), p.version());
        if done % 2 == 1 {
            let inv = delta.inverse();
            p.rewire(&inv.removed, &inv.added).unwrap();
            idx.apply_delta(&inv.removed_vertices(d), &inv.added_vertices(d), p.version());
        }
        assert!(idx.audit(&p));
        done += 1;
    }
}

// Sampling uniformly from the forward space and validating gives acceptance
// f / space; compare with the exact brute-force f.
#[test]
fn sampled_acceptance_matches_forward_count() {
    let p = random_where(12, 4, 5, |p| phase3_state(p) && p.summary().doubles >= 1);
    for kind in [SwitchKind::TypeI, SwitchKind::TypeII] {
        let (a, b) = count_f_by_class(&p, kind, ALL).unwrap();
        let space = space_size(&p, kind) as f64;
        let expect = (a + b) as f64 / space;
        let mut rng = stream_rng(6, kind as u64);
        let trials = 200_000;
        let hits = (0..trials)
            .filter(|_| validate(&p, &sample_candidate(&p, kind, &mut rng).unwrap()).is_valid())
            .count() as f64;
        let sd = (expect * (1.0 - expect) / trials as f64).sqrt();
        assert!((hits / trials as f64 - expect).abs() <= 4.0 * sd + 1e-12, "{kind:?}: {} vs {expect}", hits / trials as f64);
    }
}

// The image of a valid switching counts it among its pre-images.
#[test]
fn forward_and_backward_totals_agree() {
    let mut rng = stream_rng(8, 0);
    for seed in 0..30 {
        let p0 = random_where(12, 4, 400 + seed, |p| phase3_state(p) && p.summary().doubles >= 1);
        for kind in [SwitchKind::TypeI, SwitchKind::TypeII] {
            for _ in 0..2000 {
                let c = sample_candidate(&p0, kind, &mut rng).unwrap();
                if let randreg::Outcome::Valid { class, .. } = validate(&p0, &c) {
                    let mut p = p0.clone();
                    apply(&mut p, &c).unwrap();
                    assert!(count_b_bruteforce(&p, Phase::Doubles, class, ALL).unwrap() >= 1);
                    break;
                }
            }
        }
    }
}
