//! Incremental backward counts on a large pairing compared with rebuilding.
//!
//! cargo run --release --example path_index -- 5000 6

use std::time::Instant;

use randreg::{apply, sample_candidate, stream_rng, validate, Class, Outcome, Pairing, PathIndex, Phase, SwitchKind};

fn main() -> randreg::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, d) = match args[..] {
        [n, d] => (n, d),
        _ => (5000, 6),
    };
    let mut rng = stream_rng(11, 0);
    let mut p = loop {
        let p = Pairing::random(n, d, &mut rng)?;
        let s = p.summary();
        if s.loops == 0 && s.triples == 0 && !s.forbidden && s.doubles > 0 {
            break p;
        }
    };
    let start = Instant::now();
    let mut idx = PathIndex::init(&p);
    println!("n = {n}, d = {d}: {} doubles, index built in {:.2?}", p.summary().doubles, start.elapsed());
    println!("{} near pairs, {} single-edge 2-paths", idx.near_pairs(), idx.good_two_paths());

    let mut update = std::time::Duration::ZERO;
    while p.summary().doubles > 0 {
        let c = sample_candidate(&p, SwitchKind::TypeI, &mut rng)?;
        let Outcome::Valid { class, .. } = validate(&p, &c) else { continue };
        let (_, delta) = apply(&mut p, &c)?;
        let t = Instant::now();
        idx.apply_delta(&delta.removed_vertices(d), &delta.added_vertices(d), p.version());
        let b = idx.b_exact(&p, Phase::Doubles, class)?;
        update += t.elapsed();
        let t = Instant::now();
        let fresh = PathIndex::init(&p);
        let rebuilt = fresh.b_exact(&p, Phase::Doubles, class)?;
        let rebuild = t.elapsed();
        assert_eq!(b, rebuilt);
        let tag = if class == Class::A { "A" } else { "B" };
        println!("class {tag}: b = {b:>16}, {} doubles left, rebuild {rebuild:.2?}", p.summary().doubles);
    }
    println!("total incremental time {update:.2?}");
    Ok(())
}
