//! One double-edge switching step by hand: forward and backward counts,
//! the realised class, and the inverse move.

use randreg::switching::{count_f_by_class, space_size};
use randreg::{apply, count_b_bruteforce, sample_candidate, stream_rng, validate, Class, Outcome, Pairing, Phase, SwitchKind};

fn main() -> randreg::Result<()> {
    let (n, d) = (12, 4);
    let mut rng = stream_rng(3, 0);
    let mut p = loop {
        let p = Pairing::random(n, d, &mut rng)?;
        let s = p.summary();
        if s.loops == 0 && s.triples == 0 && !s.forbidden && s.doubles >= 2 {
            break p;
        }
    };
    println!("start: {:?}", p.summary());
    for kind in [SwitchKind::TypeI, SwitchKind::TypeII] {
        let (a, b) = count_f_by_class(&p, kind, u128::MAX)?;
        println!("{}: {} labelled candidates, {a} valid of class A, {b} of class B", kind.name(), space_size(&p, kind));
    }

    let before = p.clone();
    let (c, class) = loop {
        let c = sample_candidate(&p, SwitchKind::TypeI, &mut rng)?;
        if let Outcome::Valid { class, .. } = validate(&p, &c) {
            break (c, class);
        }
    };
    let (_, delta) = apply(&mut p, &c)?;
    println!("\napplied a class {class:?} switching: removed {:?}", delta.removed_vertices(d));
    println!("                                    added   {:?}", delta.added_vertices(d));
    println!("now: {:?}", p.summary());
    let back = count_b_bruteforce(&p, Phase::Doubles, class, u128::MAX)?;
    println!("switchings of class {class:?} that produce this pairing: {back}");

    let inv = delta.inverse();
    p.rewire(&inv.removed, &inv.added)?;
    assert!(p.same_matching(&before));
    println!("inverse restores the original pairing");
    if class == Class::B {
        println!("(class B kept the number of doubles by creating a new one)");
    }
    Ok(())
}
