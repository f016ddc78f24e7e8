//! Exhaustive enumeration of small labelled regular graphs and a chi-square
//! test of each sampler against it.
//!
//! cargo run --release --example verify -- 6 3 100000

use randreg::verify::{verify, VerifyConfig};
use randreg::{enumerate_labeled_regular, Algorithm};

fn main() -> randreg::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, d, samples) = match args[..] {
        [n, d, s] => (n as usize, d as usize, s),
        _ => (6, 3, 100_000),
    };
    for (n, d) in [(4, 2), (5, 2), (6, 2), (6, 3), (7, 4), (8, 3)] {
        println!("{n} vertices, degree {d}: {} labelled graphs", enumerate_labeled_regular(n, d, 50_000_000)?.len());
    }
    println!();
    for algo in [Algorithm::Naive, Algorithm::Reg, Algorithm::Regstar] {
        let r = verify(&VerifyConfig::new(n, d, algo, samples, 1))?;
        for s in &r.runs {
            println!(
                "{algo:?} seed {}: p = {:.4}, tv = {:.4}",
                s.seed, s.result.p_value, s.result.total_variation
            );
        }
        println!("{algo:?}: {}\n", if r.passed { "uniform" } else { "not uniform" });
    }
    Ok(())
}
