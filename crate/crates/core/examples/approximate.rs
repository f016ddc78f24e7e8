//! The rejection-free approximate sampler and how its cost grows with n.
//!
//! cargo run --release --example approximate

use std::time::Instant;

use randreg::{stream_rng, RegStarSampler};

fn main() -> randreg::Result<()> {
    let d = 5;
    let reps = 200;
    let mut last = None;
    for n in [1000, 2000, 4000, 8000] {
        let sampler = RegStarSampler::new(n, d)?;
        let start = Instant::now();
        let mut steps = [0u64; 3];
        for k in 0..reps {
            let (g, r) = sampler.sample(&mut stream_rng(n as u64, k))?;
            assert!(g.is_regular(d));
            for (s, x) in steps.iter_mut().zip(r.phase_steps) {
                *s += x;
            }
        }
        let mean = start.elapsed().as_secs_f64() / reps as f64;
        let ratio = last.map_or(String::new(), |l: f64| format!("  x{:.2}", mean / l));
        println!(
            "n = {n:5}: {:8.1} us per graph, mean steps {:.2} / {:.2} / {:.2}{ratio}",
            mean * 1e6,
            steps[0] as f64 / reps as f64,
            steps[1] as f64 / reps as f64,
            steps[2] as f64 / reps as f64,
        );
        last = Some(mean);
    }
    Ok(())
}
