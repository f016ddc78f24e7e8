//! Rejection breakdown of the exact sampler over many attempts.
//!
//! cargo run --release --example rejection_rates -- 2000 5 1000

use std::time::Instant;

use randreg::{stream_rng, RegSampler, RunReport};

fn main() -> randreg::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, d, attempts) = match args[..] {
        [n, d, a] => (n, d, a),
        _ => (2000, 5, 200),
    };
    let sampler = RegSampler::new(n, d, 1.0)?;
    let b = sampler.params().bounds();
    println!("n = {n}, d = {d}: B_L = {}, B_T = {}, B_D = {}", b.b_l, b.b_t, b.b_d);

    let start = Instant::now();
    let mut report = RunReport::default();
    let mut accepted = 0;
    for k in 0..attempts as u64 {
        accepted += sampler.attempt(&mut stream_rng(1, k), &mut report)?.is_some() as usize;
    }
    let per = |c: u64| c as f64 / attempts as f64;
    let r = &report.rejections;
    println!("{attempts} attempts in {:.2?}, {accepted} accepted", start.elapsed());
    println!("initial {:.3}  t {:.4}  f {:.4}  b {:.4}", per(r.initial), per(r.t), per(r.f), per(r.b));
    for (ph, c) in report.phase_rejections.iter().enumerate() {
        println!("phase {}: t {} f {} b {}, {} steps", ph + 1, c.t, c.f, c.b, report.phase_steps[ph]);
    }
    Ok(())
}
