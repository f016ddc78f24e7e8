//! Draw a few uniformly random regular graphs with the exact sampler.
//!
//! cargo run --release --example generate -- 1000 6

use randreg::{run_reg, stream_rng, to_edge_list};

fn main() -> randreg::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, d) = match args[..] {
        [n, d] => (n, d),
        _ => (1000, 6),
    };
    for k in 0..5 {
        let (g, r) = run_reg(n, d, 1.0, &mut stream_rng(2024, k))?;
        assert!(g.is_regular(d));
        println!(
            "graph {k}: {} edges, {} triangles, {} attempts, switchings {:?}, {:.1} ms",
            g.edges().len(),
            g.triangle_count(),
            r.attempts,
            r.phase_steps,
            r.seconds * 1e3
        );
    }
    let (small, _) = run_reg(8, 3, 1.0, &mut stream_rng(2024, 99))?;
    println!("\na 3-regular graph on 8 vertices:\n{}", to_edge_list(&small));
    Ok(())
}
