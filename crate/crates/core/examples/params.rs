//! Bounds, switching-count tables and the phase-3 type probabilities.
//!
//! cargo run --example params -- 100 5

use randreg::{feasibility_threshold, ModelParams};

fn main() -> randreg::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, d) = match args[..] {
        [n, d] => (n, d),
        _ => (100, 5),
    };
    let p = ModelParams::new(n, d, 1.0)?;
    let b = p.bounds();
    println!("n = {n}, d = {d}, gamma = 1");
    println!("B_L = {}, B_T = {}, B_D = {} (nominal {})", b.b_l, b.b_t, b.b_d, p.nominal_b_d);
    match p.epsilon {
        Some(e) => println!("epsilon = {e:.6e}"),
        None => println!("no admissible epsilon: double edges are rejected initially"),
    }
    let t = &p.tables.doubles;
    println!(" i    m_up_I     m_up_II   m_lo_A     m_lo_B    rho_I     rho_II      x");
    for i in 0..=b.b_d {
        println!(
            "{i:2} {:10} {:9} {:10} {:9}  {:.6} {:.3e} {:.6}",
            t.m_up_i[i], t.m_up_ii[i], t.m_lo_a[i], t.m_lo_b[i], p.rho.rho_i[i], p.rho.rho_ii[i], p.rho.x[i]
        );
    }
    println!("residual {:.2e}", p.rho.max_residual(&p.tables));

    println!("\nsmallest n admitting double edges:");
    for d in 4..=8 {
        let small = feasibility_threshold(d, 1e-3, 10_000).unwrap();
        let unit = feasibility_threshold(d, 1.0, 10_000).unwrap();
        println!("d = {d}: gamma -> 0: {small:4}, gamma = 1: {unit:4}");
    }
    Ok(())
}
