//! Edge lists and graph6.

use randreg::{parse_edge_list, parse_graph6, run_reg, stream_rng, to_edge_list, to_graph6};

fn main() -> randreg::Result<()> {
    let (g, _) = run_reg(10, 3, 1.0, &mut stream_rng(5, 0))?;
    let text = to_edge_list(&g);
    println!("edge list:\n{text}\n");
    let g6 = to_graph6(&g);
    println!("graph6: {g6}");
    assert_eq!(parse_graph6(&g6)?, g);
    assert_eq!(parse_edge_list(&text, 10)?, g);
    let k4 = parse_graph6("C~")?;
    println!("C~ is K4: {}", k4.is_regular(3));
    Ok(())
}
