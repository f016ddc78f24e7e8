//! Edge-list and graph6 serialization.

use crate::error::{Error, Result};
use crate::pairing::Graph;

/// One `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_edge_list(s: &str, n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut it = line.split_whitespace().map(|t| t.parse::<u32>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
        }
    }
    Graph::from_edges(n, edges)
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let adj = g.adjacency();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[j].contains(&(i as u32)));
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn parse_graph6(s: &str) -> Result<Graph> {
    let bytes: Vec<u8> = s.trim().bytes().collect();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte out of range".into()));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes.as_slice() {
        [126, 126, r @ ..] if r.len() >= 6 => (r[..6].iter().fold(0, |a, &b| (a << 6) | val(b)), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (r[..3].iter().fold(0, |a, &b| (a << 6) | val(b)), &r[3..]),
        [b, r @ ..] if *b != 126 => (val(*b), r),
        _ => return Err(Error::Parse("bad graph6 size".into())),
    };
    let need = n * n.saturating_sub(1) / 2;
    if rest.len() != need.div_ceil(6) {
        return Err(Error::Parse("graph6 length mismatch".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if val(rest[k / 6]) >> (5 - k % 6) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}
