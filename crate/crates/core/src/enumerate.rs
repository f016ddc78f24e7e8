//! Exhaustive enumeration of small labelled regular graphs and multigraphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pairing::{check_nd, Graph, Pairing};

/// All labelled d-regular graphs on n vertices, with an index for tallying.
#[derive(Clone, Debug)]
pub struct EnumerationTable {
    pub n: usize,
    pub d: usize,
    graphs: Vec<Graph>,
    index: HashMap<Graph, usize>,
}

impl EnumerationTable {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        self.index.get(g).copied()
    }
}

struct Search {
    n: usize,
    d: usize,
    deg: Vec<usize>,
    edges: Vec<(u32, u32)>,
    nodes: u64,
    budget: u64,
    out: Vec<Graph>,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                needed: self.nodes as u128,
                budget: self.budget as u128,
            });
        }
        Ok(())
    }

    // Vertices before `v` are full; pick the rest of v's neighbours among w >= start.
    fn fill(&mut self, v: usize, start: usize) -> Result<()> {
        self.tick()?;
        if v == self.n {
            self.out.push(Graph::from_edges(self.n, self.edges.iter().copied())?);
            return Ok(());
        }
        let need = self.d - self.deg[v];
        if need == 0 {
            return self.fill(v + 1, v + 2);
        }
        let open = (start..self.n).filter(|&w| self.deg[w] < self.d).count();
        if open < need {
            return Ok(());
        }
        for w in start..self.n {
            if self.deg[w] >= self.d {
                continue;
            }
            self.deg[v] += 1;
            self.deg[w] += 1;
            self.edges.push((v as u32, w as u32));
            self.fill(v, w + 1)?;
            self.edges.pop();
            self.deg[v] -= 1;
            self.deg[w] -= 1;
        }
        Ok(())
    }
}

/// Backtracking enumeration; `budget` caps the number of search nodes.
pub fn enumerate_labeled_regular(n: usize, d: usize, budget: u64) -> Result<EnumerationTable> {
    check_nd(n, d)?;
    let mut s = Search {
        n,
        d,
        deg: vec![0; n],
        edges: Vec::new(),
        nodes: 0,
        budget,
        out: Vec::new(),
    };
    s.fill(0, 1)?;
    let index = s.out.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    Ok(EnumerationTable {
        n,
        d,
        graphs: s.out,
        index,
    })
}

/// One pairing for every labelled d-regular multigraph on n vertices (loops
/// count twice towards the degree).
pub fn multigraph_representatives(n: usize, d: usize) -> Result<Vec<Pairing>> {
    check_nd(n, d)?;
    let mut out = Vec::new();
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    multi_fill(n, d, 0, 0, &mut deg, &mut edges, &mut out)?;
    Ok(out)
}

// Decide the loop count at v (when w == v) and then multiplicities v-w for w > v.
fn multi_fill(
    n: usize,
    d: usize,
    v: usize,
    w: usize,
    deg: &mut Vec<usize>,
    edges: &mut Vec<(u32, u32)>,
    out: &mut Vec<Pairing>,
) -> Result<()> {
    if v == n {
        out.push(Pairing::from_multigraph(n, d, edges)?);
        return Ok(());
    }
    if w == n {
        if deg[v] == d {
            multi_fill(n, d, v + 1, v + 1, deg, edges, out)?;
        }
        return Ok(());
    }
    let room = d - deg[v];
    let max = if w == v { room / 2 } else { room.min(d - deg[w]) };
    for m in 0..=max {
        for _ in 0..m {
            edges.push((v as u32, w as u32));
        }
        if w == v {
            deg[v] += 2 * m;
        } else {
            deg[v] += m;
            deg[w] += m;
        }
        multi_fill(n, d, v, w + 1, deg, edges, out)?;
        if w == v {
            deg[v] -= 2 * m;
        } else {
            deg[v] -= m;
            deg[w] -= m;
        }
        for _ in 0..m {
            edges.pop();
        }
    }
    Ok(())
}
