//! Pairings, their multigraph classification and the A_gamma membership test.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::feasible_epsilon;
use crate::registry::EdgeRegistry;

/// A simple graph given by its sorted list of edges `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Graph> {
        let mut es: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(Error::Parse(format!("bad edge {u}-{v} for n = {n}")));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        let len = es.len();
        es.dedup();
        if es.len() != len {
            return Err(Error::Parse("repeated edge".into()));
        }
        Ok(Graph { n, edges: es })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    pub fn triangle_count(&self) -> usize {
        let adj = self.adjacency();
        let mut t = 0;
        for &(u, v) in &self.edges {
            t += adj[u as usize]
                .iter()
                .filter(|&&w| w > v && adj[v as usize].contains(&w))
                .count();
        }
        t
    }
}

/// A perfect matching on the `n * d` points, bin `v` owning `[v*d, (v+1)*d)`.
#[derive(Clone, Debug)]
pub struct Pairing {
    n: usize,
    d: usize,
    mate: Vec<u32>,
    reg: EdgeRegistry,
    version: u64,
}

pub fn check_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= d < n and n*d even, got n = {n}, d = {d}"
        )));
    }
    if n.checked_mul(d).is_none_or(|m| m >= u32::MAX as usize) {
        return Err(Error::InvalidParameters(format!("n*d too large: n = {n}, d = {d}")));
    }
    Ok(())
}

impl Pairing {
    /// A uniformly random pairing: shuffle the points, pair consecutive entries.
    pub fn random<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Pairing> {
        check_nd(n, d)?;
        let mut pts: Vec<u32> = (0..(n * d) as u32).collect();
        pts.shuffle(rng);
        let pairs: Vec<(u32, u32)> = pts.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        Pairing::from_pairs(n, d, &pairs)
    }

    pub fn from_pairs(n: usize, d: usize, pairs: &[(u32, u32)]) -> Result<Pairing> {
        check_nd(n, d)?;
        let m1 = n * d;
        if pairs.len() * 2 != m1 {
            return Err(Error::InvalidParameters(format!("{} pairs for {m1} points", pairs.len())));
        }
        let mut mate = vec![u32::MAX; m1];
        let mut reg = EdgeRegistry::new(n);
        for &(a, b) in pairs {
            if a == b || a as usize >= m1 || b as usize >= m1 || mate[a as usize] != u32::MAX || mate[b as usize] != u32::MAX {
                return Err(Error::InvalidParameters(format!("pairs do not form a perfect matching at {a}-{b}")));
            }
            mate[a as usize] = b;
            mate[b as usize] = a;
            reg.add_pair(a / d as u32, b / d as u32);
        }
        Ok(Pairing { n, d, mate, reg, version: 0 })
    }

    /// The pairing whose multigraph is `g`, points allocated in bin order.
    pub fn from_graph(g: &Graph, d: usize) -> Result<Pairing> {
        if !g.is_regular(d) {
            return Err(Error::InvalidParameters("graph is not d-regular".into()));
        }
        Pairing::from_multigraph(g.n(), d, g.edges())
    }

    /// The pairing realising a multigraph given as a list of vertex pairs
    /// (a loop `(v, v)` uses two points of `v`).
    pub fn from_multigraph(n: usize, d: usize, edges: &[(u32, u32)]) -> Result<Pairing> {
        check_nd(n, d)?;
        let mut next: Vec<u32> = (0..n as u32).map(|v| v * d as u32).collect();
        let mut take = |v: u32| -> Result<u32> {
            let p = next[v as usize];
            if p >= (v + 1) * d as u32 {
                return Err(Error::InvalidParameters(format!("vertex {v} exceeds degree {d}")));
            }
            next[v as usize] += 1;
            Ok(p)
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameters(format!("vertex out of range in {u}-{v}")));
            }
            let a = take(u)?;
            let b = take(v)?;
            pairs.push((a, b));
        }
        Pairing::from_pairs(n, d, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> usize {
        self.n * self.d
    }

    pub fn mate(&self, p: u32) -> u32 {
        self.mate[p as usize]
    }

    pub fn vertex(&self, p: u32) -> u32 {
        p / self.d as u32
    }

    pub fn bin(&self, v: u32) -> std::ops::Range<u32> {
        let d = self.d as u32;
        v * d..(v + 1) * d
    }

    pub fn mult(&self, u: u32, v: u32) -> u32 {
        self.reg.mult(u, v)
    }

    pub fn registry(&self) -> &EdgeRegistry {
        &self.reg
    }

    /// Incremented on every mutation; lets derived indices detect staleness.
    pub fn version(&self) -> u64 {
        self.version
    }

    /// Each pair once, as `(p, mate(p))` with `p < mate(p)`.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        (0..self.mate.len() as u32)
            .filter(|&p| p < self.mate(p))
            .map(|p| (p, self.mate(p)))
            .collect()
    }

    /// Points of `u` whose mate lies in `v`.
    pub fn points_towards(&self, u: u32, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.bin(u).filter(move |&p| self.vertex(self.mate(p)) == v)
    }

    /// Replaces the point pairs `removed` by `added`. Every removed pair must be
    /// present and the added pairs must cover exactly the freed points.
    pub fn rewire(&mut self, removed: &[(u32, u32)], added: &[(u32, u32)]) -> Result<()> {
        let mut freed: Vec<u32> = Vec::with_capacity(2 * removed.len());
        for &(a, b) in removed {
            if self.mate(a) != b {
                return Err(Error::InvalidApply);
            }
            freed.push(a);
            freed.push(b);
        }
        let mut used: Vec<u32> = added.iter().flat_map(|&(a, b)| [a, b]).collect();
        freed.sort_unstable();
        used.sort_unstable();
        if freed != used || freed.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidApply);
        }
        let d = self.d as u32;
        for &(a, b) in removed {
            self.reg.remove_pair(a / d, b / d);
        }
        for &(a, b) in added {
            self.mate[a as usize] = b;
            self.mate[b as usize] = a;
            self.reg.add_pair(a / d, b / d);
        }
        self.version += 1;
        Ok(())
    }

    pub fn summary(&self) -> MultiSummary {
        MultiSummary {
            loops: self.reg.loop_count(),
            doubles: self.reg.doubles().len(),
            triples: self.reg.triples().len(),
            forbidden: self.reg.forbidden_count() > 0,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.reg.is_simple()
    }

    pub fn to_graph(&self) -> Result<Graph> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        let d = self.d as u32;
        Graph::from_edges(self.n, self.pairs().into_iter().map(|(a, b)| (a / d, b / d)))
    }

    /// Point-level equality of the matchings.
    pub fn same_matching(&self, other: &Pairing) -> bool {
        self.n == other.n && self.d == other.d && self.mate == other.mate
    }
}

/// Loop, double and triple counts of a pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiSummary {
    pub loops: usize,
    pub doubles: usize,
    pub triples: usize,
    /// A loop pair of multiplicity 2+ or a vertex pair of multiplicity 4+.
    pub forbidden: bool,
}

pub fn classify(p: &Pairing) -> MultiSummary {
    p.summary()
}

/// The caps defining A_gamma.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseBounds {
    pub gamma: f64,
    pub b_l: usize,
    pub b_t: usize,
    pub b_d: usize,
    /// True when the double bound was forced to 0 because no epsilon exists.
    pub doubles_disallowed: bool,
}

fn ceil_ln(x: usize) -> usize {
    (x as f64).ln().ceil() as usize
}

/// Caps on loops, triples and doubles, before any feasibility proviso.
pub fn nominal_bounds(n: usize, d: usize, gamma: f64) -> Result<PhaseBounds> {
    check_nd(n, d)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameters(format!("gamma must be positive, got {gamma}")));
    }
    let ln = ceil_ln(n * d);
    let b_l = ln.max(4 * d);
    let b_t = ln.max((d * d * d).div_ceil(n));
    let b_d = ((1.0 + gamma) * ((d - 1) * (d - 1)) as f64 / 4.0).floor() as usize;
    Ok(PhaseBounds {
        gamma,
        b_l,
        b_t,
        b_d,
        doubles_disallowed: false,
    })
}

/// A_gamma caps, with the double cap set to 0 when no epsilon is feasible.
pub fn compute_bounds(n: usize, d: usize, gamma: f64) -> Result<PhaseBounds> {
    let mut b = nominal_bounds(n, d, gamma)?;
    if b.b_d > 0 && feasible_epsilon(n, d, gamma).is_none() {
        b.b_d = 0;
        b.doubles_disallowed = true;
    }
    Ok(b)
}

pub fn in_a_gamma(p: &Pairing, b: &PhaseBounds) -> bool {
    let s = p.summary();
    !s.forbidden && s.loops <= b.b_l && s.triples <= b.b_t && s.doubles <= b.b_d
}
