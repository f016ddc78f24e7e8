//! Vertex-level view of a pairing: multiplicities plus indexed lists of the
//! loops, double edges and triple edges, each updated in O(d) per pair change.

use std::collections::HashMap;
use std::hash::Hash;

/// A set with O(1) insert, remove and uniform indexing.
#[derive(Clone, Debug, Default)]
pub struct IndexedSet<K> {
    items: Vec<K>,
    pos: HashMap<K, usize>,
}

impl<K: Copy + Eq + Hash + Ord> IndexedSet<K> {
    pub fn new() -> Self {
        IndexedSet {
            items: Vec::new(),
            pos: HashMap::new(),
        }
    }

    pub fn insert(&mut self, k: K) {
        if self.pos.contains_key(&k) {
            return;
        }
        self.pos.insert(k, self.items.len());
        self.items.push(k);
    }

    pub fn remove(&mut self, k: &K) {
        if let Some(i) = self.pos.remove(k) {
            self.items.swap_remove(i);
            if i < self.items.len() {
                self.pos.insert(self.items[i], i);
            }
        }
    }

    pub fn contains(&self, k: &K) -> bool {
        self.pos.contains_key(k)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> K {
        self.items[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &K> {
        self.items.iter()
    }

    pub fn sorted(&self) -> Vec<K> {
        let mut v = self.items.clone();
        v.sort_unstable();
        v
    }
}

/// Multiplicities of the multigraph of a pairing.
///
/// A loop at `v` is stored once, as the entry `(v, m)` in `v`'s list.
#[derive(Clone, Debug)]
pub struct EdgeRegistry {
    adj: Vec<Vec<(u32, u32)>>,
    loops: IndexedSet<u32>,
    doubles: IndexedSet<(u32, u32)>,
    triples: IndexedSet<(u32, u32)>,
    loop_total: usize,
    forbidden: usize,
}

fn key(u: u32, v: u32) -> (u32, u32) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl EdgeRegistry {
    pub fn new(n: usize) -> Self {
        EdgeRegistry {
            adj: vec![Vec::new(); n],
            loops: IndexedSet::new(),
            doubles: IndexedSet::new(),
            triples: IndexedSet::new(),
            loop_total: 0,
            forbidden: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn mult(&self, u: u32, v: u32) -> u32 {
        self.adj[u as usize]
            .iter()
            .find(|e| e.0 == v)
            .map_or(0, |e| e.1)
    }

    /// Neighbours of `u` with multiplicities. Contains `(u, m)` if `u` has loops.
    pub fn neighbours(&self, u: u32) -> &[(u32, u32)] {
        &self.adj[u as usize]
    }

    pub fn loops(&self) -> &IndexedSet<u32> {
        &self.loops
    }

    pub fn doubles(&self) -> &IndexedSet<(u32, u32)> {
        &self.doubles
    }

    pub fn triples(&self) -> &IndexedSet<(u32, u32)> {
        &self.triples
    }

    /// Number of loop pairs, counted with multiplicity.
    pub fn loop_count(&self) -> usize {
        self.loop_total
    }

    /// Vertex pairs whose multiplicity is itself forbidden in every A_gamma:
    /// a loop pair of multiplicity at least 2, or a non-loop pair of at least 4.
    pub fn forbidden_count(&self) -> usize {
        self.forbidden
    }

    pub fn is_simple(&self) -> bool {
        self.loop_total == 0 && self.doubles.is_empty() && self.triples.is_empty() && self.forbidden == 0
    }

    fn set_mult(&mut self, u: u32, v: u32, m: u32) {
        let list = &mut self.adj[u as usize];
        match list.iter().position(|e| e.0 == v) {
            Some(i) if m == 0 => {
                list.swap_remove(i);
            }
            Some(i) => list[i].1 = m,
            None if m > 0 => list.push((v, m)),
            None => {}
        }
    }

    fn change(&mut self, u: u32, v: u32, old: u32, new: u32) {
        self.set_mult(u, v, new);
        if u != v {
            self.set_mult(v, u, new);
        }
        let k = key(u, v);
        if u == v {
            self.loop_total = self.loop_total + new as usize - old as usize;
            if old == 0 {
                self.loops.insert(u);
            }
            if new == 0 {
                self.loops.remove(&u);
            }
            self.forbidden = self.forbidden + (new >= 2) as usize - (old >= 2) as usize;
        } else {
            if old == 2 {
                self.doubles.remove(&k);
            }
            if old == 3 {
                self.triples.remove(&k);
            }
            if new == 2 {
                self.doubles.insert(k);
            }
            if new == 3 {
                self.triples.insert(k);
            }
            self.forbidden = self.forbidden + (new >= 4) as usize - (old >= 4) as usize;
        }
    }

    pub fn add_pair(&mut self, u: u32, v: u32) {
        let old = self.mult(u, v);
        self.change(u, v, old, old + 1);
    }

    pub fn remove_pair(&mut self, u: u32, v: u32) {
        let old = self.mult(u, v);
        assert!(old > 0, "removing absent pair {u}-{v}");
        self.change(u, v, old, old - 1);
    }

    /// Content equality, ignoring the internal order of lists.
    pub fn same_content(&self, other: &EdgeRegistry) -> bool {
        if self.adj.len() != other.adj.len() {
            return false;
        }
        let sorted = |l: &Vec<(u32, u32)>| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        };
        self.adj.iter().zip(&other.adj).all(|(a, b)| sorted(a) == sorted(b))
            && self.loops.sorted() == other.loops.sorted()
            && self.doubles.sorted() == other.doubles.sorted()
            && self.triples.sorted() == other.triples.sorted()
            && self.loop_total == other.loop_total
            && self.forbidden == other.forbidden
    }
}
