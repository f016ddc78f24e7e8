//! Exact backward switching counts.
//!
//! Phase 3, class A: `b_A(P)` is the number of ordered pairs of vertex-disjoint
//! 2-paths `(u2,u1,u3)`, `(v2,v1,v3)` made of single edges such that
//! `u1 v1`, `u2 v2`, `u3 v3` are all non-edges. Writing `U = S(u1)`, `V = S(v1)`
//! for the single-edge neighbourhoods, the count for a fixed centre pair is an
//! inclusion-exclusion over the "bad" pairs `(x, y)` in `U x V` with `x = y` or
//! `x ~ y`. Only centre pairs joined by a single-edge 2-path or by an
//! S-H-S 3-path have any bad pair ("near" pairs); every other pair contributes
//! `s(u1)(s(u1)-1) s(v1)(s(v1)-1)`. The index keeps the global sums and one
//! correction per near pair, and after a switching recomputes only the near
//! pairs touching the switched vertices or their neighbours.
//!
//! Phase 3, class B is counted anchored on the double edge, phases 1 and 2
//! anchored on the created loop-free 2-path or 3-star.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pairing::Pairing;
use crate::switching::{Class, Phase};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NearPair {
    /// Common single-edge neighbours.
    pub two_paths: u32,
    /// Pairs `(x, y)`, `x` in `S(u)`, `y` in `S(v)`, `x != y`, `x ~ y`.
    pub three_paths: u32,
    pub adjacent: bool,
    /// `F(u, v) - a'(u) a'(v)`; zero when adjacent.
    pub delta: i128,
}

#[derive(Clone, Debug)]
pub struct PathIndex {
    n: usize,
    d: usize,
    adj: Vec<Vec<(u32, u32)>>,
    single: Vec<u32>,
    good_total: i128,
    sq_sum: i128,
    adj_sum: i128,
    near: HashMap<(u32, u32), NearPair>,
    partners: Vec<Vec<u32>>,
    near_delta: i128,
    point_two_paths: u128,
    version: u64,
}

fn key(u: u32, v: u32) -> (u32, u32) {
    (u.min(v), u.max(v))
}

fn ap(s: u32) -> i128 {
    let s = s as i128;
    s * (s - 1).max(0)
}

impl PathIndex {
    pub fn init(p: &Pairing) -> PathIndex {
        let n = p.n();
        let reg = p.registry();
        let adj: Vec<Vec<(u32, u32)>> = (0..n as u32).map(|v| reg.neighbours(v).to_vec()).collect();
        let mut idx = PathIndex {
            n,
            d: p.d(),
            adj,
            single: vec![0; n],
            good_total: 0,
            sq_sum: 0,
            adj_sum: 0,
            near: HashMap::new(),
            partners: vec![Vec::new(); n],
            near_delta: 0,
            point_two_paths: 0,
            version: p.version(),
        };
        for v in 0..n as u32 {
            idx.single[v as usize] = idx.s_list(v).count() as u32;
        }
        let all: Vec<u32> = (0..n as u32).collect();
        let (g, sq, a, t) = idx.contrib(&all);
        idx.good_total = g;
        idx.sq_sum = sq;
        idx.adj_sum = a;
        idx.point_two_paths = t;
        for z in 0..n as u32 {
            for (w, e) in idx.entries_from(z) {
                if w > z {
                    idx.insert_entry(z, w, e);
                }
            }
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn mult(&self, u: u32, v: u32) -> u32 {
        self.adj[u as usize].iter().find(|e| e.0 == v).map_or(0, |e| e.1)
    }

    fn s_list(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[u as usize].iter().filter(move |e| e.1 == 1 && e.0 != u).map(|e| e.0)
    }

    fn h_list(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[u as usize].iter().filter(move |e| e.0 != u).map(|e| e.0)
    }

    fn a(&self, u: u32) -> i128 {
        ap(self.single[u as usize])
    }

    /// Number of ordered single-edge 2-paths centred anywhere.
    pub fn good_two_paths(&self) -> i128 {
        self.good_total
    }

    /// Ordered point 2-paths avoiding loops: `M2` when the pairing has no loops.
    pub fn point_two_paths(&self) -> u128 {
        self.point_two_paths
    }

    pub fn two_paths_between(&self, u: u32, v: u32) -> u32 {
        self.near.get(&key(u, v)).map_or(0, |e| e.two_paths)
    }

    pub fn three_paths_between(&self, u: u32, v: u32) -> u32 {
        self.near.get(&key(u, v)).map_or(0, |e| e.three_paths)
    }

    pub fn near_pairs(&self) -> usize {
        self.near.len()
    }

    /// Contributions of the vertices in `set` (sorted) to the global sums.
    fn contrib(&self, set: &[u32]) -> (i128, i128, i128, u128) {
        let (mut g, mut sq, mut adj, mut tp) = (0i128, 0i128, 0i128, 0u128);
        for &t in set {
            let at = self.a(t);
            g += at;
            sq += at * at;
            for v in self.h_list(t) {
                let w = if set.binary_search(&v).is_ok() { 1 } else { 2 };
                adj += w * at * self.a(v);
            }
            let deg: u128 = self.adj[t as usize].iter().filter(|e| e.0 != t).map(|e| e.1 as u128).sum();
            tp += deg * deg.saturating_sub(1);
        }
        (g, sq, adj, tp)
    }

    fn entries_from(&self, z: u32) -> Vec<(u32, NearPair)> {
        let mut groups: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        for x in self.s_list(z) {
            for w in self.s_list(x) {
                if w != z {
                    groups.entry(w).or_default().push((x, x));
                }
            }
            // only simple 3-paths z-x-y-w; the degenerate ones join adjacent pairs
            for y in self.h_list(x).filter(|&y| y != z) {
                for w in self.s_list(y) {
                    if w != z && w != x {
                        groups.entry(w).or_default().push((x, y));
                    }
                }
            }
        }
        groups
            .into_iter()
            .map(|(w, structs)| (w, self.pair_entry(z, w, &structs)))
            .collect()
    }

    fn pair_entry(&self, z: u32, w: u32, bad: &[(u32, u32)]) -> NearPair {
        let common: Vec<u32> = bad.iter().filter(|b| b.0 == b.1).map(|b| b.0).collect();
        let two_paths = common.len() as u32;
        let three_paths = bad.len() as u32 - two_paths;
        let adjacent = self.mult(z, w) > 0;
        if adjacent {
            return NearPair {
                two_paths,
                three_paths,
                adjacent,
                delta: 0,
            };
        }
        let a = self.single[z as usize] as i128;
        let b = self.single[w as usize] as i128;
        let nb = bad.len() as i128;
        let mut row: HashMap<u32, i128> = HashMap::new();
        let mut col: HashMap<u32, i128> = HashMap::new();
        for &(x, y) in bad {
            *row.entry(x).or_default() += 1;
            *col.entry(y).or_default() += 1;
        }
        let sum_sq = |m: &HashMap<u32, i128>| m.values().map(|c| c * c).sum::<i128>();
        let good = a * b - nb;
        let rows_sq = a * b * b - 2 * b * nb + sum_sq(&row);
        let cols_sq = b * a * a - 2 * a * nb + sum_sq(&col);
        let mut cross = 0i128;
        let mut k = 0i128;
        for &c in &common {
            let r = b - row.get(&c).copied().unwrap_or(0);
            let s = a - col.get(&c).copied().unwrap_or(0);
            cross += r * s;
            for &c2 in &common {
                if c2 != c && self.mult(c, c2) == 0 {
                    k += 1;
                }
            }
        }
        let f = good * good - rows_sq - cols_sq + good - 2 * cross + k;
        NearPair {
            two_paths,
            three_paths,
            adjacent,
            delta: f - a * (a - 1) * b * (b - 1),
        }
    }

    fn insert_entry(&mut self, u: u32, v: u32, e: NearPair) {
        let k = key(u, v);
        if self.near.contains_key(&k) {
            return;
        }
        self.near_delta += e.delta;
        self.near.insert(k, e);
        self.partners[u as usize].push(v);
        self.partners[v as usize].push(u);
    }

    fn drop_entries_of(&mut self, z: u32) {
        for w in std::mem::take(&mut self.partners[z as usize]) {
            if let Some(e) = self.near.remove(&key(z, w)) {
                self.near_delta -= e.delta;
            }
            self.partners[w as usize].retain(|&x| x != z);
        }
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

    fn bump(&mut self, u: u32, v: u32, up: bool) {
        let m = self.mult(u, v);
        let m = if up { m + 1 } else { m.checked_sub(1).expect("removing absent pair from index") };
        self.set_mult(u, v, m);
        if u != v {
            self.set_mult(v, u, m);
        }
    }

    /// Brings the index up to date after the vertex pairs `removed` were
    /// replaced by `added`; `version` is the pairing's version afterwards.
    pub fn apply_delta(&mut self, removed: &[(u32, u32)], added: &[(u32, u32)], version: u64) {
        let mut touched: Vec<u32> = removed.iter().chain(added).flat_map(|&(a, b)| [a, b]).collect();
        touched.sort_unstable();
        touched.dedup();
        let mut zone = touched.clone();
        for &t in &touched {
            zone.extend(self.h_list(t));
        }
        zone.sort_unstable();
        zone.dedup();

        let (g, sq, a, tp) = self.contrib(&touched);
        self.good_total -= g;
        self.sq_sum -= sq;
        self.adj_sum -= a;
        self.point_two_paths -= tp;
        for &z in &zone {
            self.drop_entries_of(z);
        }
        for &(u, v) in removed {
            self.bump(u, v, false);
        }
        for &(u, v) in added {
            self.bump(u, v, true);
        }
        for &t in &touched {
            self.single[t as usize] = self.s_list(t).count() as u32;
        }
        let (g, sq, a, tp) = self.contrib(&touched);
        self.good_total += g;
        self.sq_sum += sq;
        self.adj_sum += a;
        self.point_two_paths += tp;
        for &z in &zone {
            for (w, e) in self.entries_from(z) {
                self.insert_entry(z, w, e);
            }
        }
        self.version = version;
    }

    fn check(&self, p: &Pairing) -> Result<()> {
        if p.version() != self.version || p.n() != self.n {
            return Err(Error::OutOfSync);
        }
        Ok(())
    }

    /// Class A backward count at the current pairing.
    pub fn b_class_a(&self, p: &Pairing) -> Result<u128> {
        self.check(p)?;
        let g = self.good_total;
        let b = g * g - self.sq_sum - self.adj_sum + 2 * self.near_delta;
        assert!(b >= 0, "negative class A count");
        Ok(b as u128)
    }

    /// Class B backward count at the current pairing.
    pub fn b_class_b(&self, p: &Pairing) -> Result<u128> {
        self.check(p)?;
        let mut total: i128 = 0;
        for u in 0..self.n as u32 {
            for &(w, m) in &self.adj[u as usize] {
                if m != 2 || w == u {
                    continue;
                }
                // u = u1, w = u3; point 3 is either point of u1 in the double
                for &(u2, m2) in &self.adj[u as usize] {
                    if u2 == w || u2 == u {
                        continue;
                    }
                    total += 2 * m2 as i128 * self.anchored_q(u, u2, w);
                }
            }
        }
        Ok(4 * total as u128)
    }

    /// Second 2-paths `(v2, v1, v3)` compatible with the first path `(u2, u1, u3)`.
    fn anchored_q(&self, u1: u32, u2: u32, u3: u32) -> i128 {
        let base = [u1, u2, u3];
        let with = |extra: u32| -> Vec<u32> {
            let mut v: Vec<u32> = base.to_vec();
            v.extend(self.h_list(extra));
            v.sort_unstable();
            v.dedup();
            v
        };
        let excl_centre = with(u1);
        let f2 = with(u2);
        let f3 = with(u3);
        let mut total = self.good_total;
        for &c in &excl_centre {
            total -= self.a(c);
        }
        let mut near: Vec<u32> = f2.iter().chain(&f3).flat_map(|&x| self.s_list(x).collect::<Vec<_>>()).collect();
        near.sort_unstable();
        near.dedup();
        for v1 in near {
            if excl_centre.binary_search(&v1).is_ok() {
                continue;
            }
            let (mut a, mut b, mut both) = (0i128, 0i128, 0i128);
            for y in self.s_list(v1) {
                let in_a = f2.binary_search(&y).is_err();
                let in_b = f3.binary_search(&y).is_err();
                a += in_a as i128;
                b += in_b as i128;
                both += (in_a && in_b) as i128;
            }
            total -= self.a(v1) - (a * b - both);
        }
        total
    }

    /// Backward count for the switching that was just performed in `phase`.
    /// Phases 1 and 2 ignore the index and count directly.
    pub fn b_exact(&self, p: &Pairing, phase: Phase, class: Class) -> Result<u128> {
        match (phase, class) {
            (Phase::Loops, _) => Ok(b_loops(p)),
            (Phase::Triples, _) => Ok(b_triples(p)),
            (Phase::Doubles, Class::A) => self.b_class_a(p),
            (Phase::Doubles, Class::B) => self.b_class_b(p),
        }
    }

    /// True when the index equals one rebuilt from `p`.
    pub fn audit(&self, p: &Pairing) -> bool {
        self.same_counts(&PathIndex::init(p))
    }

    pub fn same_counts(&self, other: &PathIndex) -> bool {
        let sorted = |l: &Vec<(u32, u32)>| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        };
        self.n == other.n
            && self.d == other.d
            && self.single == other.single
            && self.good_total == other.good_total
            && self.sq_sum == other.sq_sum
            && self.adj_sum == other.adj_sum
            && self.near_delta == other.near_delta
            && self.point_two_paths == other.point_two_paths
            && self.near == other.near
            && self.adj.iter().zip(&other.adj).all(|(a, b)| sorted(a) == sorted(b))
    }
}

/// Marks vertices for O(1) membership with O(1) reset.
struct Marks {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Marks {
    fn new(n: usize) -> Marks {
        Marks {
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    fn clear(&mut self) {
        self.epoch += 1;
    }

    /// Marks `v`; returns false if it was already marked.
    fn mark(&mut self, v: u32) -> bool {
        let s = &mut self.stamp[v as usize];
        let fresh = *s != self.epoch;
        *s = self.epoch;
        fresh
    }

    fn has(&self, v: u32) -> bool {
        self.stamp[v as usize] == self.epoch
    }
}

fn singles(p: &Pairing, v: u32) -> Vec<u32> {
    p.registry()
        .neighbours(v)
        .iter()
        .filter(|e| e.1 == 1 && e.0 != v)
        .map(|e| e.0)
        .collect()
}

fn others(p: &Pairing, v: u32) -> impl Iterator<Item = u32> + '_ {
    p.registry().neighbours(v).iter().filter(move |e| e.0 != v).map(|e| e.0)
}

/// Phase 1 backward count: loop switchings that produce `p`.
pub fn b_loops(p: &Pairing) -> u128 {
    let n = p.n();
    let s: Vec<Vec<u32>> = (0..n as u32).map(|v| singles(p, v)).collect();
    let e2: i128 = s.iter().map(|l| l.len() as i128).sum();
    let (mut mx, mut my) = (Marks::new(n), Marks::new(n));
    let mut xs: Vec<u32> = Vec::new();
    let mut total: i128 = 0;
    for v1 in 0..n as u32 {
        if p.mult(v1, v1) > 0 {
            continue;
        }
        let sv = &s[v1 as usize];
        for i in 0..sv.len() {
            for j in i + 1..sv.len() {
                let (a, b) = (sv[i], sv[j]);
                mx.clear();
                my.clear();
                xs.clear();
                let mut in_y = 0i128;
                for x in [v1, a, b].into_iter().chain(others(p, a)) {
                    if mx.mark(x) {
                        xs.push(x);
                    }
                }
                for y in [v1, a, b].into_iter().chain(others(p, b)) {
                    if my.mark(y) {
                        in_y += s[y as usize].len() as i128;
                    }
                }
                let mut in_x = 0i128;
                let mut cross = 0i128;
                for &x in &xs {
                    in_x += s[x as usize].len() as i128;
                    cross += s[x as usize].iter().filter(|&&w| my.has(w)).count() as i128;
                }
                total += 2 * (e2 - (in_x + in_y - cross));
            }
        }
    }
    total as u128
}

/// Phase 2 backward count: triple switchings that produce `p`.
pub fn b_triples(p: &Pairing) -> u128 {
    let n = p.n();
    let s: Vec<Vec<u32>> = (0..n as u32).map(|v| singles(p, v)).collect();
    let a3 = |v: u32| {
        let k = s[v as usize].len() as i128;
        k * (k - 1) * (k - 2)
    };
    let g3: i128 = (0..n as u32).map(a3).sum();
    let mut forbid = [Marks::new(n), Marks::new(n), Marks::new(n)];
    let mut centre = Marks::new(n);
    let mut seen = Marks::new(n);
    let mut total: i128 = 0;
    for v1 in 0..n as u32 {
        let sv = &s[v1 as usize];
        for i in 0..sv.len() {
            for j in i + 1..sv.len() {
                for k in j + 1..sv.len() {
                    let leaves = [sv[i], sv[j], sv[k]];
                    let core = [v1, leaves[0], leaves[1], leaves[2]];
                    centre.clear();
                    let mut count = g3;
                    for c in core.into_iter().chain(others(p, v1)) {
                        if centre.mark(c) {
                            count -= a3(c);
                        }
                    }
                    let mut wall: Vec<u32> = core.to_vec();
                    for (f, &leaf) in forbid.iter_mut().zip(&leaves) {
                        f.clear();
                        for x in core.into_iter().chain(others(p, leaf)) {
                            f.mark(x);
                            wall.push(x);
                        }
                    }
                    seen.clear();
                    for &w in &wall {
                        for &v2 in &s[w as usize] {
                            if centre.has(v2) || !seen.mark(v2) {
                                continue;
                            }
                            let (mut na, mut nb, mut nc, mut ab, mut ac, mut bc, mut abc) = (0i128, 0, 0, 0, 0, 0, 0);
                            for &y in &s[v2 as usize] {
                                let ia = !forbid[0].has(y);
                                let ib = !forbid[1].has(y);
                                let ic = !forbid[2].has(y);
                                na += ia as i128;
                                nb += ib as i128;
                                nc += ic as i128;
                                ab += (ia && ib) as i128;
                                ac += (ia && ic) as i128;
                                bc += (ib && ic) as i128;
                                abc += (ia && ib && ic) as i128;
                            }
                            let ok = na * nb * nc - ab * nc - ac * nb - bc * na + 2 * abc;
                            count -= a3(v2) - ok;
                        }
                    }
                    total += 6 * count;
                }
            }
        }
    }
    total as u128
}
