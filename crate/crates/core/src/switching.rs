//! The four switching types: loop removal (L), triple removal (T), and the
//! two double-edge switchings I and II.
//!
//! A candidate is a labelled point tuple. Labels follow the figures: `pt(1)`
//! is the point labelled 1, and so on. Forward sampling draws uniformly from
//! a space whose size is exactly the matching upper bound in the tables;
//! validation then decides whether the labelling is a legal switching.
//!
//! The brute-force counters here are oracles: `count_b_bruteforce`
//! enumerates every reverse labelling of a pairing, undoes it, and asks the
//! forward validator whether the pre-image really switches to the pairing.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairing::Pairing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SwitchKind {
    Loop,
    Triple,
    TypeI,
    TypeII,
}

impl SwitchKind {
    pub fn name(self) -> &'static str {
        match self {
            SwitchKind::Loop => "L",
            SwitchKind::Triple => "T",
            SwitchKind::TypeI => "I",
            SwitchKind::TypeII => "II",
        }
    }

    fn labels(self) -> usize {
        match self {
            SwitchKind::Loop => 6,
            SwitchKind::Triple => 12,
            SwitchKind::TypeI => 8,
            SwitchKind::TypeII => 12,
        }
    }

    fn pairs(self) -> (&'static [(usize, usize)], &'static [(usize, usize)]) {
        match self {
            SwitchKind::Loop => (&L_REMOVED, &L_ADDED),
            SwitchKind::Triple => (&T_REMOVED, &T_ADDED),
            SwitchKind::TypeI | SwitchKind::TypeII => (&D_REMOVED, &D_ADDED),
        }
    }
}

const L_REMOVED: [(usize, usize); 3] = [(1, 2), (3, 4), (5, 6)];
const L_ADDED: [(usize, usize); 3] = [(1, 3), (4, 6), (2, 5)];
const T_REMOVED: [(usize, usize); 6] = [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12)];
const T_ADDED: [(usize, usize); 6] = [(1, 7), (3, 9), (5, 11), (2, 8), (4, 10), (6, 12)];
const D_REMOVED: [(usize, usize); 4] = [(1, 2), (3, 4), (5, 6), (7, 8)];
const D_ADDED: [(usize, usize); 4] = [(1, 5), (3, 7), (2, 6), (4, 8)];

/// Phase 3 switchings of class A lower the double count; class B keep it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    A,
    B,
}

/// Which end of the double edge carries the extra pairs of a type II switching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub kind: SwitchKind,
    pub points: [u32; 12],
    /// Type II only.
    pub side: Side,
    /// Type II only: the mate of point 9 lies in the third vertex of its side
    /// (`u3` or `v3`) rather than the second.
    pub ten_in_third: bool,
}

impl Candidate {
    pub fn new(kind: SwitchKind, pts: &[u32]) -> Candidate {
        let mut points = [u32::MAX; 12];
        points[..pts.len()].copy_from_slice(pts);
        Candidate {
            kind,
            points,
            side: Side::U,
            ten_in_third: true,
        }
    }

    pub fn pt(&self, label: usize) -> u32 {
        self.points[label - 1]
    }

    fn labelled(&self) -> &[u32] {
        &self.points[..self.kind.labels()]
    }

    fn pair_list(&self, table: &[(usize, usize)]) -> Vec<(u32, u32)> {
        table.iter().map(|&(a, b)| (self.pt(a), self.pt(b))).collect()
    }

    /// Point pairs removed and added by the switching.
    pub fn delta(&self) -> Delta {
        let (rem, add) = self.kind.pairs();
        Delta {
            removed: self.pair_list(rem),
            added: self.pair_list(add),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Invalid,
    /// `delta` is the change in the phase statistic (-1, 0 or +1).
    Valid { class: Class, delta: i32 },
}

impl Outcome {
    pub fn is_valid(self) -> bool {
        matches!(self, Outcome::Valid { .. })
    }
}

/// Point pairs exchanged by one switching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    pub removed: Vec<(u32, u32)>,
    pub added: Vec<(u32, u32)>,
}

impl Delta {
    pub fn removed_vertices(&self, d: usize) -> Vec<(u32, u32)> {
        self.removed.iter().map(|&(a, b)| (a / d as u32, b / d as u32)).collect()
    }

    pub fn added_vertices(&self, d: usize) -> Vec<(u32, u32)> {
        self.added.iter().map(|&(a, b)| (a / d as u32, b / d as u32)).collect()
    }

    pub fn inverse(&self) -> Delta {
        Delta {
            removed: self.added.clone(),
            added: self.removed.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Phase {
    Loops,
    Triples,
    Doubles,
}

impl Phase {
    pub fn number(self) -> u8 {
        match self {
            Phase::Loops => 1,
            Phase::Triples => 2,
            Phase::Doubles => 3,
        }
    }
}

fn all_distinct<T: Ord + Copy>(xs: &[T]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

fn structurally_sound(p: &Pairing, c: &Candidate) -> bool {
    let pts = c.labelled();
    if pts.iter().any(|&x| x as usize >= p.points()) || !all_distinct(pts) {
        return false;
    }
    let (rem, _) = c.kind.pairs();
    if !rem.iter().all(|&(a, b)| p.mate(c.pt(a)) == c.pt(b)) {
        return false;
    }
    if c.kind == SwitchKind::TypeII {
        return p.mate(c.pt(9)) == c.pt(10) && p.mate(c.pt(12)) == c.pt(11);
    }
    true
}

/// Decides whether `c` is a valid switching of `p`, and if so its class.
pub fn validate(p: &Pairing, c: &Candidate) -> Outcome {
    if !structurally_sound(p, c) {
        return Outcome::Invalid;
    }
    let v = |k: usize| p.vertex(c.pt(k));
    let m = |a: u32, b: u32| p.mult(a, b);
    match c.kind {
        SwitchKind::Loop => {
            let v1 = v(1);
            let (v2, v3, v4, v5) = (v(3), v(4), v(5), v(6));
            let ok = v(2) == v1
                && m(v1, v1) == 1
                && all_distinct(&[v1, v2, v3, v4, v5])
                && m(v2, v3) == 1
                && m(v4, v5) == 1
                && m(v1, v2) == 0
                && m(v3, v5) == 0
                && m(v1, v4) == 0;
            if ok {
                Outcome::Valid { class: Class::A, delta: -1 }
            } else {
                Outcome::Invalid
            }
        }
        SwitchKind::Triple => {
            let (v1, v2) = (v(1), v(2));
            let leaves = [v(7), v(8), v(9), v(10), v(11), v(12)];
            let mut all = vec![v1, v2];
            all.extend_from_slice(&leaves);
            let ok = v(3) == v1
                && v(5) == v1
                && v(4) == v2
                && v(6) == v2
                && all_distinct(&all)
                && m(v1, v2) == 3
                && leaves.chunks(2).all(|e| m(e[0], e[1]) == 1)
                && leaves.chunks(2).all(|e| m(v1, e[0]) == 0 && m(v2, e[1]) == 0);
            if ok {
                Outcome::Valid { class: Class::A, delta: -1 }
            } else {
                Outcome::Invalid
            }
        }
        SwitchKind::TypeI | SwitchKind::TypeII => {
            let (u1, v1) = (v(1), v(2));
            let (u2, v2, u3, v3) = (v(5), v(6), v(7), v(8));
            if v(3) != u1 || v(4) != v1 || m(u1, v1) != 2 || !all_distinct(&[u1, v1, u2, v2, u3, v3]) {
                return Outcome::Invalid;
            }
            if m(u2, v2) != 1 || m(u3, v3) != 1 {
                return Outcome::Invalid;
            }
            let new = [m(u1, u2), m(u1, u3), m(v1, v2), m(v1, v3)];
            if c.kind == SwitchKind::TypeI {
                if new.iter().any(|&x| x > 1) {
                    return Outcome::Invalid;
                }
                return match new.iter().filter(|&&x| x == 1).count() {
                    0 => Outcome::Valid { class: Class::A, delta: -1 },
                    1 => Outcome::Valid { class: Class::B, delta: 0 },
                    _ => Outcome::Invalid,
                };
            }
            let (base, second, third, want) = match c.side {
                Side::U => (u1, u2, u3, [1, 1, 0, 0]),
                Side::V => (v1, v2, v3, [0, 0, 1, 1]),
            };
            let (ten, eleven) = if c.ten_in_third { (third, second) } else { (second, third) };
            let ok = v(9) == base && v(12) == base && v(10) == ten && v(11) == eleven && new == want;
            if ok {
                Outcome::Valid { class: Class::B, delta: 1 }
            } else {
                Outcome::Invalid
            }
        }
    }
}

/// Validates and performs the switching.
pub fn apply(p: &mut Pairing, c: &Candidate) -> Result<(Outcome, Delta)> {
    let out = validate(p, c);
    if !out.is_valid() {
        return Err(Error::InvalidApply);
    }
    let delta = c.delta();
    p.rewire(&delta.removed, &delta.added)?;
    Ok((out, delta))
}

/// Size of the uniform forward candidate space for `kind` at `p`.
pub fn space_size(p: &Pairing, kind: SwitchKind) -> u128 {
    let m1 = p.points() as u128;
    let d = p.d() as u128;
    let reg = p.registry();
    match kind {
        SwitchKind::Loop => 2 * reg.loops().len() as u128 * m1 * m1,
        SwitchKind::Triple => 12 * reg.triples().len() as u128 * m1 * m1 * m1,
        SwitchKind::TypeI => {
            let i = reg.doubles().len() as u128;
            let free = m1 - 4 * i;
            4 * i * free * free
        }
        SwitchKind::TypeII => {
            if d < 4 {
                return 0;
            }
            let i = reg.doubles().len() as u128;
            16 * i * (d - 2) * (d - 3) * (d - 1) * (d - 1)
        }
    }
}

/// The `idx`-th labelled loop, `idx < 2 * loops`: points 1 and 2.
fn labelled_loop(p: &Pairing, idx: usize) -> (u32, u32) {
    let v = p.registry().loops().get(idx / 2);
    let a = p.bin(v).find(|&q| p.vertex(p.mate(q)) == v).expect("loop vertex without loop");
    let b = p.mate(a);
    if idx % 2 == 0 {
        (a, b)
    } else {
        (b, a)
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The `idx`-th labelled triple, `idx < 12 * triples`: points 1..6.
fn labelled_triple(p: &Pairing, idx: usize) -> [u32; 6] {
    let (a, b) = p.registry().triples().get(idx / 12);
    let r = idx % 12;
    let (v1, v2) = if r < 6 { (a, b) } else { (b, a) };
    let pts: Vec<u32> = p.points_towards(v1, v2).collect();
    let perm = PERMS3[r % 6];
    let odd = [pts[perm[0]], pts[perm[1]], pts[perm[2]]];
    [odd[0], p.mate(odd[0]), odd[1], p.mate(odd[1]), odd[2], p.mate(odd[2])]
}

/// The `idx`-th labelled double, `idx < 4 * doubles`: points 1..4.
fn labelled_double(p: &Pairing, idx: usize) -> [u32; 4] {
    let (a, b) = p.registry().doubles().get(idx / 4);
    let r = idx % 4;
    let (u1, v1) = if r < 2 { (a, b) } else { (b, a) };
    let mut it = p.points_towards(u1, v1);
    let (x, y) = (it.next().unwrap(), it.next().unwrap());
    let (one, three) = if r % 2 == 0 { (x, y) } else { (y, x) };
    [one, p.mate(one), three, p.mate(three)]
}

fn in_double_pair(p: &Pairing, q: u32) -> bool {
    p.mult(p.vertex(q), p.vertex(p.mate(q))) == 2
}

/// The `k`-th point of bin `v` skipping `excl`.
fn nth_excluding(p: &Pairing, v: u32, excl: &[u32], mut k: usize) -> u32 {
    for q in p.bin(v) {
        if excl.contains(&q) {
            continue;
        }
        if k == 0 {
            return q;
        }
        k -= 1;
    }
    unreachable!("index beyond bin")
}

fn type_ii_candidate(
    p: &Pairing,
    dbl: [u32; 4],
    side: Side,
    ten_in_third: bool,
    k9: usize,
    k12: usize,
    k_second: usize,
    k_third: usize,
) -> Candidate {
    let [one, two, three, four] = dbl;
    let base_excl = match side {
        Side::U => [one, three],
        Side::V => [two, four],
    };
    let base = p.vertex(base_excl[0]);
    let nine = nth_excluding(p, base, &base_excl, k9);
    let twelve = nth_excluding(p, base, &[base_excl[0], base_excl[1], nine], k12);
    let ten = p.mate(nine);
    let eleven = p.mate(twelve);
    // the point of the side's second / third vertex already used by {9,10} or {11,12}
    let (in_second, in_third) = if ten_in_third { (eleven, ten) } else { (ten, eleven) };
    let second = nth_excluding(p, p.vertex(in_second), &[in_second], k_second);
    let third = nth_excluding(p, p.vertex(in_third), &[in_third], k_third);
    let (five, six, seven, eight) = match side {
        Side::U => (second, p.mate(second), third, p.mate(third)),
        Side::V => (p.mate(second), second, p.mate(third), third),
    };
    let mut c = Candidate::new(
        SwitchKind::TypeII,
        &[one, two, three, four, five, six, seven, eight, nine, ten, eleven, twelve],
    );
    c.side = side;
    c.ten_in_third = ten_in_third;
    c
}

const FREE_POINT_RETRIES: u32 = 1_000_000;

/// Draws a candidate uniformly from the forward space of `kind`.
pub fn sample_candidate<R: Rng + ?Sized>(p: &Pairing, kind: SwitchKind, rng: &mut R) -> Result<Candidate> {
    let reg = p.registry();
    let m1 = p.points() as u32;
    let d = p.d();
    let any_pair = |rng: &mut R| {
        let a = rng.random_range(0..m1);
        (a, p.mate(a))
    };
    match kind {
        SwitchKind::Loop => {
            if reg.loops().is_empty() {
                return Err(Error::NoAnchor("L"));
            }
            let (one, two) = labelled_loop(p, rng.random_range(0..2 * reg.loops().len()));
            let (three, four) = any_pair(rng);
            let (five, six) = any_pair(rng);
            Ok(Candidate::new(kind, &[one, two, three, four, five, six]))
        }
        SwitchKind::Triple => {
            if reg.triples().is_empty() {
                return Err(Error::NoAnchor("T"));
            }
            let t = labelled_triple(p, rng.random_range(0..12 * reg.triples().len()));
            let mut pts = t.to_vec();
            for _ in 0..3 {
                let (a, b) = any_pair(rng);
                pts.push(a);
                pts.push(b);
            }
            Ok(Candidate::new(kind, &pts))
        }
        SwitchKind::TypeI => {
            if reg.doubles().is_empty() {
                return Err(Error::NoAnchor("I"));
            }
            if 4 * reg.doubles().len() >= p.points() {
                return Err(Error::NoAnchor("I"));
            }
            let dbl = labelled_double(p, rng.random_range(0..4 * reg.doubles().len()));
            let mut free = || -> Result<(u32, u32)> {
                for _ in 0..FREE_POINT_RETRIES {
                    let a = rng.random_range(0..m1);
                    if !in_double_pair(p, a) {
                        return Ok((a, p.mate(a)));
                    }
                }
                Err(Error::RetryCapExceeded(FREE_POINT_RETRIES as u64))
            };
            let (five, six) = free()?;
            let (seven, eight) = free()?;
            Ok(Candidate::new(kind, &[dbl[0], dbl[1], dbl[2], dbl[3], five, six, seven, eight]))
        }
        SwitchKind::TypeII => {
            if reg.doubles().is_empty() || d < 4 {
                return Err(Error::NoAnchor("II"));
            }
            let dbl = labelled_double(p, rng.random_range(0..4 * reg.doubles().len()));
            let side = if rng.random_bool(0.5) { Side::U } else { Side::V };
            let ten_in_third = rng.random_bool(0.5);
            Ok(type_ii_candidate(
                p,
                dbl,
                side,
                ten_in_third,
                rng.random_range(0..d - 2),
                rng.random_range(0..d - 3),
                rng.random_range(0..d - 1),
                rng.random_range(0..d - 1),
            ))
        }
    }
}

/// Calls `f` on every candidate of the forward space, each exactly once.
pub fn for_each_candidate(p: &Pairing, kind: SwitchKind, mut f: impl FnMut(&Candidate)) {
    let reg = p.registry();
    let m1 = p.points() as u32;
    let d = p.d();
    match kind {
        SwitchKind::Loop => {
            for idx in 0..2 * reg.loops().len() {
                let (one, two) = labelled_loop(p, idx);
                for three in 0..m1 {
                    for five in 0..m1 {
                        f(&Candidate::new(kind, &[one, two, three, p.mate(three), five, p.mate(five)]));
                    }
                }
            }
        }
        SwitchKind::Triple => {
            for idx in 0..12 * reg.triples().len() {
                let t = labelled_triple(p, idx);
                for a in 0..m1 {
                    for b in 0..m1 {
                        for c in 0..m1 {
                            let pts = [t[0], t[1], t[2], t[3], t[4], t[5], a, p.mate(a), b, p.mate(b), c, p.mate(c)];
                            f(&Candidate::new(kind, &pts));
                        }
                    }
                }
            }
        }
        SwitchKind::TypeI => {
            let free: Vec<u32> = (0..m1).filter(|&q| !in_double_pair(p, q)).collect();
            for idx in 0..4 * reg.doubles().len() {
                let dbl = labelled_double(p, idx);
                for &five in &free {
                    for &seven in &free {
                        let pts = [dbl[0], dbl[1], dbl[2], dbl[3], five, p.mate(five), seven, p.mate(seven)];
                        f(&Candidate::new(kind, &pts));
                    }
                }
            }
        }
        SwitchKind::TypeII => {
            if d < 4 {
                return;
            }
            for idx in 0..4 * reg.doubles().len() {
                let dbl = labelled_double(p, idx);
                for side in [Side::U, Side::V] {
                    for ten_in_third in [true, false] {
                        for k9 in 0..d - 2 {
                            for k12 in 0..d - 3 {
                                for k2 in 0..d - 1 {
                                    for k3 in 0..d - 1 {
                                        f(&type_ii_candidate(p, dbl, side, ten_in_third, k9, k12, k2, k3));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Number of valid forward switchings of `kind` at `p`, by full enumeration.
pub fn count_f_bruteforce(p: &Pairing, kind: SwitchKind, budget: u128) -> Result<u128> {
    check_budget(space_size(p, kind), budget)?;
    let mut count = 0u128;
    for_each_candidate(p, kind, |c| {
        if validate(p, c).is_valid() {
            count += 1;
        }
    });
    Ok(count)
}

/// Number of valid forward switchings of each class at `p`: `(A, B)`.
pub fn count_f_by_class(p: &Pairing, kind: SwitchKind, budget: u128) -> Result<(u128, u128)> {
    check_budget(space_size(p, kind), budget)?;
    let (mut a, mut b) = (0u128, 0u128);
    for_each_candidate(p, kind, |c| match validate(p, c) {
        Outcome::Valid { class: Class::A, .. } => a += 1,
        Outcome::Valid { class: Class::B, .. } => b += 1,
        Outcome::Invalid => {}
    });
    Ok((a, b))
}

/// Ordered k-tuples of distinct points in `v`'s bin.
fn ordered_tuples(p: &Pairing, v: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for q in p.bin(v) {
                if !t.contains(&q) {
                    let mut t2 = t.clone();
                    t2.push(q);
                    next.push(t2);
                }
            }
        }
        out = next;
    }
    out
}

/// Reverse-enumeration count of the switchings of the given phase and class
/// that produce `p`.
pub fn count_b_bruteforce(p: &Pairing, phase: Phase, class: Class, budget: u128) -> Result<u128> {
    let (n, d) = (p.n() as u32, p.d());
    let m1 = p.points() as u128;
    let m2 = p.n() as u128 * (d as u128) * (d as u128).saturating_sub(1);
    let m3 = m2 * (d as u128).saturating_sub(2);
    let mut scratch = p.clone();
    let mut count = 0u128;
    // Undo the switching on `scratch`, run `check`, restore.
    let mut visit = |removed: &[(u32, u32)], added: &[(u32, u32)], check: &mut dyn FnMut(&Pairing) -> u128| {
        scratch.rewire(removed, added).expect("reverse labelling uses present pairs");
        count += check(&scratch);
        scratch.rewire(added, removed).expect("restore");
    };
    match (phase, class) {
        (Phase::Loops | Phase::Triples, Class::B) => return Ok(0),
        (Phase::Loops, Class::A) => {
            check_budget(m2 * m1, budget)?;
            for v1 in 0..n {
                for t in ordered_tuples(p, v1, 2) {
                    let (one, two) = (t[0], t[1]);
                    let (three, five) = (p.mate(one), p.mate(two));
                    for four in 0..m1 as u32 {
                        let six = p.mate(four);
                        let pts = [one, two, three, four, five, six];
                        if !all_distinct(&pts) {
                            continue;
                        }
                        let c = Candidate::new(SwitchKind::Loop, &pts);
                        let d = c.delta();
                        visit(&d.added, &d.removed, &mut |q| validate(q, &c).is_valid() as u128);
                    }
                }
            }
        }
        (Phase::Triples, Class::A) => {
            check_budget(m3 * m3, budget)?;
            for v1 in 0..n {
                let t1 = ordered_tuples(p, v1, 3);
                for v2 in 0..n {
                    for t2 in ordered_tuples(p, v2, 3) {
                        for a in &t1 {
                            let pts = [a[0], t2[0], a[1], t2[1], a[2], t2[2], p.mate(a[0]), p.mate(t2[0]), p.mate(a[1]), p.mate(t2[1]), p.mate(a[2]), p.mate(t2[2])];
                            if !all_distinct(&pts) {
                                continue;
                            }
                            let c = Candidate::new(SwitchKind::Triple, &pts);
                            let d = c.delta();
                            visit(&d.added, &d.removed, &mut |q| validate(q, &c).is_valid() as u128);
                        }
                    }
                }
            }
        }
        (Phase::Doubles, class) => {
            check_budget(m2 * m2, budget)?;
            for u1 in 0..n {
                let t1 = ordered_tuples(p, u1, 2);
                for v1 in 0..n {
                    for t2 in ordered_tuples(p, v1, 2) {
                        for a in &t1 {
                            let (one, three, two, four) = (a[0], a[1], t2[0], t2[1]);
                            let pts = [one, two, three, four, p.mate(one), p.mate(two), p.mate(three), p.mate(four)];
                            if !all_distinct(&pts) {
                                continue;
                            }
                            let c = Candidate::new(SwitchKind::TypeI, &pts);
                            let delta = c.delta();
                            visit(&delta.added, &delta.removed, &mut |q| match (validate(q, &c), class) {
                                (Outcome::Valid { class: Class::A, .. }, Class::A) => 1,
                                (Outcome::Valid { class: Class::B, .. }, Class::B) => 1,
                                (_, Class::B) => type_ii_preimages(q, &c),
                                _ => 0,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Valid type II labellings of the d-switching `c` in the pre-image `q`.
fn type_ii_preimages(q: &Pairing, c: &Candidate) -> u128 {
    let v = |k: usize| q.vertex(c.pt(k));
    let mut total = 0;
    for side in [Side::U, Side::V] {
        let (base, second, third) = match side {
            Side::U => (v(1), v(5), v(7)),
            Side::V => (v(2), v(6), v(8)),
        };
        if q.mult(base, second) != 1 || q.mult(base, third) != 1 {
            continue;
        }
        let to_second = q.points_towards(base, second).next().unwrap();
        let to_third = q.points_towards(base, third).next().unwrap();
        for ten_in_third in [true, false] {
            let (nine, twelve) = if ten_in_third { (to_third, to_second) } else { (to_second, to_third) };
            let mut pts = c.points;
            pts[8] = nine;
            pts[9] = q.mate(nine);
            pts[10] = q.mate(twelve);
            pts[11] = twelve;
            let mut cand = Candidate::new(SwitchKind::TypeII, &pts);
            cand.side = side;
            cand.ten_in_third = ten_in_third;
            total += validate(q, &cand).is_valid() as u128;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    // double 0-1, singles 2-3 and 4-5, fillers and loops to reach degree 3
    fn d_switch_fixture() -> Pairing {
        Pairing::from_multigraph(
            8,
            3,
            &[(0, 1), (0, 1), (2, 3), (4, 5), (0, 6), (1, 7), (2, 6), (2, 7), (3, 6), (3, 7), (4, 4), (5, 5)],
        )
        .unwrap()
    }

    fn candidate_for(p: &Pairing) -> Candidate {
        // 0 and 1 are the double; 5-6 in u2-v2 = 2-3; 7-8 in u3-v3 = 4-5
        let one = p.points_towards(0, 1).next().unwrap();
        let three = p.points_towards(0, 1).nth(1).unwrap();
        let five = p.points_towards(2, 3).next().unwrap();
        let seven = p.points_towards(4, 5).next().unwrap();
        Candidate::new(
            SwitchKind::TypeI,
            &[one, p.mate(one), three, p.mate(three), five, p.mate(five), seven, p.mate(seven)],
        )
    }

    #[test]
    fn class_a_d_switching() {
        let mut p = d_switch_fixture();
        let c = candidate_for(&p);
        assert_eq!(validate(&p, &c), Outcome::Valid { class: Class::A, delta: -1 });
        let before = p.summary().doubles;
        apply(&mut p, &c).unwrap();
        assert_eq!(p.summary().doubles, before - 1);
        for (a, b) in [(0, 2), (0, 4), (1, 3), (1, 5)] {
            assert_eq!(p.mult(a, b), 1);
        }
    }

    #[test]
    fn class_b_when_one_new_edge_doubles() {
        // add edge 0-2 so u1u2 already exists
        let p = Pairing::from_multigraph(
            8,
            3,
            &[(0, 1), (0, 1), (2, 3), (4, 5), (0, 2), (1, 7), (2, 6), (3, 6), (3, 7), (4, 6), (4, 7), (5, 5)],
        )
        .unwrap();
        let c = candidate_for(&p);
        assert_eq!(validate(&p, &c), Outcome::Valid { class: Class::B, delta: 0 });
    }

    #[test]
    fn invalid_when_two_doubles_created() {
        // u1u2 and v1v3 both present
        let p = Pairing::from_multigraph(
            8,
            3,
            &[(0, 1), (0, 1), (2, 3), (4, 5), (0, 2), (1, 5), (2, 6), (3, 6), (3, 7), (4, 6), (4, 7), (5, 7)],
        )
        .unwrap();
        let c = candidate_for(&p);
        assert_eq!(validate(&p, &c), Outcome::Invalid);
    }

    #[test]
    fn apply_rejects_invalid() {
        let mut p = d_switch_fixture();
        let mut c = candidate_for(&p);
        c.points.swap(4, 6);
        assert_eq!(apply(&mut p, &c).unwrap_err(), Error::InvalidApply);
    }

    #[test]
    fn space_sizes_match_enumeration() {
        let p = d_switch_fixture();
        for kind in [SwitchKind::Loop, SwitchKind::TypeI] {
            let mut k = 0u128;
            for_each_candidate(&p, kind, |_| k += 1);
            assert_eq!(k, space_size(&p, kind));
        }
    }

    #[test]
    fn no_anchor_errors() {
        let k4 = Pairing::from_multigraph(4, 3, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut rng = stream_rng(3, 0);
        for kind in [SwitchKind::Loop, SwitchKind::Triple, SwitchKind::TypeI, SwitchKind::TypeII] {
            assert!(matches!(sample_candidate(&k4, kind, &mut rng), Err(Error::NoAnchor(_))));
        }
    }

    #[test]
    fn reverse_count_sees_inverse_of_applied_switch() {
        let mut p = d_switch_fixture();
        let c = candidate_for(&p);
        apply(&mut p, &c).unwrap();
        assert!(count_b_bruteforce(&p, Phase::Doubles, Class::A, u128::MAX).unwrap() >= 1);
    }
}
