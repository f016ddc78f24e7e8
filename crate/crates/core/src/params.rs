//! Switching-count bounds for every phase, and the linear system fixing the
//! phase-3 type probabilities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pairing::{compute_bounds, nominal_bounds, PhaseBounds};

/// Falling factorial `n [d]_k`: the number of ordered k-stars of points at one vertex.
pub fn m_k(n: usize, d: usize, k: usize) -> u128 {
    (0..k).fold(n as u128, |acc, j| acc * (d as u128).saturating_sub(j as u128))
}

/// Smallest admissible epsilon, or `None` when the conditions cannot hold.
/// Zero for d = 2, 3.
pub fn feasible_epsilon(n: usize, d: usize, gamma: f64) -> Option<f64> {
    if d < 2 {
        return None;
    }
    let (nf, df) = (n as f64, d as f64);
    let dn = df * nf;
    let sq = (df - 1.0) * (df - 1.0);
    let inner = dn - 7.0 * df * df + 7.0 * df - 10.0 - 4.0 * gamma * sq;
    if inner <= 0.0 {
        return None;
    }
    let eps = 4.0 * (1.0 + gamma) * sq * (df - 2.0) * (df - 3.0) / (dn * inner);
    (eps < 1.0).then_some(eps)
}

/// Least n with `feasible_epsilon(n, d, gamma)` defined, searching up to `limit`.
pub fn feasibility_threshold(d: usize, gamma: f64, limit: usize) -> Option<usize> {
    (d + 1..=limit).find(|&n| (n * d) % 2 == 0 && feasible_epsilon(n, d, gamma).is_some())
}

fn clamp(x: i128) -> u128 {
    x.max(0) as u128
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopTables {
    pub m_up_l: Vec<u128>,
    pub m_lo_a: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleTables {
    pub m_up_t: Vec<u128>,
    pub m_lo_a: Vec<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleTables {
    pub m_up_i: Vec<u128>,
    pub m_up_ii: Vec<u128>,
    pub m_lo_a: Vec<u128>,
    pub m_lo_b: Vec<u128>,
}

/// Upper bounds on forward counts and lower bounds on backward counts, indexed
/// by the stratum `i` (loops, triples or doubles remaining).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseTables {
    pub n: usize,
    pub d: usize,
    pub bounds: PhaseBounds,
    pub m1: u128,
    pub m2: u128,
    pub m3: u128,
    pub loops: LoopTables,
    pub triples: TripleTables,
    pub doubles: DoubleTables,
}

impl PhaseTables {
    pub fn new(n: usize, d: usize, bounds: PhaseBounds) -> PhaseTables {
        let (m1, m2, m3) = (m_k(n, d, 1), m_k(n, d, 2), m_k(n, d, 3));
        let (m1s, m2s, m3s) = (m1 as i128, m2 as i128, m3 as i128);
        let di = d as i128;
        let (bd, bt) = (bounds.b_d as i128, bounds.b_t as i128);

        let loops = LoopTables {
            m_up_l: (0..=bounds.b_l).map(|i| 2 * i as u128 * m1 * m1).collect(),
            m_lo_a: (0..=bounds.b_l)
                .map(|i| clamp(m2s * m1s - 2 * di * m1s * (3 * i as i128 + 6 * bd + 9 * bt + 3 * di + di * di)))
                .collect(),
        };
        let triples = TripleTables {
            m_up_t: (0..=bounds.b_t).map(|i| 12 * i as u128 * m1 * m1 * m1).collect(),
            m_lo_a: (0..=bounds.b_t)
                .map(|i| clamp(m3s * m3s - 4 * m3s * di * di * (6 * bd + 9 * i as i128 + 4 * di + di * di)))
                .collect(),
        };
        let doubles = DoubleTables {
            m_up_i: (0..=bounds.b_d)
                .map(|i| {
                    let free = m1s - 4 * i as i128;
                    if free < 0 {
                        0
                    } else {
                        4 * i as u128 * (free * free) as u128
                    }
                })
                .collect(),
            m_up_ii: (0..=bounds.b_d)
                .map(|i| clamp(16 * i as i128 * (di - 1) * (di - 1) * (di - 2) * (di - 3)))
                .collect(),
            m_lo_a: (0..=bounds.b_d)
                .map(|i| clamp(m2s * m2s - m2s * (di - 1) * (16 * i as i128 + 3 * di * di + di + 6)))
                .collect(),
            m_lo_b: (0..=bounds.b_d)
                .map(|i| {
                    let i = i as i128;
                    clamp(16 * i * (di - 2) * m2s - 16 * i * di * (8 * i * di + 9 * di * di + 3 * di * di * di))
                })
                .collect(),
        };
        PhaseTables {
            n,
            d,
            bounds,
            m1,
            m2,
            m3,
            loops,
            triples,
            doubles,
        }
    }
}

/// Type probabilities for phase 3 and the expected-visit solution `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoSolution {
    pub epsilon: f64,
    pub rho_i: Vec<f64>,
    pub rho_ii: Vec<f64>,
    pub x: Vec<f64>,
}

impl RhoSolution {
    pub fn trivial(epsilon: f64) -> RhoSolution {
        RhoSolution {
            epsilon,
            rho_i: vec![0.0],
            rho_ii: vec![0.0],
            x: vec![1.0],
        }
    }

    pub fn i1(&self) -> usize {
        self.x.len() - 1
    }
}

const RESIDUAL_TOL: f64 = 1e-12;

fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
}

pub fn solve_rho_system(tables: &PhaseTables, i1: usize, epsilon: f64) -> Result<RhoSolution> {
    if i1 == 0 {
        return Ok(RhoSolution::trivial(epsilon));
    }
    let t = &tables.doubles;
    if t.m_up_i.len() <= i1 {
        return Err(Error::InfeasibleSystem(format!("tables stop before i1 = {i1}")));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InfeasibleSystem(format!("epsilon {epsilon} outside [0, 1)")));
    }
    let f = |v: u128| v as f64;
    let keep = 1.0 - epsilon;
    for i in 1..=i1 {
        if t.m_lo_b[i] >= t.m_up_i[i] {
            return Err(Error::InfeasibleSystem(format!("m_lo_B({i}) >= m_up_I({i})")));
        }
    }
    let stay = |j: usize| 1.0 - keep * f(t.m_lo_b[j]) / f(t.m_up_i[j]);
    let up = |j: usize| keep * f(t.m_lo_a[j]) / f(t.m_up_i[j + 1]);

    let mut x = vec![0.0; i1 + 1];
    x[i1] = 1.0 / stay(i1);
    for j in (1..i1).rev() {
        x[j] = (1.0 + x[j + 1] * up(j)) / stay(j);
    }
    x[0] = 1.0 + x[1] * up(0);

    let mut rho_i = vec![keep; i1 + 1];
    rho_i[0] = 0.0;
    let mut rho_ii = vec![0.0; i1 + 1];
    for j in 1..i1 {
        rho_ii[j] = keep * (x[j + 1] / x[j]) * (f(t.m_up_ii[j]) / f(t.m_up_i[j + 1]));
    }
    let sol = RhoSolution {
        epsilon,
        rho_i,
        rho_ii,
        x,
    };
    let worst = sol.max_residual(tables);
    if !(worst <= RESIDUAL_TOL) {
        return Err(Error::InfeasibleSystem(format!("residual {worst:e}")));
    }
    for j in 0..=i1 {
        let (a, b) = (sol.rho_i[j], sol.rho_ii[j]);
        if !(a >= 0.0 && b >= 0.0 && a + b <= 1.0 && b <= epsilon && sol.x[j] >= 1.0) {
            return Err(Error::InfeasibleSystem(format!(
                "rho_I({j}) = {a}, rho_II({j}) = {b}, x({j}) = {} with epsilon = {epsilon}",
                sol.x[j]
            )));
        }
    }
    Ok(sol)
}

impl RhoSolution {
    /// Largest relative residual over the defining equations: the interior
    /// recurrence, both boundary equations, the rho_II relation and the
    /// initial conditions.
    pub fn max_residual(&self, tables: &PhaseTables) -> f64 {
        let i1 = self.i1();
        if i1 == 0 {
            return rel(self.x[0], 1.0);
        }
        let t = &tables.doubles;
        let f = |v: u128| v as f64;
        let (x, ri, rii) = (&self.x, &self.rho_i, &self.rho_ii);
        let mut worst: f64 = 0.0;
        // boundary at i1
        worst = worst.max(rel(x[i1], 1.0 + x[i1] * ri[i1] * f(t.m_lo_b[i1]) / f(t.m_up_i[i1])));
        // interior
        for j in 1..i1 {
            let rhs = 1.0 + x[j] * ri[j] * f(t.m_lo_b[j]) / f(t.m_up_i[j]) + x[j + 1] * ri[j + 1] * f(t.m_lo_a[j]) / f(t.m_up_i[j + 1]);
            worst = worst.max(rel(x[j], rhs));
        }
        // boundary at 0
        worst = worst.max(rel(x[0], 1.0 + x[1] * ri[1] * f(t.m_lo_a[0]) / f(t.m_up_i[1])));
        // rho_II relation: x_j rho_II(j) / m_up_II(j) = x_{j+1} rho_I(j+1) / m_up_I(j+1)
        for j in 1..i1 {
            let lhs = x[j] * rii[j];
            let rhs = x[j + 1] * ri[j + 1] * f(t.m_up_ii[j]) / f(t.m_up_i[j + 1]);
            worst = worst.max(rel(lhs, rhs));
        }
        // initial conditions
        worst = worst.max(ri[0].abs()).max(rii[0].abs()).max(rii[i1].abs());
        worst
    }
}

/// Everything the exact sampler needs for one `(n, d, gamma)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelParams {
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    pub epsilon: Option<f64>,
    pub nominal_b_d: usize,
    pub tables: PhaseTables,
    pub rho: RhoSolution,
}

impl ModelParams {
    pub fn new(n: usize, d: usize, gamma: f64) -> Result<ModelParams> {
        ModelParams::with_epsilon(n, d, gamma, None)
    }

    /// As `new`, but with an explicit epsilon in place of the smallest admissible one.
    pub fn with_epsilon(n: usize, d: usize, gamma: f64, eps_override: Option<f64>) -> Result<ModelParams> {
        let nominal = nominal_bounds(n, d, gamma)?;
        let mut bounds = compute_bounds(n, d, gamma)?;
        let epsilon = match eps_override {
            Some(e) if !(0.0..1.0).contains(&e) => {
                return Err(Error::InvalidParameters(format!("epsilon {e} outside [0, 1)")))
            }
            Some(e) if feasible_epsilon(n, d, gamma).is_some() => Some(e),
            _ => feasible_epsilon(n, d, gamma),
        };
        let mut tables = PhaseTables::new(n, d, bounds);
        let mut rho = RhoSolution::trivial(epsilon.unwrap_or(0.0));
        if bounds.b_d > 0 {
            match solve_rho_system(&tables, bounds.b_d, epsilon.unwrap_or(0.0)) {
                Ok(sol) => rho = sol,
                Err(_) => {
                    bounds.b_d = 0;
                    bounds.doubles_disallowed = true;
                    tables = PhaseTables::new(n, d, bounds);
                }
            }
        }
        Ok(ModelParams {
            n,
            d,
            gamma,
            epsilon,
            nominal_b_d: nominal.b_d,
            tables,
            rho,
        })
    }

    pub fn bounds(&self) -> &PhaseBounds {
        &self.tables.bounds
    }
}
