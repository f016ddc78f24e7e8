//! The samplers: exact REG with rejections, approximate REG*, and naive restart.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::pairing::{check_nd, compute_bounds, in_a_gamma, Graph, Pairing, PhaseBounds};
use crate::params::ModelParams;
use crate::path_index::{b_loops, b_triples, PathIndex};
use crate::switching::{
    apply, count_b_bruteforce, count_f_bruteforce, sample_candidate, space_size, validate, Class, Outcome, Phase,
    SwitchKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum Algorithm {
    Reg,
    Regstar,
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RejectionKind {
    Initial,
    T,
    F,
    B,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RejectionCounts {
    pub initial: u64,
    pub t: u64,
    pub f: u64,
    pub b: u64,
}

impl RejectionCounts {
    fn add(&mut self, kind: RejectionKind) {
        match kind {
            RejectionKind::Initial => self.initial += 1,
            RejectionKind::T => self.t += 1,
            RejectionKind::F => self.f += 1,
            RejectionKind::B => self.b += 1,
        }
    }

    fn merge(&mut self, o: &RejectionCounts) {
        self.initial += o.initial;
        self.t += o.t;
        self.f += o.f;
        self.b += o.b;
    }

    pub fn total(&self) -> u64 {
        self.initial + self.t + self.f + self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub kind: RejectionKind,
    /// 0 for the initial stage.
    pub phase: u8,
    /// Switching steps already accepted in that phase.
    pub step: u64,
}

/// Counters for one or more sampler runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub attempts: u64,
    pub rejections: RejectionCounts,
    /// Rejections split by phase 1, 2, 3 (initial rejections are not in any phase).
    pub phase_rejections: [RejectionCounts; 3],
    /// Accepted switchings per phase.
    pub phase_steps: [u64; 3],
    /// Attempts that entered each phase, and the loops, triples or doubles
    /// they brought into it.
    pub phase_entered: [u64; 3],
    pub phase_start: [u64; 3],
    /// REG* only: attempts abandoned because no valid switching existed.
    pub restarts: u64,
    pub last_rejection: Option<Rejection>,
    pub seconds: f64,
}

impl RunReport {
    fn enter(&mut self, phase: u8, i: usize) {
        self.phase_entered[phase as usize - 1] += 1;
        self.phase_start[phase as usize - 1] += i as u64;
    }

    fn reject(&mut self, kind: RejectionKind, phase: u8, step: u64) {
        self.rejections.add(kind);
        if phase > 0 {
            self.phase_rejections[phase as usize - 1].add(kind);
        }
        self.last_rejection = Some(Rejection { kind, phase, step });
    }

    pub fn merge(&mut self, o: &RunReport) {
        self.attempts += o.attempts;
        self.rejections.merge(&o.rejections);
        for k in 0..3 {
            self.phase_rejections[k].merge(&o.phase_rejections[k]);
            self.phase_steps[k] += o.phase_steps[k];
            self.phase_entered[k] += o.phase_entered[k];
            self.phase_start[k] += o.phase_start[k];
        }
        self.restarts += o.restarts;
        self.last_rejection = o.last_rejection.or(self.last_rejection);
        self.seconds += o.seconds;
    }

    /// Equality of everything except wall time.
    pub fn same_counts(&self, o: &RunReport) -> bool {
        let mut a = self.clone();
        a.seconds = o.seconds;
        a == *o
    }

    /// The `--stats-out` document.
    pub fn stats_json(&self) -> serde_json::Value {
        json!({
            "attempts": self.attempts,
            "rejections": {
                "initial": self.rejections.initial,
                "t": self.rejections.t,
                "f": self.rejections.f,
                "b": self.rejections.b,
            },
            "phase_steps": self.phase_steps,
            "seconds": self.seconds,
        })
    }
}

/// How backward counts are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Brute force for `n <= 16`, otherwise the anchored counts and the path index.
    Auto,
    BruteForce,
    Index,
}

impl Backend {
    fn brute(self, n: usize) -> bool {
        match self {
            Backend::Auto => n <= 16,
            Backend::BruteForce => true,
            Backend::Index => false,
        }
    }
}

fn accept_b<R: Rng + ?Sized>(rng: &mut R, b: u128, m_lo: u128, phase: u8, stratum: usize) -> Result<bool> {
    if b < m_lo {
        return Err(Error::BoundViolation { phase, stratum, b, m_lo });
    }
    Ok(rng.random_range(0..b) < m_lo)
}

/// The exactly uniform sampler.
#[derive(Clone, Debug)]
pub struct RegSampler {
    params: ModelParams,
    backend: Backend,
}

impl RegSampler {
    pub fn new(n: usize, d: usize, gamma: f64) -> Result<RegSampler> {
        Ok(RegSampler {
            params: ModelParams::new(n, d, gamma)?,
            backend: Backend::Auto,
        })
    }

    pub fn with_params(params: ModelParams, backend: Backend) -> RegSampler {
        RegSampler { params, backend }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// One attempt: initial pairing then the three phases. `Ok(None)` on rejection.
    pub fn attempt<R: Rng + ?Sized>(&self, rng: &mut R, report: &mut RunReport) -> Result<Option<Pairing>> {
        let (n, d) = (self.params.n, self.params.d);
        report.attempts += 1;
        let mut p = Pairing::random(n, d, rng)?;
        if !in_a_gamma(&p, self.params.bounds()) {
            report.reject(RejectionKind::Initial, 0, 0);
            return Ok(None);
        }
        for phase in [Phase::Loops, Phase::Triples] {
            if !self.single_type_phase(&mut p, phase, rng, report)? {
                return Ok(None);
            }
        }
        if !self.double_phase(&mut p, rng, report)? {
            return Ok(None);
        }
        debug_assert!(p.is_simple());
        Ok(Some(p))
    }

    fn single_type_phase<R: Rng + ?Sized>(
        &self,
        p: &mut Pairing,
        phase: Phase,
        rng: &mut R,
        report: &mut RunReport,
    ) -> Result<bool> {
        let t = &self.params.tables;
        let (kind, lo) = match phase {
            Phase::Loops => (SwitchKind::Loop, &t.loops.m_lo_a),
            _ => (SwitchKind::Triple, &t.triples.m_lo_a),
        };
        let stat = |p: &Pairing| match phase {
            Phase::Loops => p.summary().loops,
            _ => p.summary().triples,
        };
        let ph = phase.number();
        report.enter(ph, stat(p));
        let mut steps = 0;
        loop {
            let i = stat(p);
            if i == 0 {
                return Ok(true);
            }
            let c = sample_candidate(p, kind, rng)?;
            if !validate(p, &c).is_valid() {
                report.reject(RejectionKind::F, ph, steps);
                return Ok(false);
            }
            apply(p, &c)?;
            let j = i - 1;
            let m_lo = lo[j];
            if m_lo == 0 {
                report.reject(RejectionKind::B, ph, steps);
                return Ok(false);
            }
            let b = if self.backend.brute(p.n()) {
                count_b_bruteforce(p, phase, Class::A, u128::MAX)?
            } else if phase == Phase::Loops {
                b_loops(p)
            } else {
                b_triples(p)
            };
            if !accept_b(rng, b, m_lo, ph, j)? {
                report.reject(RejectionKind::B, ph, steps);
                return Ok(false);
            }
            steps += 1;
            report.phase_steps[ph as usize - 1] += 1;
        }
    }

    fn double_phase<R: Rng + ?Sized>(&self, p: &mut Pairing, rng: &mut R, report: &mut RunReport) -> Result<bool> {
        report.enter(3, p.summary().doubles);
        if p.summary().doubles == 0 {
            return Ok(true);
        }
        let t = &self.params.tables.doubles;
        let rho = &self.params.rho;
        let brute = self.backend.brute(p.n());
        let mut idx = if brute { None } else { Some(PathIndex::init(p)) };
        let mut steps = 0;
        loop {
            let i = p.summary().doubles;
            if i == 0 {
                return Ok(true);
            }
            let u: f64 = rng.random();
            let kind = if u < rho.rho_i[i] {
                SwitchKind::TypeI
            } else if u < rho.rho_i[i] + rho.rho_ii[i] {
                SwitchKind::TypeII
            } else {
                report.reject(RejectionKind::T, 3, steps);
                return Ok(false);
            };
            let c = sample_candidate(p, kind, rng)?;
            let class = match validate(p, &c) {
                Outcome::Valid { class, .. } => class,
                Outcome::Invalid => {
                    report.reject(RejectionKind::F, 3, steps);
                    return Ok(false);
                }
            };
            let (_, delta) = apply(p, &c)?;
            if let Some(ix) = idx.as_mut() {
                ix.apply_delta(&delta.removed_vertices(p.d()), &delta.added_vertices(p.d()), p.version());
            }
            let j = p.summary().doubles;
            let m_lo = match class {
                Class::A => t.m_lo_a[j],
                Class::B => t.m_lo_b[j],
            };
            if m_lo == 0 {
                report.reject(RejectionKind::B, 3, steps);
                return Ok(false);
            }
            let b = match &idx {
                None => count_b_bruteforce(p, Phase::Doubles, class, u128::MAX)?,
                Some(ix) => match class {
                    Class::A => ix.b_class_a(p)?,
                    Class::B => ix.b_class_b(p)?,
                },
            };
            if !accept_b(rng, b, m_lo, 3, j)? {
                report.reject(RejectionKind::B, 3, steps);
                return Ok(false);
            }
            steps += 1;
            report.phase_steps[2] += 1;
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Graph, RunReport)> {
        let start = Instant::now();
        let mut report = RunReport::default();
        loop {
            if let Some(p) = self.attempt(rng, &mut report)? {
                report.seconds = start.elapsed().as_secs_f64();
                return Ok((p.to_graph()?, report));
            }
        }
    }
}

/// Retries without a valid candidate after which a small instance is checked
/// for having no valid switching at all.
const STUCK_PROBE: u64 = 4096;
const STUCK_PROBE_SPACE: u128 = 20_000_000;
pub const RETRY_CAP: u64 = 1_000_000;

/// The approximate sampler: no t- or b-rejections, invalid candidates are redrawn.
#[derive(Clone, Debug)]
pub struct RegStarSampler {
    n: usize,
    d: usize,
    bounds: PhaseBounds,
}

impl RegStarSampler {
    pub fn new(n: usize, d: usize) -> Result<RegStarSampler> {
        Ok(RegStarSampler {
            n,
            d,
            bounds: compute_bounds(n, d, 1.0)?,
        })
    }

    pub fn attempt<R: Rng + ?Sized>(&self, rng: &mut R, report: &mut RunReport) -> Result<Option<Pairing>> {
        let mut p = loop {
            report.attempts += 1;
            let p = Pairing::random(self.n, self.d, rng)?;
            if in_a_gamma(&p, &self.bounds) {
                break p;
            }
            report.reject(RejectionKind::Initial, 0, 0);
        };
        let phases = [
            (SwitchKind::Loop, 5usize),
            (SwitchKind::Triple, 8),
            (SwitchKind::TypeI, 6),
        ];
        for (ph, (kind, need)) in phases.into_iter().enumerate() {
            let stat = |p: &Pairing| {
                let s = p.summary();
                [s.loops, s.triples, s.doubles][ph]
            };
            report.enter(ph as u8 + 1, stat(&p));
            while stat(&p) > 0 {
                if self.n < need {
                    report.restarts += 1;
                    return Ok(None);
                }
                let mut tries = 0u64;
                loop {
                    let c = sample_candidate(&p, kind, rng)?;
                    if validate(&p, &c).is_valid() {
                        apply(&mut p, &c)?;
                        report.phase_steps[ph] += 1;
                        break;
                    }
                    tries += 1;
                    if tries == STUCK_PROBE
                        && space_size(&p, kind) <= STUCK_PROBE_SPACE
                        && count_f_bruteforce(&p, kind, STUCK_PROBE_SPACE)? == 0
                    {
                        report.restarts += 1;
                        return Ok(None);
                    }
                    if tries >= RETRY_CAP {
                        return Err(Error::RetryCapExceeded(RETRY_CAP));
                    }
                }
            }
        }
        Ok(Some(p))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Graph, RunReport)> {
        let start = Instant::now();
        let mut report = RunReport::default();
        loop {
            if let Some(p) = self.attempt(rng, &mut report)? {
                report.seconds = start.elapsed().as_secs_f64();
                return Ok((p.to_graph()?, report));
            }
        }
    }
}

/// Restart until the pairing is simple.
pub fn run_naive<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<(Graph, RunReport)> {
    check_nd(n, d)?;
    let start = Instant::now();
    let mut report = RunReport::default();
    loop {
        report.attempts += 1;
        let p = Pairing::random(n, d, rng)?;
        if p.is_simple() {
            report.seconds = start.elapsed().as_secs_f64();
            return Ok((p.to_graph()?, report));
        }
        report.reject(RejectionKind::Initial, 0, 0);
    }
}

pub fn run_reg<R: Rng + ?Sized>(n: usize, d: usize, gamma: f64, rng: &mut R) -> Result<(Graph, RunReport)> {
    RegSampler::new(n, d, gamma)?.sample(rng)
}

pub fn run_reg_star<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<(Graph, RunReport)> {
    RegStarSampler::new(n, d)?.sample(rng)
}

/// Any of the three samplers behind one interface.
#[derive(Clone, Debug)]
pub enum Sampler {
    Reg(RegSampler),
    RegStar(RegStarSampler),
    Naive { n: usize, d: usize },
}

impl Sampler {
    pub fn new(algo: Algorithm, n: usize, d: usize, gamma: f64) -> Result<Sampler> {
        Ok(match algo {
            Algorithm::Reg => Sampler::Reg(RegSampler::new(n, d, gamma)?),
            Algorithm::Regstar => Sampler::RegStar(RegStarSampler::new(n, d)?),
            Algorithm::Naive => {
                check_nd(n, d)?;
                Sampler::Naive { n, d }
            }
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Graph, RunReport)> {
        match self {
            Sampler::Reg(s) => s.sample(rng),
            Sampler::RegStar(s) => s.sample(rng),
            Sampler::Naive { n, d } => run_naive(*n, *d, rng),
        }
    }
}
