//! Uniform sampling of random d-regular graphs by switching.
//!
//! A random pairing of `n * d` points is generated and, if it lies in the
//! typical set A_gamma, its loops, triple edges and double edges are removed
//! by three phases of switchings. Each step is accepted with a probability
//! that equalises the number of ways every pairing can be reached, so the
//! exact sampler [`RegSampler`] returns every labelled d-regular graph with
//! the same probability. [`RegStarSampler`] skips those rejections and is
//! only approximately uniform.
//!
//! ```
//! use randreg::{run_reg, stream_rng};
//!
//! let (g, report) = run_reg(30, 3, 1.0, &mut stream_rng(7, 0)).unwrap();
//! assert!(g.is_regular(3));
//! assert!(report.attempts >= 1);
//! ```

pub mod enumerate;
pub mod error;
pub mod format;
pub mod pairing;
pub mod params;
pub mod path_index;
pub mod registry;
pub mod rng;
pub mod sampler;
pub mod stats;
pub mod switching;
pub mod verify;

pub use enumerate::{enumerate_labeled_regular, multigraph_representatives, EnumerationTable};
pub use error::{Error, Result};
pub use format::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
pub use pairing::{classify, compute_bounds, in_a_gamma, nominal_bounds, Graph, MultiSummary, Pairing, PhaseBounds};
pub use params::{feasible_epsilon, feasibility_threshold, solve_rho_system, ModelParams, PhaseTables, RhoSolution};
pub use path_index::{b_loops, b_triples, PathIndex};
pub use rng::{stream_rng, SimRng};
pub use sampler::{
    run_naive, run_reg, run_reg_star, Algorithm, Backend, RegSampler, RegStarSampler, RejectionKind, RunReport,
    Sampler,
};
pub use stats::{chi_square_homogeneity, chi_square_uniformity, UniformityResult};
pub use switching::{
    apply, count_b_bruteforce, count_f_bruteforce, sample_candidate, validate, Candidate, Class, Outcome, Phase,
    SwitchKind,
};
