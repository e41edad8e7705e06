//! # hoi — O-information and its gradients
//!
//! Higher-order interactions in a multivariate system are poorly described by
//! pairwise links: three or more variables can share information redundantly
//! (many copies of the same bit) or synergistically (a bit visible only in
//! the whole, as in a parity check). The O-information Ω of a multiplet
//! measures that balance globally — positive means redundancy-dominated,
//! negative synergy-dominated — and its *gradients* localise it: ∂_i Ω says
//! what variable i adds to the system's informational circuits, ∂²_ij Ω what
//! a pair adds beyond its parts, and so on up the subset lattice through a
//! simple inclusion–exclusion chain rule.
//!
//! The crate provides:
//!
//! * [`discrete`] — exact finite joint distributions (the discrete entropy
//!   backend), plus the COPY/XOR gates that make the gradient bounds tight;
//! * [`copula`] — Gaussian-copula entropy estimation for continuous data:
//!   normal-score ranks, a fitted correlation matrix, closed-form entropies;
//! * [`measures`] — TC, DTC, Ω, gradients of every order, and local
//!   O-information, evaluated through a memoized subset-entropy cache over
//!   either backend;
//! * [`ising`] — exact Boltzmann tables for small spin systems and β sweeps
//!   of any traced quantity (including the frustrated hexagon benchmark);
//! * [`inference`] — seeded percentile-bootstrap significance for any
//!   statistic, per-order gradient reports, and exhaustive triplet/quadruplet
//!   scans with redundancy/synergy indices;
//! * [`io`] + [`cli`] — CSV ingestion, log-return preprocessing, and the
//!   `hoi` binary (`oinfo`, `gradients`, `scan`, `ising-sweep`, `verify`).
//!
//! Entropies are in bits throughout. Bootstrap pipelines are deterministic
//! given their seed, parallel or not.
//!
//! ## Quick start
//!
//! ```
//! use hoi::discrete::xor_gate;
//! use hoi::measures::EntropyCache;
//!
//! let cache = EntropyCache::new(xor_gate(3)?);
//! let sys = cache.full_system();
//! assert!((cache.o_information(sys)? + 1.0).abs() < 1e-12); // pure synergy
//! assert!((cache.gradient_first(sys, 0)? + 1.0).abs() < 1e-12);
//! # Ok::<(), hoi::Error>(())
//! ```
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release -p hoi --example logic_gates      # gates, Ω, tight bounds
//! cargo run --release -p hoi --example gradient_orders  # chain rule, local vs pair
//! cargo run --release -p hoi --example ising_hexagon    # frustrated-hexagon sweep
//! cargo run --release -p hoi --example copula_gaussian  # copula backend vs closed form
//! cargo run --release -p hoi --example bootstrap_significance
//! cargo run --release -p hoi --example multiplet_scan   # triplet/quadruplet indices
//! ```
//!
//! The CLI does the same work on files; see the README for the subcommands.

pub mod cli;
pub mod copula;
pub mod discrete;
pub mod error;
pub mod inference;
pub mod io;
pub mod ising;
pub mod measures;
pub mod subset;
pub mod verify;

pub use copula::{copula_transform, DataMatrix, GaussianModel};
pub use discrete::{copy_gate, xor_gate, DiscreteJointDistribution};
pub use error::{Error, Result};
pub use inference::{
    bootstrap, gradient_significance, scan_multiplets, BootstrapSettings, EstimatorBackend,
    GradientReport, MultipletScan,
};
pub use ising::{sweep, IsingModel, SweepQuantity, SweepResult};
pub use measures::{EntropyCache, EntropySource};
pub use subset::SubsetMask;
