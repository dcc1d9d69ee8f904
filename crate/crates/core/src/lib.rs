//! Simulation toolkit for heavy-tailed sample covariance matrices.
//!
//! The crate generates `p x n` data matrices with iid regularly varying
//! entries, computes the spectrum of `ZZ'`, and measures how well the
//! eigenvalues and eigenvectors are described by the diagonal of `ZZ'`, by
//! the order statistics of the squared entries, and by the points of a
//! Poisson process. It also covers generalized autocovariance matrices and
//! the large-deviation facts behind these approximations.
//!
//! | module | contents |
//! |---|---|
//! | [`rv_dist`] | entry distributions, tails, norming constants, truncated moments |
//! | [`matgen`] | growth rule, ensemble config, counter-indexed data fields |
//! | [`spectra`] | symmetric eigensolver, Gram spectra, singular values, Weyl gap |
//! | [`diagnostics`] | row/column sums, order statistics, approximation errors, localization |
//! | [`extremes`] | Frechet law, Gamma points, KS distance, point-process functionals |
//! | [`autocov`] | lagged products `Z(0,0) Z(s,k)'` and their singular values |
//! | [`ldp`] | Monte Carlo checks of large deviations and single-big-jump events |
//! | [`harness`] | replicated experiments, summaries, CSV/JSON output, CLI |
//!
//! Every random quantity is a pure function of a master seed and an index,
//! so results do not depend on thread count or evaluation order.

pub mod autocov;
pub mod diagnostics;
pub mod error;
pub mod extremes;
pub mod harness;
pub mod ldp;
pub mod matgen;
pub mod rng;
pub mod rv_dist;
pub mod spectra;

pub use error::{Error, Result};
pub use matgen::{EnsembleConfig, GrowthRule};
pub use rng::CounterRng;
pub use rv_dist::TailModel;
pub use spectra::SpectralResult;
