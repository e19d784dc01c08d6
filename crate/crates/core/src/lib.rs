//! Probability dynamics: probabilities that carry the credence they are held
//! with.
//!
//! An evidence `[κ; d]` pairs a distribution `d` on a finite partition with a
//! credence `κ`, a relative and unbounded measure of how much the
//! distribution is to be trusted. The crate provides
//!
//! * straight mergers of independent evidences ([`merge::spd_merge`]) and
//!   offsetting mergers of conflicting ones ([`merge::opd_merge`]),
//! * normalization of per-cell binary evidences ([`merge::normalize`]),
//! * correlation and cross-credence ([`association`]),
//! * conditionalization, Jeffrey's rule and credence-aware indirect
//!   updating ([`updating`]),
//! * revision of a fallible joint by newly discovered implications
//!   ([`repair`]),
//! * degrees of confirmation ([`confirm`]) and the payoffs of a reflection
//!   betting scheme ([`dutchbook`]).
//!
//! Everything is a pure function over immutable values.
//!
//! ```
//! use probdyn::{merge::spd_merge, AlphaEvidence, Credence, Distribution};
//!
//! let a = AlphaEvidence::new(Credence::new(2.0)?, Distribution::binary(0.9)?);
//! let b = AlphaEvidence::new(Credence::new(1.0)?, Distribution::binary(0.3)?);
//! let m = spd_merge(&[a, b])?;
//! assert_eq!(m.credence.get(), 3.0);
//! assert!((m.dist.probs()[0] - 0.7).abs() < 1e-12);
//! # Ok::<(), probdyn::PdError>(())
//! ```

pub mod association;
pub mod confirm;
pub mod dutchbook;
pub mod error;
pub mod exact;
pub mod merge;
pub mod repair;
pub mod tolerance;
pub mod types;
pub mod updating;

pub use error::{ErrorClass, PdError, Result};
pub use tolerance::{TOL_EQ, TOL_SUM};
pub use types::{
    joint_marginals, validate_distribution, AlphaEvidence, BinaryEvidence, Credence, Distribution, FirstOrderPrior,
    JointPrior, Partition, Table2, WeightedBinarySet,
};
