//! Execution of transmission plans over random channels.
//!
//! [`channel`] draws the per-slot channel matrices and ground-truth symbols,
//! [`transcript`] runs a plan causally (with an access log proving only
//! delayed knowledge is used), [`decode`] recovers the symbols at both
//! receivers by linear algebra, and [`monte`] wraps it all into repeated
//! trials with deterministic seeding.

pub mod channel;
pub mod decode;
pub mod monte;
pub mod transcript;

pub use channel::{
    sample_channel_exact, sample_channel_float, sample_truth_exact, sample_truth_float,
    ChannelDraw, DistError, DistributionSpec, Link, LinkDist, Mode,
};
pub use decode::{decode, DecodeReport, RxReport};
pub use monte::{
    monte_carlo, MonteCarloSummary, EXACT_DEFAULT_BOUND, FLOAT_MATCH_TOL, FLOAT_RANK_TOL,
    RESAMPLE_CAP,
};
pub use transcript::{run_scheme, Access, AccessKind, AccessLog, GroundTruth, SimError, Transcript};
