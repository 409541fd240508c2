//! Exact degrees-of-freedom (DoF) analysis for the two-user MIMO interference
//! channel, together with a simulator for the retrospective interference
//! alignment schemes that achieve the feedback/delayed-CSIT region.
//!
//! The crate has three layers:
//!
//! * **Regions** ([`region`], [`geometry`], [`classify`]) — closed-form DoF
//!   regions for perfect CSIT, delayed CSIT, and output feedback plus delayed
//!   CSIT, computed in exact rational arithmetic with canonical half-plane and
//!   vertex representations.
//! * **Schemes** ([`schemes`]) — symbolic multi-slot transmission plans for the
//!   corner points of the feedback region, with causality validation and
//!   counting-based feasibility reports.
//! * **Simulation** ([`linalg`], [`sim`]) — executes a plan over randomly drawn
//!   channels (exact integer rationals or complex floats), decodes both
//!   receivers by Gaussian elimination, and verifies every claimed symbol is
//!   recovered, with an access log proving transmitters only use delayed
//!   channel knowledge.
//!
//! The `doflab` binary wraps all of this in a CLI (`region`, `classify`,
//! `simulate`, `sweep`, `plot`).

pub mod classify;
pub mod config;
pub mod geometry;
pub mod linalg;
pub mod rational;
pub mod region;
pub mod report;
pub mod schemes;
pub mod sim;
pub mod svgplot;

pub use classify::{classify, RegimeClass, RegimeTag};
pub use config::AntennaConfig;
pub use geometry::{enumerate_vertices, GeometryError, HalfPlane, Point};
pub use rational::{format_rat, parse_rat, rat, rat_int, Rat};
pub use region::{
    region_delayed_csit, region_fb_dcsit, region_for, region_no_csit_fixture,
    region_perfect_csit, DofRegion, Family,
};
pub use schemes::{plan_p0_p1, plan_p2, time_share, SchemePlan, SchemePoint};
