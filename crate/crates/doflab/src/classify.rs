//! Regime classification: does delayed CSIT cost anything relative to output
//! feedback, and if so, which corner-point construction applies?

use crate::config::AntennaConfig;
use crate::rational::Rat;
use crate::region::condition1;
use num::BigInt;
use serde::{Deserialize, Serialize};

/// The three regimes of a (canonical) configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeTag {
    /// Delayed CSIT already achieves the full feedback region; no dedicated
    /// corner-point scheme is needed.
    EqualDelayed,
    /// Feedback enlarges the delayed-CSIT region and the single corner `P0`
    /// closes the gap (the feedback region then coincides with perfect CSIT).
    CaseA,
    /// Feedback enlarges the delayed-CSIT region and two corners `P1`, `P2`
    /// are needed (the feedback region is strictly inside perfect CSIT).
    CaseB,
}

impl RegimeTag {
    /// Stable machine name (used by the CLI and JSON documents).
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeTag::EqualDelayed => "EqualDelayed",
            RegimeTag::CaseA => "CaseA",
            RegimeTag::CaseB => "CaseB",
        }
    }
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification result, including the exact witness values of the
/// case-splitting comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeClass {
    /// The regime.
    pub tag: RegimeTag,
    /// Effective transmitter-1 antenna count `min(M1, N1 + N2)`, the left
    /// side of the case-splitting comparison.
    pub m1_tilde: u32,
    /// Whether the strict asymmetry condition holds (the precondition for
    /// CaseA/CaseB; when false the regime is always `EqualDelayed`).
    pub asymmetric: bool,
    /// Right side of the case-splitting comparison,
    /// `N2 (N1 - M2) / (N2 - M2)`, present only when `asymmetric`.
    /// CaseA iff `m1_tilde >= threshold` (ties classify as CaseA).
    pub threshold: Option<Rat>,
}

/// Classifies a configuration in canonical orientation (`N1 >= N2`).
///
/// The regime is `EqualDelayed` unless the strict asymmetry condition holds
/// (`M1 > N1 + N2 - M2 > N1 > N2 > M2` plus `M2 > N2(N2 - M2)/(N1 - M2)`);
/// mere ordering `M1 > N1 > N2 > M2` is necessary for the condition but not
/// sufficient, and without the full condition delayed CSIT already achieves
/// the whole feedback region. When the condition holds, the split is:
/// CaseA iff `min(M1, N1 + N2) >= N2 (N1 - M2) / (N2 - M2)`, CaseB otherwise.
pub fn classify(cfg: &AntennaConfig) -> RegimeClass {
    debug_assert!(
        cfg.is_canonical(),
        "classify requires canonical orientation (N1 >= N2), got {cfg}"
    );
    let m1_tilde = cfg.m1_tilde();
    if !condition1(cfg) {
        return RegimeClass {
            tag: RegimeTag::EqualDelayed,
            m1_tilde,
            asymmetric: false,
            threshold: None,
        };
    }
    // condition1 guarantees N2 > M2, so the threshold is well defined.
    let threshold = Rat::new(
        BigInt::from(cfg.n2) * BigInt::from(cfg.n1 - cfg.m2),
        BigInt::from(cfg.n2 - cfg.m2),
    );
    let tag = if Rat::from_integer(BigInt::from(m1_tilde)) >= threshold {
        RegimeTag::CaseA
    } else {
        RegimeTag::CaseB
    };
    RegimeClass {
        tag,
        m1_tilde,
        asymmetric: true,
        threshold: Some(threshold),
    }
}
