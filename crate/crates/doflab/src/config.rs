//! Antenna configurations of the two-user channel.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Antenna counts `(M1, M2, N1, N2)`: `M_k` transmit antennas at transmitter
/// `k`, `N_k` receive antennas at receiver `k`. All counts are at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntennaConfig {
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
}

/// Error for invalid antenna counts.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    /// Every terminal needs at least one antenna.
    #[error("antenna counts must all be >= 1, got ({0}, {1}, {2}, {3})")]
    ZeroAntenna(u32, u32, u32, u32),
}

impl AntennaConfig {
    /// Validates and builds a configuration; every count must be `>= 1`.
    pub fn new(m1: u32, m2: u32, n1: u32, n2: u32) -> Result<Self, ConfigError> {
        if m1 == 0 || m2 == 0 || n1 == 0 || n2 == 0 {
            return Err(ConfigError::ZeroAntenna(m1, m2, n1, n2));
        }
        Ok(Self { m1, m2, n1, n2 })
    }

    /// Effective transmit antenna count of transmitter 1: extra antennas
    /// beyond the total receive dimension `N1 + N2` never help, so schemes
    /// use `min(M1, N1 + N2)` antennas and keep the rest silent.
    pub fn m1_tilde(&self) -> u32 {
        self.m1.min(self.n1 + self.n2)
    }

    /// Effective transmit antenna count of transmitter 2 (same truncation).
    pub fn m2_tilde(&self) -> u32 {
        self.m2.min(self.n1 + self.n2)
    }

    /// The configuration with the two user roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            m1: self.m2,
            m2: self.m1,
            n1: self.n2,
            n2: self.n1,
        }
    }

    /// Canonical orientation: receiver 1 is the (weakly) stronger one.
    pub fn is_canonical(&self) -> bool {
        self.n1 >= self.n2
    }

    /// Returns `(canonical_config, swapped)`: the configuration itself when
    /// `N1 >= N2`, otherwise the user-swapped configuration with a flag so
    /// callers can mirror per-user results back to the original orientation.
    pub fn canonical(&self) -> (Self, bool) {
        if self.is_canonical() {
            (*self, false)
        } else {
            (self.swapped(), true)
        }
    }

    /// The counts as `[M1, M2, N1, N2]`.
    pub fn as_array(&self) -> [u32; 4] {
        [self.m1, self.m2, self.n1, self.n2]
    }
}

impl std::fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.m1, self.m2, self.n1, self.n2)
    }
}
