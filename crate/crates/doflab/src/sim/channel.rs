//! Random channel draws and ground-truth symbol sampling.

use crate::config::AntennaConfig;
use crate::linalg::Matrix;
use crate::rational::{rat_int, Rat};
use crate::sim::transcript::GroundTruth;
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The four point-to-point links; `Hmk` connects transmitter `k` to
/// receiver `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Link {
    H11,
    H12,
    H21,
    H22,
}

impl Link {
    /// All links, in the fixed sampling order.
    pub const ALL: [Link; 4] = [Link::H11, Link::H12, Link::H21, Link::H22];

    /// Matrix shape `(rows, cols)` of this link for a configuration.
    pub fn dims(&self, cfg: &AntennaConfig) -> (usize, usize) {
        match self {
            Link::H11 => (cfg.n1 as usize, cfg.m1 as usize),
            Link::H12 => (cfg.n1 as usize, cfg.m2 as usize),
            Link::H21 => (cfg.n2 as usize, cfg.m1 as usize),
            Link::H22 => (cfg.n2 as usize, cfg.m2 as usize),
        }
    }
}

impl std::fmt::Display for Link {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Link::H11 => "H11",
            Link::H12 => "H12",
            Link::H21 => "H21",
            Link::H22 => "H22",
        };
        f.write_str(s)
    }
}

/// Per-link coefficient distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkDist {
    /// Integers drawn uniformly from `[-bound, bound]` (exact mode).
    UniformInt { bound: u32 },
    /// Independent standard complex Gaussians (float mode).
    ComplexGaussian,
}

/// Arithmetic mode implied by a distribution assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Errors in distribution assignments.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistError {
    /// Integer bounds below 2 would make generic-position draws too likely
    /// to be degenerate.
    #[error("integer coefficient bound must be >= 2, got {0}")]
    BoundTooSmall(u32),
    /// All four links must use the same arithmetic mode.
    #[error("all links must use the same arithmetic mode (exact or float)")]
    MixedModes,
}

/// Distribution assignment for the four links.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub h11: LinkDist,
    pub h12: LinkDist,
    pub h21: LinkDist,
    pub h22: LinkDist,
}

impl DistributionSpec {
    /// Exact mode with one shared bound (default 1000).
    pub fn exact_uniform(bound: u32) -> Result<Self, DistError> {
        Self::exact_per_link([bound; 4])
    }

    /// Exact mode with per-link bounds, in `[H11, H12, H21, H22]` order.
    pub fn exact_per_link(bounds: [u32; 4]) -> Result<Self, DistError> {
        for b in bounds {
            if b < 2 {
                return Err(DistError::BoundTooSmall(b));
            }
        }
        let d = |bound| LinkDist::UniformInt { bound };
        Ok(Self {
            h11: d(bounds[0]),
            h12: d(bounds[1]),
            h21: d(bounds[2]),
            h22: d(bounds[3]),
        })
    }

    /// Float mode: standard complex Gaussians on every link.
    pub fn gaussian() -> Self {
        Self {
            h11: LinkDist::ComplexGaussian,
            h12: LinkDist::ComplexGaussian,
            h21: LinkDist::ComplexGaussian,
            h22: LinkDist::ComplexGaussian,
        }
    }

    /// The distribution of one link.
    pub fn link(&self, link: Link) -> LinkDist {
        match link {
            Link::H11 => self.h11,
            Link::H12 => self.h12,
            Link::H21 => self.h21,
            Link::H22 => self.h22,
        }
    }

    /// The common arithmetic mode, or an error if links mix modes.
    pub fn mode(&self) -> Result<Mode, DistError> {
        let exact = Link::ALL
            .iter()
            .filter(|&&l| matches!(self.link(l), LinkDist::UniformInt { .. }))
            .count();
        match exact {
            4 => Ok(Mode::Exact),
            0 => Ok(Mode::Float),
            _ => Err(DistError::MixedModes),
        }
    }
}

/// One channel realization: a matrix per link per slot.
#[derive(Clone, Debug)]
pub struct ChannelDraw<T> {
    pub config: AntennaConfig,
    pub slots: usize,
    pub h11: Vec<Matrix<T>>,
    pub h12: Vec<Matrix<T>>,
    pub h21: Vec<Matrix<T>>,
    pub h22: Vec<Matrix<T>>,
}

impl<T> ChannelDraw<T> {
    /// The matrix of a link in a slot.
    pub fn h(&self, link: Link, slot: usize) -> &Matrix<T> {
        match link {
            Link::H11 => &self.h11[slot],
            Link::H12 => &self.h12[slot],
            Link::H21 => &self.h21[slot],
            Link::H22 => &self.h22[slot],
        }
    }
}

fn sample_matrix<T>(
    dims: (usize, usize),
    mut entry: impl FnMut() -> T,
) -> Matrix<T>
where
    T: crate::linalg::Scalar,
{
    let rows = (0..dims.0)
        .map(|_| (0..dims.1).map(|_| entry()).collect())
        .collect();
    Matrix::from_rows(rows)
}

fn sample_int(rng: &mut ChaCha8Rng, bound: u32) -> Rat {
    let b = i64::from(bound);
    rat_int(rng.gen_range(-b..=b))
}

fn sample_gauss(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Draws `slots` slots of exact integer channels. The sampling order is
/// fixed — slot-major, then `H11, H12, H21, H22`, row-major within a matrix —
/// so a seed fully determines the draw.
pub fn sample_channel_exact(
    cfg: &AntennaConfig,
    slots: usize,
    spec: &DistributionSpec,
    seed: u64,
) -> Result<ChannelDraw<Rat>, DistError> {
    if spec.mode()? != Mode::Exact {
        return Err(DistError::MixedModes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = ChannelDraw {
        config: *cfg,
        slots,
        h11: Vec::new(),
        h12: Vec::new(),
        h21: Vec::new(),
        h22: Vec::new(),
    };
    for _ in 0..slots {
        for link in Link::ALL {
            let LinkDist::UniformInt { bound } = spec.link(link) else {
                unreachable!("mode checked above");
            };
            let m = sample_matrix(link.dims(cfg), || sample_int(&mut rng, bound));
            match link {
                Link::H11 => draw.h11.push(m),
                Link::H12 => draw.h12.push(m),
                Link::H21 => draw.h21.push(m),
                Link::H22 => draw.h22.push(m),
            }
        }
    }
    Ok(draw)
}

/// Draws `slots` slots of complex Gaussian channels (same fixed order).
pub fn sample_channel_float(
    cfg: &AntennaConfig,
    slots: usize,
    spec: &DistributionSpec,
    seed: u64,
) -> Result<ChannelDraw<Complex64>, DistError> {
    if spec.mode()? != Mode::Float {
        return Err(DistError::MixedModes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = ChannelDraw {
        config: *cfg,
        slots,
        h11: Vec::new(),
        h12: Vec::new(),
        h21: Vec::new(),
        h22: Vec::new(),
    };
    for _ in 0..slots {
        for link in Link::ALL {
            let m = sample_matrix(link.dims(cfg), || sample_gauss(&mut rng));
            match link {
                Link::H11 => draw.h11.push(m),
                Link::H12 => draw.h12.push(m),
                Link::H21 => draw.h21.push(m),
                Link::H22 => draw.h22.push(m),
            }
        }
    }
    Ok(draw)
}

/// Integer ground-truth symbols in `[-bound, bound]`; keeping symbols integral
/// keeps every transmitted value and observation integral in exact mode.
pub fn sample_truth_exact(
    u_count: usize,
    v_count: usize,
    bound: u32,
    seed: u64,
) -> GroundTruth<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = (0..u_count).map(|_| sample_int(&mut rng, bound)).collect();
    let v = (0..v_count).map(|_| sample_int(&mut rng, bound)).collect();
    GroundTruth { u, v }
}

/// Complex Gaussian ground-truth symbols.
pub fn sample_truth_float(u_count: usize, v_count: usize, seed: u64) -> GroundTruth<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = (0..u_count).map(|_| sample_gauss(&mut rng)).collect();
    let v = (0..v_count).map(|_| sample_gauss(&mut rng)).collect();
    GroundTruth { u, v }
}
