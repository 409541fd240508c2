//! DoF region families for the two-user MIMO interference channel.
//!
//! Each family is a bounded convex polygon in the `(d1, d2)` plane described
//! by half-planes. Regions are stored in canonical form: normalized
//! half-planes, exact duplicates removed, redundant constraints dropped (a
//! constraint is kept iff it is tight at two or more vertices, or is one of
//! the nonnegativity bounds), and vertices ordered counter-clockwise starting
//! at the lexicographically smallest point.

use crate::config::AntennaConfig;
use crate::geometry::{axis_bounds, enumerate_vertices, HalfPlane, Point};
use crate::rational::{rat_int, Rat};
use num::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// The channel-knowledge families a region can be computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Perfect (instantaneous) transmitter channel knowledge.
    PCsit,
    /// Completely delayed transmitter channel knowledge.
    DCsit,
    /// Local receiver output feedback on top of delayed channel knowledge.
    FbDCsit,
    /// A fixed reference region for the no-CSIT baseline, available only for
    /// the configuration `(6, 2, 4, 3)`.
    NoCsitFixture,
}

impl Family {
    /// Stable machine name (used by the CLI and JSON documents).
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::PCsit => "p_csit",
            Family::DCsit => "d_csit",
            Family::FbDCsit => "fb_dcsit",
            Family::NoCsitFixture => "no_csit_fixture",
        }
    }

    /// Parses the machine name produced by [`Family::as_str`].
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "p_csit" => Some(Family::PCsit),
            "d_csit" => Some(Family::DCsit),
            "fb_dcsit" => Some(Family::FbDCsit),
            "no_csit_fixture" => Some(Family::NoCsitFixture),
            _ => None,
        }
    }

    /// All families, in presentation order.
    pub fn all() -> [Family; 4] {
        [
            Family::PCsit,
            Family::FbDCsit,
            Family::DCsit,
            Family::NoCsitFixture,
        ]
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors from region construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    /// The no-CSIT fixture exists only for `(6, 2, 4, 3)`.
    #[error("the no-CSIT fixture region is only defined for (6, 2, 4, 3), got {0}")]
    UnsupportedFixture(AntennaConfig),
}

/// A DoF region in canonical polygon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DofRegion {
    config: AntennaConfig,
    family: Family,
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<Point>,
}

impl DofRegion {
    /// Builds the canonical region from raw family bounds. The nonnegativity
    /// bounds are added automatically.
    fn from_raw(config: AntennaConfig, family: Family, raw: Vec<HalfPlane>) -> Self {
        let mut hps: BTreeSet<HalfPlane> = raw.into_iter().collect();
        hps.extend(axis_bounds());
        let all: Vec<HalfPlane> = hps.into_iter().collect();
        let vertices = enumerate_vertices(&all)
            .expect("family bounds always cut a nonempty bounded polygon");
        let halfplanes: Vec<HalfPlane> = all
            .into_iter()
            .filter(|h| {
                h.is_axis_bound() || vertices.iter().filter(|v| h.is_tight(v)).count() >= 2
            })
            .collect();
        debug_assert_eq!(
            enumerate_vertices(&halfplanes).as_ref(),
            Ok(&vertices),
            "dropping redundant constraints must not change the region"
        );
        Self {
            config,
            family,
            halfplanes,
            vertices,
        }
    }

    /// The configuration the region was built for.
    pub fn config(&self) -> AntennaConfig {
        self.config
    }

    /// The knowledge family the region belongs to.
    pub fn family(&self) -> Family {
        self.family
    }

    /// Canonical half-planes, sorted deterministically.
    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Vertices in counter-clockwise order starting at the lexicographically
    /// smallest point (always `(0, 0)` for these regions).
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Whether the (closed) region contains the point.
    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p))
    }

    /// Whether the point lies exactly on the region's boundary.
    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p) && self.halfplanes.iter().any(|h| h.is_tight(p))
    }

    /// Whether the point is a vertex of the region.
    pub fn is_vertex(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v == p)
    }

    /// Exact subset test (`self` ⊆ `other`); both regions are convex, so it
    /// suffices that every vertex of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &DofRegion) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// Exact equality as point sets.
    pub fn region_equal(&self, other: &DofRegion) -> bool {
        self.vertices == other.vertices
    }

    /// Strict subset: contained but not equal.
    pub fn is_strict_subset_of(&self, other: &DofRegion) -> bool {
        self.is_subset_of(other) && !self.region_equal(other)
    }

    /// Twice the polygon's area (exact, via the shoelace formula).
    pub fn double_area(&self) -> Rat {
        let n = self.vertices.len();
        let mut acc = rat_int(0);
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc += &p.0 * &q.1 - &q.0 * &p.1;
        }
        acc
    }

    /// The same region with the two user roles (coordinates) exchanged.
    pub fn mirrored(&self) -> DofRegion {
        let halfplanes: BTreeSet<HalfPlane> =
            self.halfplanes.iter().map(HalfPlane::mirrored).collect();
        let halfplanes: Vec<HalfPlane> = halfplanes.into_iter().collect();
        let vertices = enumerate_vertices(&halfplanes)
            .expect("mirroring preserves nonemptiness and boundedness");
        DofRegion {
            config: self.config.swapped(),
            family: self.family,
            halfplanes,
            vertices,
        }
    }
}

fn int(v: u32) -> Rat {
    rat_int(i64::from(v))
}

fn frac(n: u32, d: u32) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The three bounds shared by every family: the two single-user bounds and
/// the sum-rate bound.
fn base_bounds(cfg: &AntennaConfig) -> Vec<HalfPlane> {
    let AntennaConfig { m1, m2, n1, n2 } = *cfg;
    let sum = (m1 + m2).min(n1 + n2).min(m1.max(n2)).min(m2.max(n1));
    vec![
        HalfPlane::new(rat_int(1), rat_int(0), int(m1.min(n1))).unwrap(),
        HalfPlane::new(rat_int(0), rat_int(1), int(m2.min(n2))).unwrap(),
        HalfPlane::new(rat_int(1), rat_int(1), int(sum)).unwrap(),
    ]
}

/// The two weighted bounds that complete the feedback region.
fn feedback_bounds(cfg: &AntennaConfig) -> Vec<HalfPlane> {
    let AntennaConfig { m1, m2, n1, n2 } = *cfg;
    let l1 = HalfPlane::new(
        frac(1, (n1 + n2).min(m1)),
        frac(1, n2.min(m1)),
        frac(n2.min(m1 + m2), n2.min(m1)),
    )
    .unwrap();
    let l2 = HalfPlane::new(
        frac(1, n1.min(m2)),
        frac(1, (n1 + n2).min(m2)),
        frac(n1.min(m1 + m2), n1.min(m2)),
    )
    .unwrap();
    vec![l1, l2]
}

/// Whether the asymmetry condition holds in the orientation where user 1 is
/// the stronger side: `M1 > N1 + N2 - M2 > N1 > N2 > M2` strictly and
/// `M2 > N2 (N2 - M2) / (N1 - M2)`. When it holds, delayed CSIT strictly
/// shrinks the feedback region by one extra weighted bound.
pub(crate) fn condition1(cfg: &AntennaConfig) -> bool {
    let (m1, m2, n1, n2) = (
        i64::from(cfg.m1),
        i64::from(cfg.m2),
        i64::from(cfg.n1),
        i64::from(cfg.n2),
    );
    m1 > n1 + n2 - m2
        && n1 + n2 - m2 > n1
        && n1 > n2
        && n2 > m2
        && m2 * (n1 - m2) > n2 * (n2 - m2)
}

/// [`condition1`] with the user roles exchanged.
pub(crate) fn condition2(cfg: &AntennaConfig) -> bool {
    condition1(&cfg.swapped())
}

/// DoF region under perfect CSIT.
pub fn region_perfect_csit(cfg: &AntennaConfig) -> DofRegion {
    DofRegion::from_raw(*cfg, Family::PCsit, base_bounds(cfg))
}

/// DoF region under local output feedback plus delayed CSIT. This also equals
/// the region under global feedback, so it is the outer shell every feedback
/// variant shares.
pub fn region_fb_dcsit(cfg: &AntennaConfig) -> DofRegion {
    let mut hps = base_bounds(cfg);
    hps.extend(feedback_bounds(cfg));
    DofRegion::from_raw(*cfg, Family::FbDCsit, hps)
}

/// DoF region under delayed CSIT alone: the feedback region, minus one extra
/// weighted bound when the asymmetry condition holds (in either orientation).
pub fn region_delayed_csit(cfg: &AntennaConfig) -> DofRegion {
    let AntennaConfig { m1, m2, n1, n2 } = *cfg;
    let mut hps = base_bounds(cfg);
    hps.extend(feedback_bounds(cfg));
    if condition1(cfg) {
        hps.push(
            HalfPlane::new(rat_int(1), frac(n1 + 2 * n2 - m2, n2), int(n1 + n2)).unwrap(),
        );
    }
    if condition2(cfg) {
        hps.push(
            HalfPlane::new(frac(n2 + 2 * n1 - m1, n1), rat_int(1), int(n1 + n2)).unwrap(),
        );
    }
    DofRegion::from_raw(*cfg, Family::DCsit, hps)
}

/// Fixed no-CSIT reference region, defined only for `(6, 2, 4, 3)`:
/// `{d1 <= 4, d2 <= 2, d1 + (3/2) d2 <= 4}`.
pub fn region_no_csit_fixture(cfg: &AntennaConfig) -> Result<DofRegion, RegionError> {
    if cfg.as_array() != [6, 2, 4, 3] {
        return Err(RegionError::UnsupportedFixture(*cfg));
    }
    let hps = vec![
        HalfPlane::new(rat_int(1), rat_int(0), rat_int(4)).unwrap(),
        HalfPlane::new(rat_int(0), rat_int(1), rat_int(2)).unwrap(),
        HalfPlane::new(rat_int(1), crate::rational::rat(3, 2), rat_int(4)).unwrap(),
    ];
    Ok(DofRegion::from_raw(*cfg, Family::NoCsitFixture, hps))
}

/// Builds the region of any family, reporting fixture misuse as an error.
pub fn region_for(cfg: &AntennaConfig, family: Family) -> Result<DofRegion, RegionError> {
    match family {
        Family::PCsit => Ok(region_perfect_csit(cfg)),
        Family::DCsit => Ok(region_delayed_csit(cfg)),
        Family::FbDCsit => Ok(region_fb_dcsit(cfg)),
        Family::NoCsitFixture => region_no_csit_fixture(cfg),
    }
}
