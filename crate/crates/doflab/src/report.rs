//! Versioned serialization documents for the command-line surface.
//!
//! Every document carries `"version": "v1"` and serializes rationals as
//! exact `"p"` / `"p/q"` strings. Field order is fixed by struct declaration
//! order, so identical inputs produce byte-identical output.

use num::complex::Complex64;
use serde::Serialize;

use crate::classify::RegimeClass;
use crate::config::AntennaConfig;
use crate::rational::{format_rat, Rat};
use crate::region::DofRegion;
use crate::schemes::{SchemePlan, TxEntry};
use crate::sim::{Mode, MonteCarloSummary, Transcript};

/// Schema version stamped into every document.
pub const SCHEMA_VERSION: &str = "v1";

/// Serializes any document as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize infallibly");
    s.push('\n');
    s
}

fn rat_pair(p: &(Rat, Rat)) -> [String; 2] {
    [format_rat(&p.0), format_rat(&p.1)]
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfPlaneDoc {
    pub a1: String,
    pub a2: String,
    pub b: String,
}

/// One feasible region: canonical half-planes plus vertex cycle.
#[derive(Clone, Debug, Serialize)]
pub struct RegionDoc {
    pub version: &'static str,
    pub config: [u32; 4],
    pub family: String,
    pub halfplanes: Vec<HalfPlaneDoc>,
    pub vertices: Vec<[String; 2]>,
}

impl RegionDoc {
    pub fn new(region: &DofRegion) -> Self {
        RegionDoc {
            version: SCHEMA_VERSION,
            config: region.config().as_array(),
            family: region.family().as_str().to_owned(),
            halfplanes: region
                .halfplanes()
                .iter()
                .map(|h| HalfPlaneDoc {
                    a1: format_rat(h.a1()),
                    a2: format_rat(h.a2()),
                    b: format_rat(h.b()),
                })
                .collect(),
            vertices: region.vertices().iter().map(rat_pair).collect(),
        }
    }

    /// CSV rendering: one row per half-plane and per vertex.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,c1,c2,c3\n");
        for h in &self.halfplanes {
            out.push_str(&format!("halfplane,{},{},{}\n", h.a1, h.a2, h.b));
        }
        for v in &self.vertices {
            out.push_str(&format!("vertex,{},{},\n", v[0], v[1]));
        }
        out
    }
}

/// The two sides of the regime comparison, as exact rationals.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessDoc {
    pub m1_tilde: String,
    pub threshold: String,
}

/// Regime classification of one antenna configuration.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyDoc {
    pub version: &'static str,
    pub config: [u32; 4],
    pub canonical_config: [u32; 4],
    pub swapped: bool,
    pub tag: String,
    pub witness: Option<WitnessDoc>,
}

impl ClassifyDoc {
    pub fn new(original: &AntennaConfig, canonical: &AntennaConfig, swapped: bool, class: &RegimeClass) -> Self {
        ClassifyDoc {
            version: SCHEMA_VERSION,
            config: original.as_array(),
            canonical_config: canonical.as_array(),
            swapped,
            tag: class.tag.as_str().to_owned(),
            witness: class.threshold.as_ref().map(|t| WitnessDoc {
                m1_tilde: class.m1_tilde.to_string(),
                threshold: format_rat(t),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryDoc {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

fn entry_doc(e: &TxEntry, own_prefix: &str) -> EntryDoc {
    match e {
        TxEntry::Zero => EntryDoc {
            kind: "zero",
            id: None,
        },
        TxEntry::Fresh { id } => EntryDoc {
            kind: "fresh",
            id: Some(format!("{own_prefix}{}", id + 1)),
        },
        TxEntry::Component(c) => EntryDoc {
            kind: "component",
            id: Some(c.to_string()),
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotDoc {
    pub tx1: Vec<EntryDoc>,
    pub tx2: Vec<EntryDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountCheckDoc {
    pub equations: usize,
    pub unknowns: usize,
    pub satisfied: bool,
    pub tight: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityDoc {
    pub rx1: CountCheckDoc,
    pub rx2: CountCheckDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx2_budget: Option<CountCheckDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerDoc {
    pub u_count: usize,
    pub v_count: usize,
    pub components: Vec<String>,
    pub forwarded: Vec<String>,
}

/// A full transmission plan in canonical (N1 ≥ N2) orientation.
#[derive(Clone, Debug, Serialize)]
pub struct PlanDoc {
    pub version: &'static str,
    pub config: [u32; 4],
    pub point: String,
    pub phase1_slots: usize,
    pub total_slots: usize,
    pub claimed_dof: [String; 2],
    pub slots: Vec<SlotDoc>,
    pub ledger: LedgerDoc,
    pub feasibility: FeasibilityDoc,
}

impl PlanDoc {
    pub fn new(plan: &SchemePlan) -> Self {
        let check = |c: &crate::schemes::CountCheck| CountCheckDoc {
            equations: c.equations,
            unknowns: c.unknowns,
            satisfied: c.satisfied,
            tight: c.tight,
        };
        PlanDoc {
            version: SCHEMA_VERSION,
            config: plan.config.as_array(),
            point: plan.point.as_str().to_owned(),
            phase1_slots: plan.phase1_slots,
            total_slots: plan.total_slots,
            claimed_dof: rat_pair(&plan.claimed_dof),
            slots: plan
                .slots
                .iter()
                .map(|s| SlotDoc {
                    tx1: s.tx1.iter().map(|e| entry_doc(e, "u")).collect(),
                    tx2: s.tx2.iter().map(|e| entry_doc(e, "v")).collect(),
                })
                .collect(),
            ledger: LedgerDoc {
                u_count: plan.ledger.u_count,
                v_count: plan.ledger.v_count,
                components: plan.ledger.components.iter().map(|c| c.to_string()).collect(),
                forwarded: plan.ledger.forwarded.iter().map(|c| c.to_string()).collect(),
            },
            feasibility: FeasibilityDoc {
                rx1: check(&plan.feasibility.rx1),
                rx2: check(&plan.feasibility.rx2),
                tx2_budget: plan.feasibility.tx2_budget.as_ref().map(check),
            },
        }
    }
}

/// One executed transcript, serialized exactly.
#[derive(Clone, Debug, Serialize)]
pub struct TranscriptDoc {
    pub x1: Vec<Vec<String>>,
    pub x2: Vec<Vec<String>>,
    pub y1: Vec<Vec<String>>,
    pub y2: Vec<Vec<String>>,
    pub access_records: usize,
    pub violations: usize,
}

fn slots_to_strings<T, F: Fn(&T) -> String>(slots: &[Vec<T>], f: F) -> Vec<Vec<String>> {
    slots.iter().map(|s| s.iter().map(&f).collect()).collect()
}

impl TranscriptDoc {
    pub fn from_exact(tr: &Transcript<Rat>) -> Self {
        TranscriptDoc {
            x1: slots_to_strings(&tr.x1, format_rat),
            x2: slots_to_strings(&tr.x2, format_rat),
            y1: slots_to_strings(&tr.y1, format_rat),
            y2: slots_to_strings(&tr.y2, format_rat),
            access_records: tr.access_log.records().len(),
            violations: tr.access_log.violations(),
        }
    }

    pub fn from_float(tr: &Transcript<Complex64>) -> Self {
        let fmt = |z: &Complex64| format!("{}{}{}i", z.re, if z.im < 0.0 { "" } else { "+" }, z.im);
        TranscriptDoc {
            x1: slots_to_strings(&tr.x1, fmt),
            x2: slots_to_strings(&tr.x2, fmt),
            y1: slots_to_strings(&tr.y1, fmt),
            y2: slots_to_strings(&tr.y2, fmt),
            access_records: tr.access_log.records().len(),
            violations: tr.access_log.violations(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HermeticityDoc {
    pub violations: usize,
    pub access_records: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemsDoc {
    pub rx1: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rx1_reduced: Option<[usize; 2]>,
    pub rx2: [usize; 2],
}

/// Monte Carlo summary for one simulated corner point.
///
/// `config` and the DoF pairs are reported in the caller's original user
/// order; `swapped` records whether execution ran on the mirrored
/// configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SimulateDoc {
    pub version: &'static str,
    pub config: [u32; 4],
    pub swapped: bool,
    pub point: String,
    pub mode: String,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub claimed_dof: [String; 2],
    pub delivered_dof: Option<[String; 2]>,
    pub successes: usize,
    pub failures: usize,
    pub resamples: usize,
    pub stronger_rx_both_all: bool,
    pub hermeticity: HermeticityDoc,
    pub systems: SystemsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<TranscriptDoc>,
}

impl SimulateDoc {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        original: &AntennaConfig,
        swapped: bool,
        point: &str,
        mode: Mode,
        seed: u64,
        bound: Option<u32>,
        summary: &MonteCarloSummary,
    ) -> Self {
        let mirror = |p: &(Rat, Rat)| {
            if swapped {
                rat_pair(&(p.1.clone(), p.0.clone()))
            } else {
                rat_pair(p)
            }
        };
        SimulateDoc {
            version: SCHEMA_VERSION,
            config: original.as_array(),
            swapped,
            point: point.to_owned(),
            mode: mode.as_str().to_owned(),
            trials: summary.trials,
            seed,
            bound,
            claimed_dof: mirror(&summary.claimed_dof),
            delivered_dof: summary.delivered_dof.as_ref().map(|p| mirror(p)),
            successes: summary.successes,
            failures: summary.failures,
            resamples: summary.resamples,
            stronger_rx_both_all: summary.stronger_rx_both_all,
            hermeticity: HermeticityDoc {
                violations: summary.hermeticity_violations,
                access_records: summary.access_records,
            },
            systems: SystemsDoc {
                rx1: [summary.rx1_system.0, summary.rx1_system.1],
                rx1_reduced: summary.rx1_reduced.map(|(r, c)| [r, c]),
                rx2: [summary.rx2_system.0, summary.rx2_system.1],
            },
            first_failure: summary.first_failure.clone(),
            plan: None,
            transcript: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepViolationDoc {
    pub config: [u32; 4],
    pub check: String,
    pub detail: String,
}

/// Exhaustive-check report over all configurations in `[1, max]^4`.
#[derive(Clone, Debug, Serialize)]
pub struct SweepDoc {
    pub version: &'static str,
    pub max_antennas: u32,
    pub checks: Vec<String>,
    pub configs_checked: usize,
    pub violations: Vec<SweepViolationDoc>,
    pub ok: bool,
}

impl SweepDoc {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m1,m2,n1,n2,check,detail\n");
        for v in &self.violations {
            let [m1, m2, n1, n2] = v.config;
            out.push_str(&format!("{m1},{m2},{n1},{n2},{},{}\n", v.check, v.detail));
        }
        out
    }
}
