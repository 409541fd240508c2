//! Causal execution of a plan over one channel draw.
//!
//! Transmitters see the channel only through [`TxView`], which records every
//! channel-matrix and feedback access together with the slot being computed.
//! The log therefore *proves* the execution used only strictly delayed
//! knowledge: any access to the current or a future slot would show up as a
//! violation (and is additionally rejected up front by plan validation).

use crate::linalg::{solve, Matrix, Scalar};
use crate::schemes::{CausalityError, ComponentId, ComponentKind, SchemePlan, TxEntry};
use crate::sim::channel::{ChannelDraw, Link};
use thiserror::Error;

/// The information symbols both transmitters encode.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth<T> {
    /// Transmitter-1 symbols (`u`).
    pub u: Vec<T>,
    /// Transmitter-2 symbols (`v`).
    pub v: Vec<T>,
}

/// What a transmitter looked at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccessKind {
    /// A channel matrix of the given link.
    Channel(Link),
    /// Receiver-1 feedback (the observation `y1`).
    Feedback,
}

/// One recorded access: which data, from which slot, while computing which
/// slot's transmission.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Access {
    pub kind: AccessKind,
    pub data_slot: usize,
    pub during_slot: usize,
}

/// Append-only record of every channel/feedback access made while computing
/// transmit signals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessLog {
    records: Vec<Access>,
}

impl AccessLog {
    fn push(&mut self, kind: AccessKind, data_slot: usize, during_slot: usize) {
        self.records.push(Access {
            kind,
            data_slot,
            during_slot,
        });
    }

    /// All recorded accesses.
    pub fn records(&self) -> &[Access] {
        &self.records
    }

    /// Number of accesses that touched the current or a future slot. A causal
    /// execution has zero.
    pub fn violations(&self) -> usize {
        self.records
            .iter()
            .filter(|a| a.data_slot >= a.during_slot)
            .count()
    }
}

/// A full run: transmitted signals, observations, and the access log.
#[derive(Clone, Debug)]
pub struct Transcript<T> {
    /// Transmitter-1 signals per slot (length `M1` each).
    pub x1: Vec<Vec<T>>,
    /// Transmitter-2 signals per slot (length `M2` each).
    pub x2: Vec<Vec<T>>,
    /// Receiver-1 observations per slot (length `N1` each).
    pub y1: Vec<Vec<T>>,
    /// Receiver-2 observations per slot (length `N2` each).
    pub y2: Vec<Vec<T>>,
    /// Every channel/feedback access made by the transmitters.
    pub access_log: AccessLog,
}

/// Errors while executing a plan.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    /// The plan itself is not causal/well-formed.
    #[error(transparent)]
    Causality(#[from] CausalityError),
    /// The feedback matrix of a defining slot was rank deficient, so
    /// transmitter 1 could not reconstruct transmitter 2's symbols. A fresh
    /// channel draw fixes this (generic draws have full rank).
    #[error("slot {slot}: feedback matrix is rank deficient, cannot reconstruct x2")]
    ReconstructionRankFailure { slot: usize },
    /// Ground-truth symbol counts do not match the plan's ledger.
    #[error("ground truth has {got_u} u / {got_v} v symbols, plan needs {want_u} / {want_v}")]
    TruthSizeMismatch {
        got_u: usize,
        got_v: usize,
        want_u: usize,
        want_v: usize,
    },
}

/// The transmitters' window onto the world: all reads go through here and are
/// logged with the slot currently being computed.
struct TxView<'a, T> {
    draw: &'a ChannelDraw<T>,
    /// Feedback received so far (slots strictly before `current`).
    y1_past: &'a [Vec<T>],
    current: usize,
    log: &'a mut AccessLog,
}

impl<'a, T: Scalar> TxView<'a, T> {
    fn channel(&mut self, link: Link, slot: usize) -> &'a Matrix<T> {
        self.log.push(AccessKind::Channel(link), slot, self.current);
        debug_assert!(slot < self.current, "channel access must be delayed");
        self.draw.h(link, slot)
    }

    fn feedback(&mut self, slot: usize) -> &'a [T] {
        self.log.push(AccessKind::Feedback, slot, self.current);
        debug_assert!(slot < self.current, "feedback access must be delayed");
        &self.y1_past[slot]
    }
}

fn add_vecs<T: Scalar>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
    a.into_iter().zip(b).map(|(x, y)| x.add(&y)).collect()
}

fn row_dot<T: Scalar>(m: &Matrix<T>, row: usize, v: &[T]) -> T {
    let mut acc = T::zero();
    for (a, x) in m.row(row).iter().zip(v) {
        acc = acc.add(&a.mul(x));
    }
    acc
}

/// Computes the value of one retrospective component from past data only.
fn component_value<T: Scalar>(
    plan: &SchemePlan,
    view: &mut TxView<'_, T>,
    x1_past: &[Vec<T>],
    c: ComponentId,
    tol: f64,
) -> Result<T, SimError> {
    let i = c.slot;
    match c.kind {
        ComponentKind::Interference => {
            // Row q of H21(i) * x1(i): transmitter 1 knows its own past
            // signal and the (delayed) cross matrix.
            let h21 = view.channel(Link::H21, i);
            Ok(row_dot(h21, c.antenna, &x1_past[i]))
        }
        ComponentKind::Signal => {
            // Reconstruct transmitter 2's slot-i symbols from feedback:
            // y1(i) - H11(i) x1(i) = H12(i) x2(i), then take row q of
            // H22(i) x2(i). Only the antennas the plan actually used in slot
            // i are unknowns (the rest are zero by the public plan).
            let active = plan.v_ids_in_slot(i);
            let y1i = view.feedback(i).to_vec();
            let h11 = view.channel(Link::H11, i);
            let residual: Vec<T> = (0..h11.rows())
                .map(|r| y1i[r].sub(&row_dot(h11, r, &x1_past[i])))
                .collect();
            let h12 = view.channel(Link::H12, i);
            let cols: Vec<Vec<T>> = (0..h12.rows())
                .map(|r| active.iter().map(|&(b, _)| h12[[r, b]].clone()).collect())
                .collect();
            let system = Matrix::from_rows(cols);
            let report = solve(&system, &residual, tol);
            let Some(sol) = report.solution else {
                return Err(SimError::ReconstructionRankFailure { slot: i });
            };
            let mut x2 = vec![T::zero(); plan.config.m2 as usize];
            for ((b, _), val) in active.iter().zip(sol) {
                x2[*b] = val;
            }
            let h22 = view.channel(Link::H22, i);
            Ok(row_dot(h22, c.antenna, &x2))
        }
    }
}

/// Executes a plan slot by slot over a channel draw, producing the full
/// transcript. Transmit signals are computed strictly causally (see
/// [`TxView`]); observations are noise-free linear combinations.
pub fn run_scheme<T: Scalar>(
    plan: &SchemePlan,
    draw: &ChannelDraw<T>,
    truth: &GroundTruth<T>,
    tol: f64,
) -> Result<Transcript<T>, SimError> {
    plan.validate_causality()?;
    if truth.u.len() != plan.ledger.u_count || truth.v.len() != plan.ledger.v_count {
        return Err(SimError::TruthSizeMismatch {
            got_u: truth.u.len(),
            got_v: truth.v.len(),
            want_u: plan.ledger.u_count,
            want_v: plan.ledger.v_count,
        });
    }
    assert!(
        draw.slots >= plan.total_slots && draw.config == plan.config,
        "channel draw must cover the plan"
    );

    let mut x1s: Vec<Vec<T>> = Vec::with_capacity(plan.total_slots);
    let mut x2s: Vec<Vec<T>> = Vec::with_capacity(plan.total_slots);
    let mut y1s: Vec<Vec<T>> = Vec::with_capacity(plan.total_slots);
    let mut y2s: Vec<Vec<T>> = Vec::with_capacity(plan.total_slots);
    let mut log = AccessLog::default();

    for s in 0..plan.total_slots {
        let x2: Vec<T> = plan.slots[s]
            .tx2
            .iter()
            .map(|e| match e {
                TxEntry::Zero => T::zero(),
                TxEntry::Fresh { id } => truth.v[*id].clone(),
                TxEntry::Component(_) => unreachable!("validated: tx2 sends no components"),
            })
            .collect();

        let mut x1: Vec<T> = Vec::with_capacity(plan.slots[s].tx1.len());
        {
            let mut view = TxView {
                draw,
                y1_past: &y1s,
                current: s,
                log: &mut log,
            };
            for e in &plan.slots[s].tx1 {
                let val = match e {
                    TxEntry::Zero => T::zero(),
                    TxEntry::Fresh { id } => truth.u[*id].clone(),
                    TxEntry::Component(c) => component_value(plan, &mut view, &x1s, *c, tol)?,
                };
                x1.push(val);
            }
        }

        let y1 = add_vecs(
            draw.h(Link::H11, s).mul_vec(&x1),
            draw.h(Link::H12, s).mul_vec(&x2),
        );
        let y2 = add_vecs(
            draw.h(Link::H21, s).mul_vec(&x1),
            draw.h(Link::H22, s).mul_vec(&x2),
        );
        x1s.push(x1);
        x2s.push(x2);
        y1s.push(y1);
        y2s.push(y2);
    }

    Ok(Transcript {
        x1: x1s,
        x2: x2s,
        y1: y1s,
        y2: y2s,
        access_log: log,
    })
}
