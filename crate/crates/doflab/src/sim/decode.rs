//! Symbol recovery at both receivers, plus exact verification against the
//! ground truth.
//!
//! Receiver 2 (the weaker one) always decodes jointly: its unknowns are
//! transmitter 2's symbols plus, for each fresh-transmission slot, the
//! (absorbed) per-antenna interference terms those slots contributed — the
//! re-sent interference components later hand it those very terms again.
//!
//! Receiver 1 decodes `p0`/`p1` runs the way the construction intends:
//! slot-by-slot extraction of re-sent components and fresh interferers,
//! reconstruction of transmitter-2 symbols from the extracted signal
//! components, interference cancellation, and finally one stacked system in
//! transmitter 1's symbols. A one-shot joint solve over all unknowns serves
//! as an independent oracle and must agree. `p2` runs decode jointly at both
//! receivers.

use crate::linalg::{solve, Matrix, Scalar};
use crate::schemes::{ComponentId, ComponentKind, SchemePlan, SchemePoint, TxEntry};
use crate::sim::channel::{ChannelDraw, Link};
use crate::sim::transcript::{GroundTruth, Transcript};
use std::collections::BTreeMap;

/// Outcome of one receiver's decode.
#[derive(Clone, Debug)]
pub struct RxReport {
    /// Rows of the receiver's full linear system.
    pub equations: usize,
    /// Unknowns of the receiver's full linear system.
    pub unknowns: usize,
    /// Rank the solver found for that system.
    pub rank: usize,
    /// Whether the receiver obtained a unique solution.
    pub solved: bool,
    /// Whether the receiver's own symbols match the ground truth exactly
    /// (within tolerance in float mode).
    pub symbols_correct: bool,
    /// For staged decoding: dimensions of the final reduced system.
    pub reduced_system: Option<(usize, usize)>,
    /// Whether the *other* user's symbols were also recovered (tracked for
    /// the stronger receiver).
    pub cross_symbols_correct: Option<bool>,
    /// Failure description when `solved` is false.
    pub failure: Option<String>,
}

/// Outcome of decoding one transcript.
#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub rx1: RxReport,
    pub rx2: RxReport,
    /// Whether receiver 1 recovered both users' symbols.
    pub stronger_rx_both: bool,
    /// For `p0`/`p1`: whether the staged decode and the one-shot joint solve
    /// agree (`None` when no second method applies or nothing solved).
    pub oracle_consistent: Option<bool>,
}

fn add_at<T: Scalar>(m: &mut Matrix<T>, row: usize, col: usize, delta: T) {
    m[[row, col]] = m[[row, col]].add(&delta);
}

fn vec_matches<T: Scalar>(got: &[T], want: &[T], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g.approx_eq(w, tol))
}

/// Builds receiver 1's joint system over all `u` then all `v` unknowns.
fn rx1_joint_system<T: Scalar>(plan: &SchemePlan, draw: &ChannelDraw<T>) -> (Matrix<T>, usize) {
    let n1 = plan.config.n1 as usize;
    let u_count = plan.ledger.u_count;
    let cols = u_count + plan.ledger.v_count;
    let mut m = Matrix::zeros(plan.total_slots * n1, cols);
    for s in 0..plan.total_slots {
        let h11 = draw.h(Link::H11, s);
        let h12 = draw.h(Link::H12, s);
        for r in 0..n1 {
            let row = s * n1 + r;
            for (a, e) in plan.slots[s].tx1.iter().enumerate() {
                match e {
                    TxEntry::Zero => {}
                    TxEntry::Fresh { id } => add_at(&mut m, row, *id, h11[[r, a]].clone()),
                    TxEntry::Component(c) => {
                        let gain = h11[[r, a]].clone();
                        expand_component(plan, draw, *c, &gain, row, u_count, &mut m);
                    }
                }
            }
            for (b, e) in plan.slots[s].tx2.iter().enumerate() {
                if let TxEntry::Fresh { id } = e {
                    add_at(&mut m, row, u_count + *id, h12[[r, b]].clone());
                }
            }
        }
    }
    (m, u_count)
}

/// Adds `gain * component` to a row of a (u, v)-unknown system by expanding
/// the component into the symbols of its defining slot.
fn expand_component<T: Scalar>(
    plan: &SchemePlan,
    draw: &ChannelDraw<T>,
    c: ComponentId,
    gain: &T,
    row: usize,
    u_offset: usize,
    m: &mut Matrix<T>,
) {
    match c.kind {
        ComponentKind::Interference => {
            let h21 = draw.h(Link::H21, c.slot);
            for (a2, uid) in plan.u_ids_in_slot(c.slot) {
                add_at(m, row, uid, gain.mul(&h21[[c.antenna, a2]]));
            }
        }
        ComponentKind::Signal => {
            let h22 = draw.h(Link::H22, c.slot);
            for (b2, vid) in plan.v_ids_in_slot(c.slot) {
                add_at(m, row, u_offset + vid, gain.mul(&h22[[c.antenna, b2]]));
            }
        }
    }
}

/// Builds receiver 2's joint system: unknowns are all `v` symbols followed by
/// the absorbed interference terms `P(i, q)` of every fresh-transmission
/// slot.
fn rx2_joint_system<T: Scalar>(plan: &SchemePlan, draw: &ChannelDraw<T>) -> Matrix<T> {
    let n2 = plan.config.n2 as usize;
    let v_count = plan.ledger.v_count;
    let cols = v_count + plan.phase1_slots * n2;
    let mut m = Matrix::zeros(plan.total_slots * n2, cols);
    for s in 0..plan.total_slots {
        let h21 = draw.h(Link::H21, s);
        let h22 = draw.h(Link::H22, s);
        for r in 0..n2 {
            let row = s * n2 + r;
            if s < plan.phase1_slots {
                // The entire transmitter-1 contribution of this slot is one
                // absorbed unknown per receive antenna.
                add_at(&mut m, row, v_count + s * n2 + r, T::one());
            } else {
                for (a, e) in plan.slots[s].tx1.iter().enumerate() {
                    match e {
                        TxEntry::Zero => {}
                        TxEntry::Fresh { .. } => {
                            unreachable!("re-send slots carry no fresh transmitter-1 symbols")
                        }
                        TxEntry::Component(c) => match c.kind {
                            ComponentKind::Interference => add_at(
                                &mut m,
                                row,
                                v_count + c.slot * n2 + c.antenna,
                                h21[[r, a]].clone(),
                            ),
                            ComponentKind::Signal => {
                                let h22i = draw.h(Link::H22, c.slot);
                                for (b2, vid) in plan.v_ids_in_slot(c.slot) {
                                    add_at(
                                        &mut m,
                                        row,
                                        vid,
                                        h21[[r, a]].mul(&h22i[[c.antenna, b2]]),
                                    );
                                }
                            }
                        },
                    }
                }
            }
            for (b, e) in plan.slots[s].tx2.iter().enumerate() {
                if let TxEntry::Fresh { id } = e {
                    add_at(&mut m, row, *id, h22[[r, b]].clone());
                }
            }
        }
    }
    m
}

fn flatten<T: Clone>(rows: &[Vec<T>]) -> Vec<T> {
    rows.iter().flatten().cloned().collect()
}

/// Staged receiver-1 decode for `p0`/`p1`. Returns the recovered `u` and `v`
/// symbols and the dimensions of the final stacked system.
fn rx1_staged<T: Scalar>(
    plan: &SchemePlan,
    draw: &ChannelDraw<T>,
    tr: &Transcript<T>,
    tol: f64,
) -> Result<(Vec<T>, Vec<T>, (usize, usize)), String> {
    let t = plan.phase1_slots;
    let n1 = plan.config.n1 as usize;
    let m2 = plan.config.m2 as usize;
    let mut comp_vals: BTreeMap<ComponentId, T> = BTreeMap::new();
    let mut v_hat = vec![T::zero(); plan.ledger.v_count];

    // Per re-send slot: solve for the carried components and that slot's
    // fresh transmitter-2 symbols in one go.
    for s in t..plan.total_slots {
        let comps = plan.components_in_slot(s);
        let vids = plan.v_ids_in_slot(s);
        let h11 = draw.h(Link::H11, s);
        let h12 = draw.h(Link::H12, s);
        let rows: Vec<Vec<T>> = (0..n1)
            .map(|r| {
                let mut row: Vec<T> = comps.iter().map(|&(a, _)| h11[[r, a]].clone()).collect();
                row.extend(vids.iter().map(|&(b, _)| h12[[r, b]].clone()));
                row
            })
            .collect();
        let system = Matrix::from_rows(rows);
        let report = solve(&system, &tr.y1[s], tol);
        let Some(sol) = report.solution else {
            return Err(format!(
                "extraction in slot {}: rank {} of {}x{}",
                s + 1,
                report.rank,
                n1,
                comps.len() + vids.len()
            ));
        };
        for (j, &(_, c)) in comps.iter().enumerate() {
            comp_vals.insert(c, sol[j].clone());
        }
        for (k, &(_, vid)) in vids.iter().enumerate() {
            v_hat[vid] = sol[comps.len() + k].clone();
        }
    }

    // Per fresh slot: the extracted signal components pin down transmitter
    // 2's symbols of that slot.
    for i in 0..t {
        let vids = plan.v_ids_in_slot(i);
        let qs: Vec<(usize, T)> = comp_vals
            .iter()
            .filter(|(c, _)| c.kind == ComponentKind::Signal && c.slot == i)
            .map(|(c, val)| (c.antenna, val.clone()))
            .collect();
        let h22 = draw.h(Link::H22, i);
        let rows: Vec<Vec<T>> = qs
            .iter()
            .map(|&(q, _)| vids.iter().map(|&(b, _)| h22[[q, b]].clone()).collect())
            .collect();
        let rhs: Vec<T> = qs.iter().map(|(_, val)| val.clone()).collect();
        let system = Matrix::from_rows(rows);
        let report = solve(&system, &rhs, tol);
        let Some(sol) = report.solution else {
            return Err(format!(
                "transmitter-2 reconstruction for slot {}: rank {} of {}x{}",
                i + 1,
                report.rank,
                qs.len(),
                vids.len()
            ));
        };
        for (&(_, vid), val) in vids.iter().zip(sol) {
            v_hat[vid] = val;
        }
    }

    // Cancel transmitter 2 everywhere, then stack the fresh-slot residuals
    // with the extracted interference components into one system in `u`.
    let np = comp_vals
        .keys()
        .filter(|c| c.kind == ComponentKind::Interference)
        .count();
    let u_count = plan.ledger.u_count;
    let rows_total = t * n1 + np;
    let mut m = Matrix::zeros(rows_total, u_count);
    let mut rhs = vec![T::zero(); rows_total];
    for i in 0..t {
        let h11 = draw.h(Link::H11, i);
        let h12 = draw.h(Link::H12, i);
        let mut x2 = vec![T::zero(); m2];
        for (b, vid) in plan.v_ids_in_slot(i) {
            x2[b] = v_hat[vid].clone();
        }
        for r in 0..n1 {
            let row = i * n1 + r;
            for (a2, uid) in plan.u_ids_in_slot(i) {
                add_at(&mut m, row, uid, h11[[r, a2]].clone());
            }
            let mut interference = T::zero();
            for (b, x) in x2.iter().enumerate() {
                interference = interference.add(&h12[[r, b]].mul(x));
            }
            rhs[row] = tr.y1[i][r].sub(&interference);
        }
    }
    for (k, (c, val)) in comp_vals
        .iter()
        .filter(|(c, _)| c.kind == ComponentKind::Interference)
        .enumerate()
    {
        let row = t * n1 + k;
        let h21 = draw.h(Link::H21, c.slot);
        for (a2, uid) in plan.u_ids_in_slot(c.slot) {
            add_at(&mut m, row, uid, h21[[c.antenna, a2]].clone());
        }
        rhs[row] = val.clone();
    }
    let report = solve(&m, &rhs, tol);
    let Some(u_hat) = report.solution else {
        return Err(format!(
            "stacked transmitter-1 system: rank {} of {}x{}",
            report.rank, rows_total, u_count
        ));
    };
    Ok((u_hat, v_hat, (rows_total, u_count)))
}

/// Decodes a transcript at both receivers and verifies the recovered symbols
/// against the ground truth. `tol` drives rank decisions, `match_tol` the
/// symbol comparisons (both ignored in exact arithmetic).
pub fn decode<T: Scalar>(
    plan: &SchemePlan,
    draw: &ChannelDraw<T>,
    tr: &Transcript<T>,
    truth: &GroundTruth<T>,
    tol: f64,
    match_tol: f64,
) -> DecodeReport {
    let u_count = plan.ledger.u_count;
    let v_count = plan.ledger.v_count;

    // Receiver 2 (joint).
    let m2sys = rx2_joint_system(plan, draw);
    let rx2_dims = (m2sys.rows(), m2sys.cols());
    let rx2_solve = solve(&m2sys, &flatten(&tr.y2), tol);
    let rx2_sol = rx2_solve.solution.clone();
    let rx2_correct = rx2_sol
        .as_ref()
        .map(|sol| vec_matches(&sol[..v_count], &truth.v, match_tol))
        .unwrap_or(false);
    let rx2 = RxReport {
        equations: rx2_dims.0,
        unknowns: rx2_dims.1,
        rank: rx2_solve.rank,
        solved: rx2_sol.is_some(),
        symbols_correct: rx2_correct,
        reduced_system: None,
        cross_symbols_correct: None,
        failure: if rx2_sol.is_some() {
            None
        } else {
            Some(format!(
                "receiver 2 joint system: rank {} of {}x{}",
                rx2_solve.rank, rx2_dims.0, rx2_dims.1
            ))
        },
    };

    // Receiver 1: joint system always (primary for p2, oracle for p0/p1).
    let (m1sys, _) = rx1_joint_system(plan, draw);
    let rx1_dims = (m1sys.rows(), m1sys.cols());
    let rx1_solve = solve(&m1sys, &flatten(&tr.y1), tol);
    let joint_sol = rx1_solve.solution.clone();

    let rx1;
    let oracle_consistent;
    match plan.point {
        SchemePoint::P0 | SchemePoint::P1 => match rx1_staged(plan, draw, tr, tol) {
            Ok((u_hat, v_hat, reduced)) => {
                let u_ok = vec_matches(&u_hat, &truth.u, match_tol);
                let v_ok = vec_matches(&v_hat, &truth.v, match_tol);
                oracle_consistent = Some(joint_sol.as_ref().is_some_and(|sol| {
                    vec_matches(&sol[..u_count], &u_hat, match_tol)
                        && vec_matches(&sol[u_count..], &v_hat, match_tol)
                }));
                rx1 = RxReport {
                    equations: rx1_dims.0,
                    unknowns: rx1_dims.1,
                    rank: rx1_solve.rank,
                    solved: true,
                    symbols_correct: u_ok,
                    reduced_system: Some(reduced),
                    cross_symbols_correct: Some(v_ok),
                    failure: None,
                };
            }
            Err(msg) => {
                oracle_consistent = None;
                rx1 = RxReport {
                    equations: rx1_dims.0,
                    unknowns: rx1_dims.1,
                    rank: rx1_solve.rank,
                    solved: false,
                    symbols_correct: false,
                    reduced_system: None,
                    cross_symbols_correct: None,
                    failure: Some(msg),
                };
            }
        },
        SchemePoint::P2 => {
            oracle_consistent = None;
            match joint_sol.as_ref() {
                Some(sol) => {
                    let u_ok = vec_matches(&sol[..u_count], &truth.u, match_tol);
                    let v_ok = vec_matches(&sol[u_count..], &truth.v, match_tol);
                    rx1 = RxReport {
                        equations: rx1_dims.0,
                        unknowns: rx1_dims.1,
                        rank: rx1_solve.rank,
                        solved: true,
                        symbols_correct: u_ok,
                        reduced_system: None,
                        cross_symbols_correct: Some(v_ok),
                        failure: None,
                    };
                }
                None => {
                    rx1 = RxReport {
                        equations: rx1_dims.0,
                        unknowns: rx1_dims.1,
                        rank: rx1_solve.rank,
                        solved: false,
                        symbols_correct: false,
                        reduced_system: None,
                        cross_symbols_correct: None,
                        failure: Some(format!(
                            "receiver 1 joint system: rank {} of {}x{}",
                            rx1_solve.rank, rx1_dims.0, rx1_dims.1
                        )),
                    };
                }
            }
        }
    }

    let stronger_rx_both =
        rx1.solved && rx1.symbols_correct && rx1.cross_symbols_correct == Some(true);
    DecodeReport {
        rx1,
        rx2,
        stronger_rx_both,
        oracle_consistent,
    }
}
