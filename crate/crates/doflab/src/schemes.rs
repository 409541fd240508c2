//! Symbolic multi-slot transmission plans for the corner points of the
//! feedback region.
//!
//! A plan says, for every slot and every transmit antenna, what is sent:
//! nothing, a fresh information symbol, or a retrospective component — a
//! scalar the transmitter can reproduce from *past* channel matrices and past
//! receiver-1 feedback. Components come in two kinds, both tied to a defining
//! slot `i` and a receiver-2 antenna `q`:
//!
//! * an interference component `P(i, q)`: row `q` of `H21(i) * x1(i)`, the
//!   interference transmitter 1 caused at receiver 2 in slot `i`;
//! * a signal component `Q(i, q)`: row `q` of `H22(i) * x2(i)`, the
//!   contribution transmitter 2's slot-`i` symbols made at receiver 2, which
//!   transmitter 1 reproduces by first reconstructing `x2(i)` from its
//!   feedback `y1(i)` (possible because receiver 1 has at least `M2`
//!   antennas in the regimes where plans exist).
//!
//! Re-broadcasting these components simultaneously gives receiver 2 the terms
//! it already measured (aligning interference) and receiver 1 fresh
//! equations, which is what achieves the corner points.

use crate::classify::{classify, RegimeTag};
use crate::config::AntennaConfig;
use crate::geometry::Point;
use crate::rational::{rat_int, Rat};
use num::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which corner point a plan targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemePoint {
    /// CaseA corner `(N1 - M2, M2)`.
    P0,
    /// CaseB corner `(M1~ (N2 - M2) / N2, M2)`.
    P1,
    /// CaseB corner `(M1~ (N1 - N2) / (M1~ - N2), N2 (M1~ - N1) / (M1~ - N2))`.
    P2,
}

impl SchemePoint {
    /// Stable machine name (`p0` / `p1` / `p2`).
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemePoint::P0 => "p0",
            SchemePoint::P1 => "p1",
            SchemePoint::P2 => "p2",
        }
    }

    /// Parses the machine name.
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "p0" => Some(SchemePoint::P0),
            "p1" => Some(SchemePoint::P1),
            "p2" => Some(SchemePoint::P2),
            _ => None,
        }
    }
}

impl std::fmt::Display for SchemePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The two component kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    /// `P(i, q)`: interference caused by transmitter 1 at receiver 2.
    Interference,
    /// `Q(i, q)`: receiver-2 contribution of transmitter 2's own symbols.
    Signal,
}

/// Identity of a retrospective component: kind, defining slot, and the
/// receiver-2 antenna (row) it corresponds to. Slots and antennas are
/// 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentId {
    pub kind: ComponentKind,
    pub slot: usize,
    pub antenna: usize,
}

impl std::fmt::Display for ComponentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self.kind {
            ComponentKind::Interference => 'P',
            ComponentKind::Signal => 'Q',
        };
        write!(f, "{}({},{})", k, self.slot + 1, self.antenna + 1)
    }
}

fn p(slot: usize, antenna: usize) -> ComponentId {
    ComponentId {
        kind: ComponentKind::Interference,
        slot,
        antenna,
    }
}

fn q(slot: usize, antenna: usize) -> ComponentId {
    ComponentId {
        kind: ComponentKind::Signal,
        slot,
        antenna,
    }
}

/// What one transmit antenna sends in one slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TxEntry {
    /// Antenna is silent.
    Zero,
    /// A fresh information symbol, identified by its global index within the
    /// transmitter's symbol list.
    Fresh { id: usize },
    /// A retrospective component (only ever used by transmitter 1).
    Component(ComponentId),
}

/// Per-slot antenna assignment of both transmitters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotPlan {
    /// One entry per transmitter-1 antenna (length `M1`).
    pub tx1: Vec<TxEntry>,
    /// One entry per transmitter-2 antenna (length `M2`).
    pub tx2: Vec<TxEntry>,
}

/// One counting check `unknowns <= equations`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub equations: usize,
    pub unknowns: usize,
    /// `unknowns <= equations`.
    pub satisfied: bool,
    /// `unknowns == equations`.
    pub tight: bool,
}

impl CountCheck {
    fn new(equations: usize, unknowns: usize) -> Self {
        Self {
            equations,
            unknowns,
            satisfied: unknowns <= equations,
            tight: unknowns == equations,
        }
    }
}

/// Dimension counting for the plan: each receiver must see at least as many
/// equations as unknowns, and (for `p2`) transmitter 2 must have room for all
/// its symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// Receiver 1: total observations vs. symbols it must resolve.
    pub rx1: CountCheck,
    /// Receiver 2: total observations vs. symbols plus absorbed interference.
    pub rx2: CountCheck,
    /// Transmitter-2 scheduling room (only for `p2`).
    pub tx2_budget: Option<CountCheck>,
}

impl FeasibilityReport {
    /// Whether every counting check holds.
    pub fn all_satisfied(&self) -> bool {
        self.rx1.satisfied
            && self.rx2.satisfied
            && self.tx2_budget.map_or(true, |c| c.satisfied)
    }
}

/// Bookkeeping of every symbol and component a plan involves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolLedger {
    /// Number of transmitter-1 information symbols (`u` symbols).
    pub u_count: usize,
    /// Number of transmitter-2 information symbols (`v` symbols).
    pub v_count: usize,
    /// Every component the plan defines (whether or not it is re-sent).
    pub components: Vec<ComponentId>,
    /// The components transmitter 1 re-sends, in transmission order.
    pub forwarded: Vec<ComponentId>,
}

/// A complete corner-point transmission plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemePlan {
    /// The (canonical) configuration the plan is built for.
    pub config: AntennaConfig,
    /// Which corner the plan achieves.
    pub point: SchemePoint,
    /// Number of leading slots in which transmitter 1 sends fresh symbols.
    pub phase1_slots: usize,
    /// Total number of slots `L`.
    pub total_slots: usize,
    /// Per-slot antenna assignments (length `total_slots`).
    pub slots: Vec<SlotPlan>,
    /// Symbol and component bookkeeping.
    pub ledger: SymbolLedger,
    /// The DoF pair `(u_count / L, v_count / L)` the plan claims.
    pub claimed_dof: Point,
    /// Counting checks.
    pub feasibility: FeasibilityReport,
}

/// Errors from plan construction and time sharing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    /// The requested corner point does not exist in this regime.
    #[error("corner point {point} is not applicable to {config}: regime is {tag}")]
    NotApplicable {
        config: AntennaConfig,
        tag: RegimeTag,
        point: SchemePoint,
    },
    /// Dimension counting failed (cannot happen for regimes where the plans
    /// are defined; reported rather than asserted for robustness).
    #[error("plan for {config} is infeasible: {detail}")]
    Infeasible {
        config: AntennaConfig,
        detail: String,
    },
    /// `time_share` requires `0 <= theta <= 1`.
    #[error("time-share weight must lie in [0, 1], got {theta}")]
    InvalidTheta { theta: String },
}

/// Structural causality violations found by [`SchemePlan::validate_causality`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CausalityError {
    #[error("slot {slot}: component {component} is not defined strictly earlier")]
    FutureComponent { slot: usize, component: String },
    #[error("slot {slot}: component {component} is defined in a slot without fresh symbols")]
    NonSourceSlot { slot: usize, component: String },
    #[error("transmitter {tx} symbol {id} is sent {count} times (expected exactly once)")]
    FreshSymbolMisuse { tx: u8, id: usize, count: usize },
    #[error("slot {slot}: transmitter {tx} has {got} entries, expected {want}")]
    WrongWidth {
        slot: usize,
        tx: u8,
        got: usize,
        want: usize,
    },
    #[error("signal components need N1 >= M2 to reconstruct x2 from feedback ({n1} < {m2})")]
    ReconstructionImpossible { n1: u32, m2: u32 },
}

impl SchemePlan {
    /// Fresh transmitter-1 symbol ids sent in a slot, as `(antenna, id)`.
    pub fn u_ids_in_slot(&self, slot: usize) -> Vec<(usize, usize)> {
        fresh_ids(&self.slots[slot].tx1)
    }

    /// Fresh transmitter-2 symbol ids sent in a slot, as `(antenna, id)`.
    pub fn v_ids_in_slot(&self, slot: usize) -> Vec<(usize, usize)> {
        fresh_ids(&self.slots[slot].tx2)
    }

    /// Components transmitter 1 re-sends in a slot, as `(antenna, id)`.
    pub fn components_in_slot(&self, slot: usize) -> Vec<(usize, ComponentId)> {
        self.slots[slot]
            .tx1
            .iter()
            .enumerate()
            .filter_map(|(a, e)| match e {
                TxEntry::Component(c) => Some((a, *c)),
                _ => None,
            })
            .collect()
    }

    /// Checks that the plan only ever re-sends components whose defining slot
    /// lies strictly in the past (and was a fresh-transmission slot), that
    /// every fresh symbol is sent exactly once, that slot widths match the
    /// antenna counts, and that signal components are reconstructible at all
    /// (`N1 >= M2`).
    pub fn validate_causality(&self) -> Result<(), CausalityError> {
        let m1 = self.config.m1 as usize;
        let m2 = self.config.m2 as usize;
        let mut u_seen = vec![0usize; self.ledger.u_count];
        let mut v_seen = vec![0usize; self.ledger.v_count];
        let mut uses_signal_components = false;
        for (s, slot) in self.slots.iter().enumerate() {
            if slot.tx1.len() != m1 {
                return Err(CausalityError::WrongWidth {
                    slot: s,
                    tx: 1,
                    got: slot.tx1.len(),
                    want: m1,
                });
            }
            if slot.tx2.len() != m2 {
                return Err(CausalityError::WrongWidth {
                    slot: s,
                    tx: 2,
                    got: slot.tx2.len(),
                    want: m2,
                });
            }
            for e in &slot.tx1 {
                match e {
                    TxEntry::Zero => {}
                    TxEntry::Fresh { id } => {
                        if *id >= u_seen.len() {
                            return Err(CausalityError::FreshSymbolMisuse {
                                tx: 1,
                                id: *id,
                                count: 0,
                            });
                        }
                        u_seen[*id] += 1;
                    }
                    TxEntry::Component(c) => {
                        if c.kind == ComponentKind::Signal {
                            uses_signal_components = true;
                        }
                        if c.slot >= s {
                            return Err(CausalityError::FutureComponent {
                                slot: s,
                                component: c.to_string(),
                            });
                        }
                        if c.slot >= self.phase1_slots {
                            return Err(CausalityError::NonSourceSlot {
                                slot: s,
                                component: c.to_string(),
                            });
                        }
                    }
                }
            }
            for e in &slot.tx2 {
                match e {
                    TxEntry::Zero => {}
                    TxEntry::Fresh { id } => {
                        if *id >= v_seen.len() {
                            return Err(CausalityError::FreshSymbolMisuse {
                                tx: 2,
                                id: *id,
                                count: 0,
                            });
                        }
                        v_seen[*id] += 1;
                    }
                    TxEntry::Component(_) => {
                        return Err(CausalityError::NonSourceSlot {
                            slot: s,
                            component: "transmitter 2 never forwards components".into(),
                        });
                    }
                }
            }
        }
        for (id, &count) in u_seen.iter().enumerate() {
            if count != 1 {
                return Err(CausalityError::FreshSymbolMisuse { tx: 1, id, count });
            }
        }
        for (id, &count) in v_seen.iter().enumerate() {
            if count != 1 {
                return Err(CausalityError::FreshSymbolMisuse { tx: 2, id, count });
            }
        }
        if uses_signal_components && self.config.n1 < self.config.m2 {
            return Err(CausalityError::ReconstructionImpossible {
                n1: self.config.n1,
                m2: self.config.m2,
            });
        }
        Ok(())
    }
}

fn fresh_ids(entries: &[TxEntry]) -> Vec<(usize, usize)> {
    entries
        .iter()
        .enumerate()
        .filter_map(|(a, e)| match e {
            TxEntry::Fresh { id } => Some((a, *id)),
            _ => None,
        })
        .collect()
}

/// Splits `total` into `parts` chunk sizes, maximally even, earlier chunks
/// larger.
fn even_chunks(total: usize, parts: usize) -> Vec<usize> {
    let base = total / parts;
    let rem = total % parts;
    (0..parts).map(|k| base + usize::from(k < rem)).collect()
}

/// Alternates the two streams starting with the first, appending whatever
/// remains once one runs out.
fn interleave(a: Vec<ComponentId>, b: Vec<ComponentId>) -> Vec<ComponentId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ai = a.into_iter();
    let mut bi = b.into_iter();
    loop {
        match (ai.next(), bi.next()) {
            (Some(x), Some(y)) => {
                out.push(x);
                out.push(y);
            }
            (Some(x), None) => {
                out.push(x);
                out.extend(ai);
                break;
            }
            (None, Some(y)) => {
                out.push(y);
                out.extend(bi);
                break;
            }
            (None, None) => break,
        }
    }
    out
}

/// Round-robin over defining slots: emits `(slot 0, ant 0), (slot 1, ant 0),
/// ..., (slot 0, ant 1), ...`, skipping slots whose antenna budget `limit[i]`
/// is exhausted. This spreads the taken prefix evenly over defining slots.
fn round_robin(kind: ComponentKind, limits: &[usize]) -> Vec<ComponentId> {
    let max = limits.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for antenna in 0..max {
        for (slot, &limit) in limits.iter().enumerate() {
            if antenna < limit {
                out.push(ComponentId {
                    kind,
                    slot,
                    antenna,
                });
            }
        }
    }
    out
}

/// Lays the component sequence onto phase-two slots with the given per-slot
/// counts: components occupy the lowest-indexed antennas, remaining antennas
/// stay silent.
fn fill_forward_slots(
    sequence: &[ComponentId],
    chunks: &[usize],
    width: usize,
) -> Vec<Vec<TxEntry>> {
    debug_assert_eq!(chunks.iter().sum::<usize>(), sequence.len());
    let mut out = Vec::with_capacity(chunks.len());
    let mut offset = 0;
    for &c in chunks {
        let mut entries = vec![TxEntry::Zero; width];
        for (a, comp) in sequence[offset..offset + c].iter().enumerate() {
            entries[a] = TxEntry::Component(*comp);
        }
        offset += c;
        out.push(entries);
    }
    out
}

fn fresh_row(width: usize, used: usize, first_id: usize) -> Vec<TxEntry> {
    (0..width)
        .map(|a| {
            if a < used {
                TxEntry::Fresh { id: first_id + a }
            } else {
                TxEntry::Zero
            }
        })
        .collect()
}

fn usize_of(b: &BigInt) -> usize {
    b.to_usize().expect("slot counts fit in usize")
}

/// Builds the plan for the corner `P0` (CaseA) or `P1` (CaseB); the same
/// construction yields whichever of the two the regime calls for.
///
/// Transmitter 1 sends `M1~` fresh symbols per slot for `T` slots, then
/// re-sends interference and signal components for the remaining `L - T`
/// slots; transmitter 2 sends `M2` fresh symbols in every slot. `T` is the
/// smallest positive integer making `L = T * max(M1~ / (N1 - M2),
/// N2 / (N2 - M2))` an integer. The claimed DoF pair is `(T * M1~ / L, M2)`.
pub fn plan_p0_p1(cfg: &AntennaConfig) -> Result<SchemePlan, SchemeError> {
    debug_assert!(cfg.is_canonical(), "plans require canonical orientation");
    let class = classify(cfg);
    let point = match class.tag {
        RegimeTag::CaseA => SchemePoint::P0,
        RegimeTag::CaseB => SchemePoint::P1,
        RegimeTag::EqualDelayed => {
            return Err(SchemeError::NotApplicable {
                config: *cfg,
                tag: class.tag,
                point: SchemePoint::P0,
            })
        }
    };
    let mt = cfg.m1_tilde() as usize;
    let (m1, m2) = (cfg.m1 as usize, cfg.m2 as usize);
    let (n1, n2) = (cfg.n1 as usize, cfg.n2 as usize);

    // L / T = max(M1~ / (N1 - M2), N2 / (N2 - M2)) in lowest terms.
    let ratio = std::cmp::max(
        Rat::new(BigInt::from(mt), BigInt::from(n1 - m2)),
        Rat::new(BigInt::from(n2), BigInt::from(n2 - m2)),
    );
    let t = usize_of(ratio.denom());
    let l = usize_of(ratio.numer());
    let u_count = t * mt;
    let v_count = l * m2;

    // Components available for re-sending: P(i, q) and Q(i, q) for every
    // phase-one slot i and receiver-2 antenna q. Receiver 1 can extract at
    // most N1 - M2 components per phase-two slot (next to M2 fresh
    // interferers), receiver 2 needs at least M2 signal components per
    // phase-one slot and tolerates at most N2 of either kind per slot.
    let c_total = ((l - t) * (n1 - m2)).min(2 * t * n2);
    let nq = (t * m2).max(c_total.saturating_sub(t * n2));
    let np = c_total - nq;
    debug_assert!(np <= t * n2 && nq <= t * n2);
    debug_assert!(np >= t * (mt - n1), "every defining slot keeps enough interference components");

    let p_seq: Vec<ComponentId> = round_robin(ComponentKind::Interference, &vec![n2; t])
        .into_iter()
        .take(np)
        .collect();
    let q_seq: Vec<ComponentId> = round_robin(ComponentKind::Signal, &vec![n2; t])
        .into_iter()
        .take(nq)
        .collect();
    let forwarded = interleave(p_seq, q_seq);

    let mut slots = Vec::with_capacity(l);
    for s in 0..t {
        slots.push(SlotPlan {
            tx1: fresh_row(m1, mt, s * mt),
            tx2: fresh_row(m2, m2, s * m2),
        });
    }
    let chunks = even_chunks(forwarded.len(), l - t);
    for (k, tx1) in fill_forward_slots(&forwarded, &chunks, m1).into_iter().enumerate() {
        let s = t + k;
        slots.push(SlotPlan {
            tx1,
            tx2: fresh_row(m2, m2, s * m2),
        });
    }

    let mut components = Vec::new();
    for kind in [ComponentKind::Interference, ComponentKind::Signal] {
        for slot in 0..t {
            for antenna in 0..n2 {
                components.push(ComponentId {
                    kind,
                    slot,
                    antenna,
                });
            }
        }
    }

    let feasibility = FeasibilityReport {
        rx1: CountCheck::new(l * n1, t * mt + l * m2),
        rx2: CountCheck::new(l * n2, l * m2 + t * n2),
        tx2_budget: None,
    };
    if !feasibility.all_satisfied() {
        return Err(SchemeError::Infeasible {
            config: *cfg,
            detail: format!("{feasibility:?}"),
        });
    }

    let claimed_dof = (
        Rat::new(BigInt::from(u_count), BigInt::from(l)),
        rat_int(m2 as i64),
    );
    let plan = SchemePlan {
        config: *cfg,
        point,
        phase1_slots: t,
        total_slots: l,
        slots,
        ledger: SymbolLedger {
            u_count,
            v_count,
            components,
            forwarded,
        },
        claimed_dof,
        feasibility,
    };
    debug_assert_eq!(plan.validate_causality(), Ok(()));
    Ok(plan)
}

/// Builds the plan for the corner `P2` (CaseB only).
///
/// Over `L = M1~ - N2` slots, transmitter 1 sends `M1~` fresh symbols in each
/// of the first `E = N1 - N2` slots and then re-sends components over the
/// remaining `K = M1~ - N1` slots; transmitter 2 sends `N2 (M1~ - N1)` fresh
/// symbols, as many as fit in the first `E` slots and the rest later. In each
/// re-send slot the combined count of components and fresh symbols is at
/// least `N1`: receiver 1's joint system is square here, so a slot offering
/// fewer than `N1` active transmit dimensions would leave some of its `N1`
/// observations expressible as combinations orthogonal to every column,
/// making the system singular for all channel draws. The claimed DoF pair is
/// `(M1~ E / L, N2 (M1~ - N1) / L)`.
pub fn plan_p2(cfg: &AntennaConfig) -> Result<SchemePlan, SchemeError> {
    debug_assert!(cfg.is_canonical(), "plans require canonical orientation");
    let class = classify(cfg);
    if class.tag != RegimeTag::CaseB {
        return Err(SchemeError::NotApplicable {
            config: *cfg,
            tag: class.tag,
            point: SchemePoint::P2,
        });
    }
    let mt = cfg.m1_tilde() as usize;
    let (m1, m2) = (cfg.m1 as usize, cfg.m2 as usize);
    let (n1, n2) = (cfg.n1 as usize, cfg.n2 as usize);
    let l = mt - n2;
    let e = n1 - n2;
    let u_count = mt * e;
    let v_count = n2 * (mt - n1);

    let tx2_budget = CountCheck::new(l * m2, v_count);
    if !tx2_budget.satisfied {
        return Err(SchemeError::Infeasible {
            config: *cfg,
            detail: format!(
                "transmitter 2 cannot place {v_count} symbols into {} antenna-slots",
                l * m2
            ),
        });
    }
    let k = mt - n1;

    // Fresh transmitter-2 symbols: fill the early slots first (evenly, capped
    // by the antenna count), deferring the remainder to the re-send slots.
    let v_p1 = v_count.min(e * m2);
    let alloc1 = even_chunks(v_p1, e);
    debug_assert!(alloc1.iter().all(|&a| a <= m2));
    let v_p2 = v_count - v_p1;

    // Forwarded components: the signal components of every early fresh
    // transmitter-2 symbol, plus as many early interference components as the
    // remaining late-slot antenna capacity allows (always enough for receiver
    // 1 to strip the early cross-interference).
    let q_seq = round_robin(ComponentKind::Signal, &alloc1);
    let total_q = q_seq.len();
    let np = (e * n2).min(mt * k - total_q);
    debug_assert!(np >= e * k, "each early slot needs {k} interference components");
    let p_seq: Vec<ComponentId> = round_robin(ComponentKind::Interference, &vec![n2; e])
        .into_iter()
        .take(np)
        .collect();
    let forwarded = interleave(p_seq, q_seq);

    // Re-send slot layout: split the combined load (components plus deferred
    // fresh symbols) evenly across the K slots, then realize each slot's
    // total as components on the lowest antennas of transmitter 1 plus fresh
    // symbols from transmitter 2. Fresh counts start at the forced overflow
    // past the M1~ component antennas and absorb the rest one at a time,
    // capped by M2.
    let totals = even_chunks(forwarded.len() + v_p2, k);
    debug_assert!(totals.iter().all(|&t| t >= n1));
    let mut alloc2: Vec<usize> = totals.iter().map(|&t| t.saturating_sub(mt)).collect();
    let mut extra = v_p2 - alloc2.iter().sum::<usize>();
    while extra > 0 {
        let before = extra;
        for s in 0..k {
            if extra > 0 && alloc2[s] < m2 {
                alloc2[s] += 1;
                extra -= 1;
            }
        }
        assert!(extra < before, "late fresh symbols exceed antenna capacity");
    }
    let chunks: Vec<usize> = totals.iter().zip(&alloc2).map(|(&t, &a)| t - a).collect();
    debug_assert!(chunks.iter().all(|&c| c <= mt));
    debug_assert_eq!(chunks.iter().sum::<usize>(), forwarded.len());

    let mut slots = Vec::with_capacity(l);
    let mut v_next = 0;
    for s in 0..e {
        slots.push(SlotPlan {
            tx1: fresh_row(m1, mt, s * mt),
            tx2: fresh_row(m2, alloc1[s], v_next),
        });
        v_next += alloc1[s];
    }
    for (j, tx1) in fill_forward_slots(&forwarded, &chunks, m1).into_iter().enumerate() {
        slots.push(SlotPlan {
            tx1,
            tx2: fresh_row(m2, alloc2[j], v_next),
        });
        v_next += alloc2[j];
    }
    debug_assert_eq!(v_next, v_count);

    let mut components = Vec::new();
    for slot in 0..e {
        for antenna in 0..n2 {
            components.push(p(slot, antenna));
        }
        for antenna in 0..alloc1[slot] {
            components.push(q(slot, antenna));
        }
    }

    let feasibility = FeasibilityReport {
        rx1: CountCheck::new(l * n1, u_count + v_count),
        rx2: CountCheck::new(l * n2, v_count + e * n2),
        tx2_budget: Some(tx2_budget),
    };
    if !feasibility.all_satisfied() {
        return Err(SchemeError::Infeasible {
            config: *cfg,
            detail: format!("{feasibility:?}"),
        });
    }

    let claimed_dof = (
        Rat::new(BigInt::from(u_count), BigInt::from(l)),
        Rat::new(BigInt::from(v_count), BigInt::from(l)),
    );
    let plan = SchemePlan {
        config: *cfg,
        point: SchemePoint::P2,
        phase1_slots: e,
        total_slots: l,
        slots,
        ledger: SymbolLedger {
            u_count,
            v_count,
            components,
            forwarded,
        },
        claimed_dof,
        feasibility,
    };
    debug_assert_eq!(plan.validate_causality(), Ok(()));
    Ok(plan)
}

/// Exact convex combination of two DoF points: `theta * a + (1 - theta) * b`
/// with `0 <= theta <= 1`.
pub fn time_share(a: &Point, b: &Point, theta: &Rat) -> Result<Point, SchemeError> {
    if theta < &rat_int(0) || theta > &rat_int(1) {
        return Err(SchemeError::InvalidTheta {
            theta: crate::rational::format_rat(theta),
        });
    }
    let one_minus = rat_int(1) - theta;
    Ok((
        theta * &a.0 + &one_minus * &b.0,
        theta * &a.1 + &one_minus * &b.1,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cfg(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, n1, n2).unwrap()
    }

    fn f(id: usize) -> TxEntry {
        TxEntry::Fresh { id }
    }

    fn cp(slot: usize, antenna: usize) -> TxEntry {
        TxEntry::Component(p(slot, antenna))
    }

    fn cq(slot: usize, antenna: usize) -> TxEntry {
        TxEntry::Component(q(slot, antenna))
    }

    const Z: TxEntry = TxEntry::Zero;

    #[test]
    fn p0_plan_6243() {
        let plan = plan_p0_p1(&cfg(6, 2, 4, 3)).unwrap();
        assert_eq!(plan.point, SchemePoint::P0);
        assert_eq!(plan.phase1_slots, 1);
        assert_eq!(plan.total_slots, 3);
        assert_eq!(plan.claimed_dof, (rat_int(2), rat_int(2)));
        assert_eq!(plan.ledger.u_count, 6);
        assert_eq!(plan.ledger.v_count, 6);
        assert_eq!(
            plan.slots[0].tx1,
            vec![f(0), f(1), f(2), f(3), f(4), f(5)]
        );
        assert_eq!(plan.slots[0].tx2, vec![f(0), f(1)]);
        assert_eq!(plan.slots[1].tx1, vec![cp(0, 0), cq(0, 0), Z, Z, Z, Z]);
        assert_eq!(plan.slots[1].tx2, vec![f(2), f(3)]);
        assert_eq!(plan.slots[2].tx1, vec![cp(0, 1), cq(0, 1), Z, Z, Z, Z]);
        assert_eq!(plan.slots[2].tx2, vec![f(4), f(5)]);
        // Both receivers are exactly determined: 9 = 9 and 12 = 12.
        assert_eq!(plan.feasibility.rx2, CountCheck::new(9, 9));
        assert!(plan.feasibility.rx2.tight);
        assert_eq!(plan.feasibility.rx1, CountCheck::new(12, 12));
        assert!(plan.feasibility.rx1.tight);
        plan.validate_causality().unwrap();
    }

    #[test]
    fn p1_plan_8465() {
        let plan = plan_p0_p1(&cfg(8, 4, 6, 5)).unwrap();
        assert_eq!(plan.point, SchemePoint::P1);
        assert_eq!(plan.phase1_slots, 1);
        assert_eq!(plan.total_slots, 5);
        assert_eq!(plan.claimed_dof, (rat(8, 5), rat_int(4)));
        assert_eq!(plan.ledger.u_count, 8);
        assert_eq!(plan.ledger.v_count, 20);
        for i in 0..4 {
            let s = i + 1;
            let mut want = vec![Z; 8];
            want[0] = cp(0, i);
            want[1] = cq(0, i);
            assert_eq!(plan.slots[s].tx1, want, "slot {s}");
            assert_eq!(
                plan.slots[s].tx2,
                vec![f(4 * s), f(4 * s + 1), f(4 * s + 2), f(4 * s + 3)]
            );
        }
        assert_eq!(plan.feasibility.rx2, CountCheck::new(25, 25));
        assert_eq!(plan.feasibility.rx1, CountCheck::new(30, 28));
        assert!(!plan.feasibility.rx1.tight);
        plan.validate_causality().unwrap();
    }

    #[test]
    fn p0_plan_with_two_phase_one_slots() {
        // (7, 2, 4, 3) has L / T = 7/2, so two fresh slots and five re-send
        // slots carrying two components each.
        let plan = plan_p0_p1(&cfg(7, 2, 4, 3)).unwrap();
        assert_eq!(plan.point, SchemePoint::P0);
        assert_eq!(plan.phase1_slots, 2);
        assert_eq!(plan.total_slots, 7);
        assert_eq!(plan.claimed_dof, (rat_int(2), rat_int(2)));
        assert_eq!(plan.ledger.u_count, 14);
        assert_eq!(plan.ledger.v_count, 14);
        let expect: [[TxEntry; 2]; 5] = [
            [cp(0, 0), cq(0, 0)],
            [cp(1, 0), cq(1, 0)],
            [cp(0, 1), cq(0, 1)],
            [cp(1, 1), cq(1, 1)],
            [cp(0, 2), cp(1, 2)],
        ];
        for (k, want) in expect.iter().enumerate() {
            let s = k + 2;
            let mut row = vec![Z; 7];
            row[0] = want[0];
            row[1] = want[1];
            assert_eq!(plan.slots[s].tx1, row, "slot {s}");
        }
        assert_eq!(plan.feasibility.rx1, CountCheck::new(28, 28));
        assert_eq!(plan.feasibility.rx2, CountCheck::new(21, 20));
        plan.validate_causality().unwrap();
    }

    #[test]
    fn excess_antennas_stay_silent() {
        // M1 = 8 > N1 + N2 = 7: antenna 8 never transmits.
        let plan = plan_p0_p1(&cfg(8, 2, 4, 3)).unwrap();
        assert_eq!(plan.phase1_slots, 2);
        assert_eq!(plan.total_slots, 7);
        assert_eq!(plan.ledger.u_count, 14);
        for s in 0..2 {
            assert_eq!(plan.slots[s].tx1.len(), 8);
            assert_eq!(plan.slots[s].tx1[7], Z);
            assert_eq!(plan.u_ids_in_slot(s).len(), 7);
        }
        plan.validate_causality().unwrap();
    }

    #[test]
    fn p2_plan_8465() {
        let plan = plan_p2(&cfg(8, 4, 6, 5)).unwrap();
        assert_eq!(plan.point, SchemePoint::P2);
        assert_eq!(plan.phase1_slots, 1);
        assert_eq!(plan.total_slots, 3);
        assert_eq!(plan.claimed_dof, (rat(8, 3), rat(10, 3)));
        assert_eq!(plan.ledger.u_count, 8);
        assert_eq!(plan.ledger.v_count, 10);
        // Transmitter 2 spreads 10 symbols as 4 + 3 + 3.
        assert_eq!(plan.slots[0].tx2, vec![f(0), f(1), f(2), f(3)]);
        assert_eq!(plan.slots[1].tx2, vec![f(4), f(5), f(6), Z]);
        assert_eq!(plan.slots[2].tx2, vec![f(7), f(8), f(9), Z]);
        // Phase two re-sends five interference and four signal components.
        assert_eq!(
            plan.slots[1].tx1,
            vec![cp(0, 0), cq(0, 0), cp(0, 1), cq(0, 1), cp(0, 2), Z, Z, Z]
        );
        assert_eq!(
            plan.slots[2].tx1,
            vec![cq(0, 2), cp(0, 3), cq(0, 3), cp(0, 4), Z, Z, Z, Z]
        );
        assert_eq!(plan.feasibility.rx1, CountCheck::new(18, 18));
        assert_eq!(plan.feasibility.rx2, CountCheck::new(15, 15));
        assert_eq!(plan.feasibility.tx2_budget, Some(CountCheck::new(12, 10)));
        plan.validate_causality().unwrap();
    }

    #[test]
    fn plans_refuse_wrong_regimes() {
        assert!(matches!(
            plan_p0_p1(&cfg(3, 3, 3, 3)),
            Err(SchemeError::NotApplicable {
                tag: RegimeTag::EqualDelayed,
                ..
            })
        ));
        assert!(matches!(
            plan_p2(&cfg(6, 2, 4, 3)),
            Err(SchemeError::NotApplicable {
                tag: RegimeTag::CaseA,
                ..
            })
        ));
        assert!(matches!(
            plan_p2(&cfg(5, 1, 4, 2)),
            Err(SchemeError::NotApplicable {
                tag: RegimeTag::EqualDelayed,
                ..
            })
        ));
    }

    #[test]
    fn mutated_plan_fails_causality() {
        let mut plan = plan_p0_p1(&cfg(6, 2, 4, 3)).unwrap();
        plan.slots[0].tx1[0] = cp(0, 0);
        assert!(matches!(
            plan.validate_causality(),
            Err(CausalityError::FutureComponent { slot: 0, .. })
        ));

        let mut plan = plan_p0_p1(&cfg(6, 2, 4, 3)).unwrap();
        plan.slots[2].tx1[0] = cp(1, 0);
        assert!(matches!(
            plan.validate_causality(),
            Err(CausalityError::NonSourceSlot { slot: 2, .. })
        ));

        let mut plan = plan_p0_p1(&cfg(6, 2, 4, 3)).unwrap();
        plan.slots[0].tx2[1] = f(0);
        assert!(matches!(
            plan.validate_causality(),
            Err(CausalityError::FreshSymbolMisuse { tx: 2, .. })
        ));
    }

    #[test]
    fn time_share_blends_exactly() {
        let a = (rat(8, 5), rat_int(4));
        let b = (rat(8, 3), rat(10, 3));
        let blend = time_share(&a, &b, &rat(3, 5)).unwrap();
        assert_eq!(blend, (rat(152, 75), rat(56, 15)));
        assert_eq!(time_share(&a, &b, &rat_int(1)).unwrap(), a);
        assert_eq!(time_share(&a, &b, &rat_int(0)).unwrap(), b);
        assert!(time_share(&a, &b, &rat(6, 5)).is_err());
        assert!(time_share(&a, &b, &rat(-1, 5)).is_err());
    }

    #[test]
    fn claimed_dof_matches_symbol_counts() {
        for c in [cfg(6, 2, 4, 3), cfg(7, 2, 4, 3), cfg(8, 4, 6, 5), cfg(7, 2, 5, 3)] {
            if let Ok(plan) = plan_p0_p1(&c) {
                let l = rat_int(plan.total_slots as i64);
                assert_eq!(&plan.claimed_dof.0 * &l, rat_int(plan.ledger.u_count as i64));
                assert_eq!(&plan.claimed_dof.1 * &l, rat_int(plan.ledger.v_count as i64));
            }
            if let Ok(plan) = plan_p2(&c) {
                let l = rat_int(plan.total_slots as i64);
                assert_eq!(&plan.claimed_dof.0 * &l, rat_int(plan.ledger.u_count as i64));
                assert_eq!(&plan.claimed_dof.1 * &l, rat_int(plan.ledger.v_count as i64));
            }
        }
    }

    /// Receiver 1's joint system at `P2` is square, so every re-send slot
    /// must carry at least `N1` active transmit dimensions; anything less
    /// makes the system singular regardless of the channel draw. Checks the
    /// invariant (and basic plan well-formedness) for every CaseB shape with
    /// up to eight antennas per node.
    #[test]
    fn p2_resend_slots_always_carry_enough_dimensions() {
        let mut seen = 0;
        for m1 in 1..=8u32 {
            for m2 in 1..=8u32 {
                for n1 in 1..=8u32 {
                    for n2 in 1..=8u32 {
                        let c = cfg(m1, m2, n1, n2);
                        let canon = c.canonical().0;
                        if classify(&canon).tag != RegimeTag::CaseB {
                            continue;
                        }
                        seen += 1;
                        let plan = plan_p2(&canon).unwrap();
                        let min_n1 = canon.n1 as usize;
                        for slot in plan.slots[plan.phase1_slots..].iter() {
                            let active = slot
                                .tx1
                                .iter()
                                .chain(slot.tx2.iter())
                                .filter(|e| !matches!(e, TxEntry::Zero))
                                .count();
                            assert!(active >= min_n1, "{canon:?}: thin re-send slot");
                        }
                        assert_eq!(plan.validate_causality(), Ok(()));
                        assert!(plan.feasibility.all_satisfied());
                    }
                }
            }
        }
        assert!(seen > 0);
    }
}
