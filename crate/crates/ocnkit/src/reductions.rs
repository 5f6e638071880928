//! Generators for the constructions connecting lossy counter machines and
//! one-counter nets, plus the fixed separation gadgets and the wrapper nets
//! used by the hardness arguments.
//!
//! The central reduction, [`lcm_to_ocn`], builds a net that accepts, from
//! counter 0, exactly the words that do *not* spell a reversed legal-run
//! encoding of the machine from `<l0, (0..0)>`. Runs are read in reverse so
//! the net can catch lossiness violations: within two adjacent blocks the
//! later configuration's counter value is read first, counted up, and the
//! earlier one is subtracted; a final negative step succeeds exactly when
//! the later value is too large. [`finite_reach_dfa`] is the complementary
//! deterministic construction that accepts the legal encodings whose
//! counters stay below a bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::lcm::{Lcm, LcmConfig, LcmError, LcmTransition, OpKind};
use crate::ocn::{Ocn, OcnError, Transition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("transition `{0}` is not part of the machine")]
    UnknownTransition(String),
    #[error("scenario does not match transition `{transition}` on counter `{counter}`")]
    ScenarioMismatch { transition: String, counter: String },
    #[error("symbol `{0}` is reserved by this construction")]
    ReservedSymbol(String),
    #[error(transparent)]
    Lcm(#[from] LcmError),
    #[error(transparent)]
    Ocn(#[from] OcnError),
}

/// Deterministic fresh-name allocation: appends underscores until unique.
struct Names {
    taken: BTreeSet<String>,
}

impl Names {
    fn new() -> Self {
        Names {
            taken: BTreeSet::new(),
        }
    }

    fn fresh(&mut self, base: impl Into<String>) -> String {
        let mut name = base.into();
        while !self.taken.insert(name.clone()) {
            name.push('_');
        }
        name
    }
}

fn alphabet_of(lcm: &Lcm) -> Vec<String> {
    let mut alphabet: Vec<String> = lcm.locations().to_vec();
    alphabet.extend(lcm.counters().iter().cloned());
    alphabet
}

fn require_location(lcm: &Lcm, name: &str) -> Result<(), ReductionError> {
    if !lcm.has_location(name) {
        return Err(LcmError::UndeclaredLocation(name.to_owned()).into());
    }
    Ok(())
}

/// Which lossiness rule a violation checker guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationScenario {
    /// The transition increments the watched counter: legal means `b <= a + 1`.
    Increment,
    /// The transition decrements it: legal means `b <= a - 1`.
    Decrement,
    /// The transition operates on a different counter: legal means `b <= a`.
    Other,
    /// The transition zero-tests the watched counter: legal means `b = a = 0`.
    ZeroTest,
}

fn scenario_for(transition: &LcmTransition, counter: &str) -> ViolationScenario {
    if transition.counter == counter {
        match transition.kind {
            OpKind::Increment => ViolationScenario::Increment,
            OpKind::Decrement => ViolationScenario::Decrement,
            OpKind::ZeroTest => ViolationScenario::ZeroTest,
        }
    } else {
        ViolationScenario::Other
    }
}

/// The entry effect of the standard checker: chosen so that, reading the
/// later block's count `b` up and the earlier block's count `a` down, the
/// run survives exactly when the pair violates the rule
/// (`b + effect - a >= 0`).
fn entry_effect(scenario: ViolationScenario) -> i64 {
    match scenario {
        ViolationScenario::Increment => -2,
        ViolationScenario::Decrement => 0,
        ViolationScenario::Other => -1,
        ViolationScenario::ZeroTest => unreachable!("zero tests use a two-branch checker"),
    }
}

/// Internal description of one violation checker, with names already
/// allocated so it can be embedded into a larger net.
struct Checker {
    states: Vec<String>,
    initials: Vec<String>,
    accepting: String,
    transitions: Vec<Transition>,
    /// Transitions out of the checker's initial states, used to re-root the
    /// checker under a host state.
    entry: Vec<Transition>,
}

fn build_checker(
    lcm: &Lcm,
    transition: &LcmTransition,
    counter: &str,
    scenario: ViolationScenario,
    names: &mut Names,
    prefix: &str,
) -> Checker {
    let later = &transition.target; // read first: encodings are reversed
    let earlier = &transition.source;
    let alphabet = alphabet_of(lcm);
    let mut transitions = Vec::new();
    let mut entry = Vec::new();
    let mut states = Vec::new();
    let mut initials = Vec::new();

    let acc = names.fresh(format!("{prefix}acc"));
    match scenario {
        ViolationScenario::ZeroTest => {
            // Branch 1 accepts when the later block carries the counter at
            // all; branch 2 when the earlier one does. Either value being
            // nonzero violates `b = a = 0`.
            let pre1 = names.fresh(format!("{prefix}pre1"));
            let mid1 = names.fresh(format!("{prefix}mid1"));
            let pre2 = names.fresh(format!("{prefix}pre2"));
            let mid2 = names.fresh(format!("{prefix}mid2"));
            for z in lcm.counters() {
                let bump = if z == counter { 1 } else { 0 };
                transitions.push(Transition::new(&pre1, z, bump, &pre1));
                transitions.push(Transition::new(&mid1, z, 0, &mid1));
                transitions.push(Transition::new(&pre2, z, 0, &pre2));
                transitions.push(Transition::new(&mid2, z, bump, &mid2));
            }
            transitions.push(Transition::new(&pre1, later, -1, &mid1));
            transitions.push(Transition::new(&mid1, earlier, 0, &acc));
            transitions.push(Transition::new(&pre2, later, 0, &mid2));
            transitions.push(Transition::new(&mid2, earlier, -1, &acc));
            for t in &transitions {
                if t.source == pre1 || t.source == pre2 {
                    entry.push(t.clone());
                }
            }
            states.extend([pre1.clone(), mid1, pre2.clone(), mid2]);
            initials.extend([pre1, pre2]);
        }
        _ => {
            let pre = names.fresh(format!("{prefix}pre"));
            let mid = names.fresh(format!("{prefix}mid"));
            for z in lcm.counters() {
                let up = if z == counter { 1 } else { 0 };
                let down = if z == counter { -1 } else { 0 };
                transitions.push(Transition::new(&pre, z, up, &pre));
                transitions.push(Transition::new(&mid, z, down, &mid));
            }
            transitions.push(Transition::new(&pre, later, entry_effect(scenario), &mid));
            transitions.push(Transition::new(&mid, earlier, 0, &acc));
            for t in &transitions {
                if t.source == pre {
                    entry.push(t.clone());
                }
            }
            states.extend([pre.clone(), mid]);
            initials.push(pre);
        }
    }
    for sym in &alphabet {
        transitions.push(Transition::new(&acc, sym, 0, &acc));
    }
    states.push(acc.clone());
    Checker {
        states,
        initials,
        accepting: acc,
        transitions,
        entry,
    }
}

/// A standalone checker for one `(transition, counter)` pair. From counter 0
/// it accepts exactly the reversed two-block words whose counter values
/// violate the scenario's rule (anything may follow the two blocks).
pub fn violation_gadget(
    lcm: &Lcm,
    transition: &LcmTransition,
    counter: &str,
    scenario: ViolationScenario,
) -> Result<Ocn, ReductionError> {
    if !lcm.transitions().contains(transition) {
        return Err(ReductionError::UnknownTransition(transition.to_string()));
    }
    if lcm.counter_id(counter).is_none() {
        return Err(LcmError::UndeclaredCounter(counter.to_owned()).into());
    }
    if scenario_for(transition, counter) != scenario {
        return Err(ReductionError::ScenarioMismatch {
            transition: transition.to_string(),
            counter: counter.to_owned(),
        });
    }
    let mut names = Names::new();
    let checker = build_checker(lcm, transition, counter, scenario, &mut names, "q_");
    Ok(Ocn::new(
        alphabet_of(lcm),
        checker.states,
        checker.initials,
        checker.transitions,
        [checker.accepting],
    )?)
}

/// Accepts, from counter 0, exactly final blocks (reversed initial
/// configurations) in which some counter is nonzero: every counter symbol
/// pays +1 and the closing location letter costs 1.
pub fn initial_config_gadget(lcm: &Lcm, l0: &str) -> Result<Ocn, ReductionError> {
    require_location(lcm, l0)?;
    let mut names = Names::new();
    let count = names.fresh("q_count");
    let acc = names.fresh("q_acc");
    let mut transitions = Vec::new();
    for z in lcm.counters() {
        transitions.push(Transition::new(&count, z, 1, &count));
    }
    transitions.push(Transition::new(&count, l0, -1, &acc));
    Ok(Ocn::new(
        alphabet_of(lcm),
        [count.clone(), acc.clone()],
        [count],
        transitions,
        [acc],
    )?)
}

/// Pieces of the flow checker, reusable inside [`lcm_to_ocn`].
struct FlowPart {
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<Transition>,
}

/// A total deterministic zero-effect automaton over the machine's alphabet
/// that accepts exactly the ill-formed words: wrong block shape (counter
/// symbols must appear in descending counter order and never trail), a final
/// location other than `l0`, or an adjacent location pair with no machine
/// transition between them.
fn build_flow(lcm: &Lcm, l0: &str, names: &mut Names) -> FlowPart {
    let n = lcm.counters().len();
    let start = names.fresh("f_start");
    let bad = names.fresh("f_bad");
    // Mid-block states per (context, level): context is either the start of
    // the word or the last location letter read; level is the counter index
    // of the most recent symbol, which may only stay or descend.
    let start_mid: Vec<String> = (0..n)
        .map(|i| names.fresh(format!("f_start__{}", lcm.counters()[i])))
        .collect();
    let at: BTreeMap<&str, String> = lcm
        .locations()
        .iter()
        .map(|l| (l.as_str(), names.fresh(format!("f_at__{l}"))))
        .collect();
    let mid: BTreeMap<(&str, usize), String> = lcm
        .locations()
        .iter()
        .flat_map(|l| (0..n).map(move |i| ((l.as_str(), i), format!("f_mid__{l}__{}", i))))
        .map(|(key, base)| (key, names.fresh(base)))
        .collect();

    let mut transitions = Vec::new();
    // Is there any machine transition from `src` to `dst`?
    let connected = |src: &str, dst: &str| {
        lcm.transitions()
            .iter()
            .any(|t| t.source == src && t.target == dst)
    };
    // In a reversed block the previous location letter names the later
    // configuration; reading letter `next` after context `prev` is
    // consistent iff the machine can step from `next` to `prev`.
    let loc_target = |prev: Option<&str>, next: &str| -> String {
        match prev {
            None => at[next].clone(),
            Some(prev) if connected(next, prev) => at[next].clone(),
            Some(_) => bad.clone(),
        }
    };
    let z_target = |ctx_mid: &dyn Fn(usize) -> String, level: Option<usize>, j: usize| -> String {
        match level {
            None => ctx_mid(j),
            Some(level) if j <= level => ctx_mid(j),
            Some(_) => bad.clone(),
        }
    };

    // From the word start.
    let start_ctx = |j: usize| start_mid[j].clone();
    for (j, z) in lcm.counters().iter().enumerate() {
        transitions.push(Transition::new(&start, z, 0, z_target(&start_ctx, None, j)));
    }
    for l in lcm.locations() {
        transitions.push(Transition::new(&start, l, 0, loc_target(None, l)));
    }
    for (i, _) in lcm.counters().iter().enumerate() {
        for (j, z) in lcm.counters().iter().enumerate() {
            transitions.push(Transition::new(
                &start_mid[i],
                z,
                0,
                z_target(&start_ctx, Some(i), j),
            ));
        }
        for l in lcm.locations() {
            transitions.push(Transition::new(&start_mid[i], l, 0, loc_target(None, l)));
        }
    }
    // From location contexts.
    for prev in lcm.locations() {
        let prev_ctx = |j: usize| mid[&(prev.as_str(), j)].clone();
        for (j, z) in lcm.counters().iter().enumerate() {
            transitions.push(Transition::new(
                &at[prev.as_str()],
                z,
                0,
                z_target(&prev_ctx, None, j),
            ));
        }
        for l in lcm.locations() {
            transitions.push(Transition::new(
                &at[prev.as_str()],
                l,
                0,
                loc_target(Some(prev), l),
            ));
        }
        for i in 0..n {
            let state = &mid[&(prev.as_str(), i)];
            for (j, z) in lcm.counters().iter().enumerate() {
                transitions.push(Transition::new(
                    state,
                    z,
                    0,
                    z_target(&prev_ctx, Some(i), j),
                ));
            }
            for l in lcm.locations() {
                transitions.push(Transition::new(state, l, 0, loc_target(Some(prev), l)));
            }
        }
    }
    for sym in alphabet_of(lcm) {
        transitions.push(Transition::new(&bad, sym, 0, &bad));
    }

    let mut states = vec![start.clone(), bad.clone()];
    states.extend(start_mid.iter().cloned());
    states.extend(at.values().cloned());
    states.extend(mid.values().cloned());
    // Well-formed words end exactly at `f_at l0`; everything else accepts.
    let accepting = states.iter().filter(|s| **s != at[l0]).cloned().collect();
    FlowPart {
        states,
        initial: start,
        accepting,
        transitions,
    }
}

/// See [`build_flow`]; the standalone operation.
pub fn flow_violation_ocn(lcm: &Lcm, l0: &str) -> Result<Ocn, ReductionError> {
    require_location(lcm, l0)?;
    let mut names = Names::new();
    let flow = build_flow(lcm, l0, &mut names);
    Ok(Ocn::new(
        alphabet_of(lcm),
        flow.states,
        [flow.initial],
        flow.transitions,
        flow.accepting,
    )?)
}

/// The full reduction: a net accepting, from counter 0, the complement of
/// the reversed legal-run encodings of `lcm` from `<l0, 0..0>`.
///
/// One main state per location carries zero-effect loops over all counter
/// symbols and mirrors the machine's transitions backwards over location
/// letters. From the main states the net branches nondeterministically into
/// the violation checkers (re-rooted at their entry transitions, so the
/// checkers' own initial states are not initial in the union), into the
/// initial-configuration checker at `l0`, while the flow checker runs as an
/// independent component. Accepting states are exactly the checker ones.
pub fn lcm_to_ocn(lcm: &Lcm, l0: &str) -> Result<Ocn, ReductionError> {
    require_location(lcm, l0)?;
    let mut names = Names::new();
    let main: BTreeMap<&str, String> = lcm
        .locations()
        .iter()
        .map(|l| (l.as_str(), names.fresh(format!("m_{l}"))))
        .collect();

    let mut states: Vec<String> = lcm
        .locations()
        .iter()
        .map(|l| main[l.as_str()].clone())
        .collect();
    let mut transitions = Vec::new();
    let mut accepting = Vec::new();
    let mut initials: Vec<String> = states.clone();

    // Zero-effect loops over every counter symbol.
    for l in lcm.locations() {
        for z in lcm.counters() {
            transitions.push(Transition::new(&main[l.as_str()], z, 0, &main[l.as_str()]));
        }
    }
    // Location letters walk the machine's transitions backwards: finishing a
    // block labelled `target` moves to the state of its predecessor block.
    for t in lcm.transitions() {
        transitions.push(Transition::new(
            &main[t.target.as_str()],
            &t.target,
            0,
            &main[t.source.as_str()],
        ));
    }
    // One checker per (transition, counter), entered from the target's main
    // state by shadowing the checker's initial transitions.
    for (ti, t) in lcm.transitions().iter().enumerate() {
        for z in lcm.counters() {
            let scenario = scenario_for(t, z);
            let checker = build_checker(lcm, t, z, scenario, &mut names, &format!("v{ti}_{z}_"));
            let host = &main[t.target.as_str()];
            for e in &checker.entry {
                transitions.push(Transition::new(host, &e.symbol, e.effect, &e.target));
            }
            states.extend(checker.states);
            transitions.extend(checker.transitions);
            accepting.push(checker.accepting);
        }
    }
    // Initial-configuration checker, entered at `l0`'s main state.
    {
        let count = names.fresh("ini_count");
        let acc = names.fresh("ini_acc");
        let host = &main[l0];
        for z in lcm.counters() {
            transitions.push(Transition::new(&count, z, 1, &count));
            transitions.push(Transition::new(host, z, 1, &count));
        }
        transitions.push(Transition::new(&count, l0, -1, &acc));
        transitions.push(Transition::new(host, l0, -1, &acc));
        states.extend([count, acc.clone()]);
        accepting.push(acc);
    }
    // Flow checker, side by side.
    let flow = build_flow(lcm, l0, &mut names);
    states.extend(flow.states);
    initials.push(flow.initial);
    transitions.extend(flow.transitions);
    accepting.extend(flow.accepting);

    Ok(Ocn::new(
        alphabet_of(lcm),
        states,
        initials,
        transitions,
        accepting,
    )?)
}

/// Deterministic zero-effect automaton accepting exactly the reversed
/// encodings of legal runs of `lcm` from `<l0, 0..0>` whose counters never
/// exceed `bound`.
///
/// States carry the last completed configuration and the partially read
/// block; a location letter validates one machine step (the encoding is
/// reversed, so the incoming block must step *to* the stored one) and shifts
/// the accumulator into the configuration slot. Built lazily from the start
/// state, so only reachable states materialize.
pub fn finite_reach_dfa(lcm: &Lcm, l0: &str, bound: u64) -> Result<Ocn, ReductionError> {
    require_location(lcm, l0)?;
    let n = lcm.counters().len();

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum State {
        Bottom {
            accum: Vec<u64>,
        },
        Track {
            loc: String,
            cur: Vec<u64>,
            accum: Vec<u64>,
        },
    }

    let fmt_vec = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join("_");
    let name_of = |s: &State| match s {
        State::Bottom { accum } => format!("d_bot__{}", fmt_vec(accum)),
        State::Track { loc, cur, accum } => {
            format!("d_{loc}__{}__{}", fmt_vec(cur), fmt_vec(accum))
        }
    };
    let level = |accum: &[u64]| accum.iter().position(|&v| v > 0);

    // Reading counter symbol `j` mid-block: indices may only stay or
    // descend, and counts are capped at the bound.
    let read_counter = |accum: &[u64], j: usize| -> Option<Vec<u64>> {
        let mut next = accum.to_vec();
        match level(accum) {
            Some(lv) if j > lv => None,
            Some(lv) if j == lv => {
                if next[j] >= bound {
                    None
                } else {
                    next[j] += 1;
                    Some(next)
                }
            }
            _ => {
                if bound == 0 {
                    None
                } else {
                    next[j] = 1;
                    Some(next)
                }
            }
        }
    };

    let start = State::Bottom { accum: vec![0; n] };
    let mut discovered: BTreeSet<State> = [start.clone()].into();
    let mut queue: VecDeque<State> = [start.clone()].into();
    let mut transitions = Vec::new();
    while let Some(state) = queue.pop_front() {
        let push = |from: &State,
                    symbol: &str,
                    to: State,
                    transitions: &mut Vec<Transition>,
                    queue: &mut VecDeque<State>,
                    discovered: &mut BTreeSet<State>| {
            transitions.push(Transition::new(name_of(from), symbol, 0, name_of(&to)));
            if discovered.insert(to.clone()) {
                queue.push_back(to);
            }
        };
        let accum = match &state {
            State::Bottom { accum } => accum,
            State::Track { accum, .. } => accum,
        };
        for (j, z) in lcm.counters().iter().enumerate() {
            if let Some(next_accum) = read_counter(accum, j) {
                let next = match &state {
                    State::Bottom { .. } => State::Bottom { accum: next_accum },
                    State::Track { loc, cur, .. } => State::Track {
                        loc: loc.clone(),
                        cur: cur.clone(),
                        accum: next_accum,
                    },
                };
                push(
                    &state,
                    z,
                    next,
                    &mut transitions,
                    &mut queue,
                    &mut discovered,
                );
            }
        }
        for l in lcm.locations() {
            let next = match &state {
                State::Bottom { accum } => Some(State::Track {
                    loc: l.clone(),
                    cur: accum.clone(),
                    accum: vec![0; n],
                }),
                State::Track { loc, cur, accum } => {
                    let from = LcmConfig::new(l.clone(), accum.iter().copied());
                    let to = LcmConfig::new(loc.clone(), cur.iter().copied());
                    if lcm.single_step(&from, &to) {
                        Some(State::Track {
                            loc: l.clone(),
                            cur: accum.clone(),
                            accum: vec![0; n],
                        })
                    } else {
                        None
                    }
                }
            };
            if let Some(next) = next {
                push(
                    &state,
                    l,
                    next,
                    &mut transitions,
                    &mut queue,
                    &mut discovered,
                );
            }
        }
    }

    let accept = State::Track {
        loc: l0.to_owned(),
        cur: vec![0; n],
        accum: vec![0; n],
    };
    let states: Vec<String> = discovered.iter().map(&name_of).collect();
    let accepting: Vec<String> = discovered
        .iter()
        .filter(|s| **s == accept)
        .map(&name_of)
        .collect();
    Ok(Ocn::new(
        alphabet_of(lcm),
        states,
        [name_of(&start)],
        transitions,
        accepting,
    )?)
}

/// Reduces reachability from an arbitrary configuration to reachability
/// from an all-zero one: a fresh chain of locations increments each counter
/// up to the requested value (in counter order, so the final hop increments
/// the highest nonzero counter) before entering the original location.
/// Returns the extended machine and its new start location; an all-zero
/// configuration needs no change.
pub fn zero_fr_reduction(lcm: &Lcm, init: &LcmConfig) -> Result<(Lcm, String), ReductionError> {
    require_location(lcm, &init.location)?;
    if init.counters.len() != lcm.counters().len() {
        return Err(LcmError::ArityMismatch {
            got: init.counters.len(),
            expected: lcm.counters().len(),
        }
        .into());
    }
    if init.counters.iter().all(|&c| c == 0) {
        return Ok((lcm.clone(), init.location.clone()));
    }
    let mut names = Names::new();
    for l in lcm.locations() {
        names.fresh(l.clone());
    }
    let increments: Vec<String> = lcm
        .counters()
        .iter()
        .zip(&init.counters)
        .flat_map(|(z, &count)| std::iter::repeat_n(z.clone(), count as usize))
        .collect();
    let fresh: Vec<String> = (0..increments.len())
        .map(|i| names.fresh(format!("zfr{i}")))
        .collect();
    let mut locations = lcm.locations().to_vec();
    locations.extend(fresh.iter().cloned());
    let mut transitions = lcm.transitions().to_vec();
    for (i, z) in increments.iter().enumerate() {
        let target = if i + 1 < fresh.len() {
            fresh[i + 1].clone()
        } else {
            init.location.clone()
        };
        transitions.push(LcmTransition {
            source: fresh[i].clone(),
            counter: z.clone(),
            kind: OpKind::Increment,
            target,
        });
    }
    let start = fresh[0].clone();
    Ok((
        Lcm::new(locations, lcm.counters().to_vec(), transitions)?,
        start,
    ))
}

/// The three fixed separation gadgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetName {
    A,
    B,
    C,
}

impl std::str::FromStr for GadgetName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(GadgetName::A),
            "B" | "b" => Ok(GadgetName::B),
            "C" | "c" => Ok(GadgetName::C),
            other => Err(format!("unknown gadget `{other}` (expected A, B or C)")),
        }
    }
}

/// Fixed example nets separating the determinizability notions.
///
/// `A` opens with `#` into either a 5-cost sink with free loops or one of
/// two counting branches; `B` is `A`'s counting core behind a `#` costing 1,
/// so its counter-0 language is empty; `C` opens with `#` into either an
/// `a`-against-`b` counting loop (free) or a free loop (cost 1).
pub fn gadget(name: GadgetName) -> Ocn {
    let ocn = match name {
        GadgetName::A => Ocn::new(
            ["a", "b", "c", "#"],
            ["q0", "qa", "qb", "q5"],
            ["q0"],
            [
                Transition::new("q0", "#", -5, "q5"),
                Transition::new("q0", "#", 0, "qa"),
                Transition::new("q0", "#", 0, "qb"),
                Transition::new("qa", "a", 1, "qa"),
                Transition::new("qa", "b", 0, "qa"),
                Transition::new("qa", "c", -1, "qa"),
                Transition::new("qb", "a", 0, "qb"),
                Transition::new("qb", "b", 1, "qb"),
                Transition::new("qb", "c", -1, "qb"),
                Transition::new("q5", "a", 0, "q5"),
                Transition::new("q5", "b", 0, "q5"),
                Transition::new("q5", "c", 0, "q5"),
            ],
            ["qa", "qb", "q5"],
        ),
        GadgetName::B => Ocn::new(
            ["a", "b", "c", "#"],
            ["q0", "qa", "qb"],
            ["q0"],
            [
                Transition::new("q0", "#", -1, "qa"),
                Transition::new("q0", "#", -1, "qb"),
                Transition::new("qa", "a", 1, "qa"),
                Transition::new("qa", "b", 0, "qa"),
                Transition::new("qa", "c", -1, "qa"),
                Transition::new("qb", "a", 0, "qb"),
                Transition::new("qb", "b", 1, "qb"),
                Transition::new("qb", "c", -1, "qb"),
            ],
            ["qa", "qb"],
        ),
        GadgetName::C => Ocn::new(
            ["a", "b", "#"],
            ["q0", "q1", "q2"],
            ["q0"],
            [
                Transition::new("q0", "#", 0, "q1"),
                Transition::new("q0", "#", -1, "q2"),
                Transition::new("q1", "a", 1, "q1"),
                Transition::new("q1", "b", -1, "q1"),
                Transition::new("q2", "a", 0, "q2"),
                Transition::new("q2", "b", 0, "q2"),
            ],
            ["q1", "q2"],
        ),
    };
    ocn.expect("gadget definitions are well-formed")
}

/// Wraps a net so that counter 0 preserves `#`-prefixed membership while any
/// positive counter unlocks everything after `#`: a fresh start state reads
/// `#` for free into the wrapped net, or pays 1 into an accept-all state.
pub fn wrap_forall(a: &Ocn) -> Result<Ocn, ReductionError> {
    if a.alphabet().iter().any(|s| s == "#") {
        return Err(ReductionError::ReservedSymbol("#".into()));
    }
    let mut names = Names::new();
    for s in a.states() {
        names.fresh(s.clone());
    }
    let q0 = names.fresh("q0");
    let q_all = names.fresh("qAll");
    let mut alphabet = a.alphabet().to_vec();
    alphabet.push("#".into());
    let mut states = a.states().to_vec();
    states.extend([q0.clone(), q_all.clone()]);
    let mut transitions = a.transitions().to_vec();
    transitions.push(Transition::new(&q0, "#", -1, &q_all));
    for s in a.initials() {
        transitions.push(Transition::new(&q0, "#", 0, s));
    }
    for sym in &alphabet {
        transitions.push(Transition::new(&q_all, sym, 0, &q_all));
    }
    let mut accepting: Vec<String> = a.accepting().map(str::to_owned).collect();
    accepting.push(q_all);
    Ok(Ocn::new(alphabet, states, [q0], transitions, accepting)?)
}

/// The uniform-hardness wrapper: words must open with `#`; from counter 0
/// the wrapped net carries the word unless a later `#` or `$` hands it to
/// the accept-all state, while counter 1 unlocks the accept-all state
/// directly at the opening `#`.
pub fn wrap_uniform_lb(a: &Ocn) -> Result<Ocn, ReductionError> {
    for reserved in ["#", "$"] {
        if a.alphabet().iter().any(|s| s == reserved) {
            return Err(ReductionError::ReservedSymbol(reserved.into()));
        }
    }
    let mut names = Names::new();
    for s in a.states() {
        names.fresh(s.clone());
    }
    let q0 = names.fresh("q0");
    let q_all = names.fresh("qAll");
    let mut alphabet = a.alphabet().to_vec();
    alphabet.extend(["#".to_owned(), "$".to_owned()]);
    let mut states = a.states().to_vec();
    states.extend([q0.clone(), q_all.clone()]);
    let mut transitions = a.transitions().to_vec();
    for s in a.initials() {
        transitions.push(Transition::new(&q0, "#", 0, s));
    }
    transitions.push(Transition::new(&q0, "#", -1, &q_all));
    for sym in &alphabet {
        transitions.push(Transition::new(&q_all, sym, 0, &q_all));
    }
    for s in a.states() {
        transitions.push(Transition::new(s, "$", 0, &q_all));
        transitions.push(Transition::new(s, "#", 0, &q_all));
    }
    let mut accepting: Vec<String> = a.accepting().map(str::to_owned).collect();
    accepting.push(q_all);
    Ok(Ocn::new(alphabet, states, [q0], transitions, accepting)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ocn::Word;

    fn counting_loop() -> Lcm {
        Lcm::parse("locations: l0\ncounters: z1\ntrans: l0 z1++ l0\n").unwrap()
    }

    fn two_counter_machine() -> Lcm {
        Lcm::parse(
            "locations: l0 l1\ncounters: z1 z2\ntrans: l0 z1++ l1\ntrans: l1 z1-- l0\ntrans: l0 z2=0? l0\n",
        )
        .unwrap()
    }

    #[test]
    fn violation_gadget_other_scenario() {
        let lcm = Lcm::parse("locations: l0 l1\ncounters: z1 z2\ntrans: l0 z2++ l1\n").unwrap();
        let t = &lcm.transitions()[0];
        let g = violation_gadget(&lcm, t, "z1", ViolationScenario::Other).unwrap();
        // Later block carries z1 once, earlier block not at all: a lossiness
        // violation (values may only fall), so the word is accepted.
        assert!(g.accepts(&Word::parse("z1 l1 l0"), 0).unwrap());
        // Equal values are legal: rejected.
        assert!(!g.accepts(&Word::parse("z1 l1 z1 l0"), 0).unwrap());
        assert!(!g.accepts(&Word::parse("l1 l0"), 0).unwrap());
    }

    #[test]
    fn violation_gadget_increment_scenario() {
        let lcm = counting_loop();
        let t = &lcm.transitions()[0];
        let g = violation_gadget(&lcm, t, "z1", ViolationScenario::Increment).unwrap();
        // Growth by one is what the increment allows: rejected.
        assert!(!g.accepts(&Word::parse("z1 l0 l0"), 0).unwrap());
        // Growth by two is a violation.
        assert!(g.accepts(&Word::parse("z1 z1 l0 l0"), 0).unwrap());
    }

    #[test]
    fn violation_gadget_zero_test_scenario() {
        let lcm = two_counter_machine();
        let t = lcm
            .transitions()
            .iter()
            .find(|t| t.kind == OpKind::ZeroTest)
            .unwrap();
        let g = violation_gadget(&lcm, t, "z2", ViolationScenario::ZeroTest).unwrap();
        // Blocks are read later-first; both blocks are at l0 here. Any
        // nonzero z2 on either side violates the test.
        assert!(g.accepts(&Word::parse("z2 l0 l0"), 0).unwrap());
        assert!(g.accepts(&Word::parse("l0 z2 l0"), 0).unwrap());
        assert!(!g.accepts(&Word::parse("l0 l0"), 0).unwrap());
    }

    #[test]
    fn violation_gadget_validation() {
        let lcm = counting_loop();
        let t = &lcm.transitions()[0];
        assert!(matches!(
            violation_gadget(&lcm, t, "z1", ViolationScenario::Other),
            Err(ReductionError::ScenarioMismatch { .. })
        ));
        let foreign = LcmTransition {
            source: "l0".into(),
            counter: "z1".into(),
            kind: OpKind::Decrement,
            target: "l0".into(),
        };
        assert!(matches!(
            violation_gadget(&lcm, &foreign, "z1", ViolationScenario::Decrement),
            Err(ReductionError::UnknownTransition(_))
        ));
    }

    #[test]
    fn initial_config_gadget_examples() {
        let lcm = counting_loop();
        let g = initial_config_gadget(&lcm, "l0").unwrap();
        assert!(g.accepts(&Word::parse("z1 l0"), 0).unwrap());
        assert!(!g.accepts(&Word::parse("l0"), 0).unwrap());

        let two = two_counter_machine();
        let g = initial_config_gadget(&two, "l0").unwrap();
        assert!(g.accepts(&Word::parse("z2 z1 l0"), 0).unwrap());
    }

    #[test]
    fn flow_checker_examples() {
        let lcm = Lcm::parse("locations: l0 l1\ncounters: z1\n").unwrap();
        let flow = flow_violation_ocn(&lcm, "l0").unwrap();
        assert!(flow.is_deterministic());
        assert!(flow.transitions().iter().all(|t| t.effect == 0));
        // A single correct block is well-formed: rejected.
        assert!(!flow.accepts(&Word::parse("l0"), 0).unwrap());
        // Trailing counter symbol breaks the block shape.
        assert!(flow.accepts(&Word::parse("l0 z1"), 0).unwrap());
        // No machine transition from l0 to l1.
        assert!(flow.accepts(&Word::parse("l1 l0"), 0).unwrap());
        // Wrong final location.
        assert!(flow.accepts(&Word::parse("l1"), 0).unwrap());
        // The empty word is not an encoding.
        assert!(flow.accepts(&Word::default(), 0).unwrap());
    }

    #[test]
    fn flow_checker_orders_counter_symbols() {
        let lcm = Lcm::parse("locations: l0\ncounters: z1 z2\n").unwrap();
        let flow = flow_violation_ocn(&lcm, "l0").unwrap();
        // Reversed blocks list higher counters first: z2 then z1 is fine.
        assert!(!flow.accepts(&Word::parse("z2 z1 l0"), 0).unwrap());
        // Ascending order is ill-formed.
        assert!(flow.accepts(&Word::parse("z1 z2 l0"), 0).unwrap());
    }

    #[test]
    fn lcm_to_ocn_rejects_legal_runs_and_catches_violations() {
        let lcm = counting_loop();
        let ocn = lcm_to_ocn(&lcm, "l0").unwrap();
        // Reversed encodings of legal runs are rejected at counter 0.
        let legal = encode_legal(&lcm, &[0, 1]);
        assert!(!ocn.accepts(&legal, 0).unwrap());
        assert!(!ocn.accepts(&Word::parse("l0"), 0).unwrap());
        assert!(!ocn.accepts(&Word::parse("l0 l0"), 0).unwrap());
        // An illegal jump by two is accepted.
        assert!(ocn.accepts(&Word::parse("z1 z1 l0 l0"), 0).unwrap());
        // Ill-formed words are accepted through the flow component.
        assert!(ocn.accepts(&Word::parse("l0 z1"), 0).unwrap());
        // A nonzero initial configuration (read last) is accepted.
        assert!(ocn.accepts(&Word::parse("z1 l0"), 0).unwrap());
    }

    fn encode_legal(lcm: &Lcm, counters: &[u64]) -> Word {
        let run: Vec<LcmConfig> = counters
            .iter()
            .map(|&c| LcmConfig::new("l0", [c]))
            .collect();
        crate::lcm::encode_run(lcm, &run).unwrap().reversed
    }

    #[test]
    fn finite_reach_dfa_examples() {
        let lcm = counting_loop();
        let dfa = finite_reach_dfa(&lcm, "l0", 3).unwrap();
        assert!(dfa.is_deterministic());
        assert!(dfa.transitions().iter().all(|t| t.effect == 0));
        assert!(dfa.accepts(&Word::parse("l0"), 0).unwrap());
        assert!(dfa.accepts(&Word::parse("z1 l0 l0"), 0).unwrap());
        assert!(dfa.accepts(&Word::parse("l0 l0"), 0).unwrap());
        assert!(!dfa.accepts(&Word::parse("z1 z1 l0 l0"), 0).unwrap());
        assert!(!dfa.accepts(&Word::parse("l0 z1"), 0).unwrap());
        assert!(!dfa.accepts(&Word::parse("z1 l0"), 0).unwrap());
        // Counters beyond the bound are not tracked.
        let over = Word::parse("z1 z1 z1 z1 l0 z1 z1 z1 l0 z1 z1 l0 z1 l0 l0");
        assert!(!dfa.accepts(&over, 0).unwrap());
    }

    #[test]
    fn zero_fr_reduction_examples() {
        let lcm = two_counter_machine();
        // All-zero initial configuration: unchanged.
        let (same, start) = zero_fr_reduction(&lcm, &LcmConfig::new("l0", [0, 0])).unwrap();
        assert_eq!(same, lcm);
        assert_eq!(start, "l0");

        // <l0, (2, 0)>: two fresh locations chained by z1 increments.
        let (ext, start) = zero_fr_reduction(&lcm, &LcmConfig::new("l0", [2, 0])).unwrap();
        assert_eq!(start, "zfr0");
        assert_eq!(ext.locations().len(), lcm.locations().len() + 2);
        let added: Vec<&LcmTransition> = ext
            .transitions()
            .iter()
            .filter(|t| t.source.starts_with("zfr"))
            .collect();
        assert_eq!(added.len(), 2);
        assert!(added
            .iter()
            .all(|t| t.counter == "z1" && t.kind == OpKind::Increment));
        assert_eq!(added[1].target, "l0");

        // <l0, (1, 1)>: one increment per counter, z2 entering l0 last.
        let (ext, _) = zero_fr_reduction(&lcm, &LcmConfig::new("l0", [1, 1])).unwrap();
        let added: Vec<&LcmTransition> = ext
            .transitions()
            .iter()
            .filter(|t| t.source.starts_with("zfr"))
            .collect();
        assert_eq!(added[0].counter, "z1");
        assert_eq!(added[1].counter, "z2");
        assert_eq!(added[1].target, "l0");
    }

    #[test]
    fn gadget_languages() {
        let c = gadget(GadgetName::C);
        assert!(c.accepts(&Word::parse("# a b"), 0).unwrap());

        let b = gadget(GadgetName::B);
        for word in ["", "#", "# a", "a", "# a b c", "# #"] {
            assert!(!b.accepts(&Word::parse(word), 0).unwrap(), "{word:?}");
        }

        let a = gadget(GadgetName::A);
        for word in ["#", "# a", "# c c c", "# b a c", "# a a a a a a"] {
            assert!(a.accepts(&Word::parse(word), 5).unwrap(), "{word:?}");
        }
        assert!(!a.accepts(&Word::parse("a #"), 5).unwrap());
    }

    #[test]
    fn wrap_forall_structure() {
        let a = Ocn::new(
            ["x"],
            ["s"],
            ["s"],
            [Transition::new("s", "x", -1, "s")],
            ["s"],
        )
        .unwrap();
        let b = wrap_forall(&a).unwrap();
        assert!(b.alphabet().iter().any(|s| s == "#"));
        // # is fresh relative to a's alphabet; using it twice is an error.
        assert!(matches!(
            wrap_forall(&b),
            Err(ReductionError::ReservedSymbol(_))
        ));
        assert_eq!(b.states().len(), a.states().len() + 2);
        // Words not opening with # are rejected at low counters.
        for c in 0..=3 {
            assert!(!b.accepts(&Word::parse("x"), c).unwrap());
        }
        // At counter 0 the wrapper preserves #-prefixed membership of a.
        assert!(b.accepts(&Word::parse("#"), 0).unwrap());
        assert!(!b.accepts(&Word::parse("# x"), 0).unwrap());
        assert!(b.accepts(&Word::parse("# x"), 1).unwrap());
        // Any positive counter unlocks everything behind #.
        assert!(b.accepts(&Word::parse("# x x x #"), 1).unwrap());
    }

    #[test]
    fn wrap_uniform_claims_hold_on_a_tiny_net() {
        // One state, x loops for free, nothing accepting: runs always
        // survive but never accept.
        let a = Ocn::new(
            ["x"],
            ["s"],
            ["s"],
            [Transition::new("s", "x", 0, "s")],
            Vec::<String>::new(),
        )
        .unwrap();
        let b = wrap_uniform_lb(&a).unwrap();
        // Not starting with #: rejected at any counter.
        assert!(!b.accepts(&Word::parse("x"), 3).unwrap());
        // #w rejected at 0 (w not in L(a,0)), accepted at 1.
        assert!(!b.accepts(&Word::parse("# x"), 0).unwrap());
        assert!(b.accepts(&Word::parse("# x"), 1).unwrap());
        // #w$ accepted at 0 since a's run survives w.
        assert!(b.accepts(&Word::parse("# x $"), 0).unwrap());
    }
}
