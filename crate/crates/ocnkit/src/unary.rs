//! Minimal-counter analysis for unary one-counter nets.
//!
//! For a net over a single letter, every word is `sigma^n`, and for each `n`
//! either no counter accepts it or there is a least counter that does. The
//! map from lengths to least counters (the minimal counter relation) fully
//! determines the net's language at every initial counter.
//!
//! [`mcr_prefix`] computes that map exactly, length by length, with a Pareto
//! frontier per state: each frontier entry records the least initial counter
//! (`need`) at which some length-`n` path into the state can be traversed,
//! together with that path's total `effect`. Extending a path by a
//! transition is monotone in both coordinates, so dominated entries can never
//! produce an undominated extension and pruning keeps the computation exact.
//!
//! [`mcr_brute`] recomputes the same table from plain membership tests and
//! exists to cross-check the frontier computation. [`detect_periodicity`]
//! looks for an `(N, k, d)` shift law in the computed prefix; a detected law
//! is exact on the prefix but only a conjecture beyond it, which is why
//! [`Mcr`] records how much evidence backed it.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::equiv::accept_profile_unary;
use crate::ocn::{Counter, Ocn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnaryError {
    #[error("expected a unary alphabet, found {0} symbols")]
    NonUnaryAlphabet(usize),
}

fn require_unary(ocn: &Ocn) -> Result<(), UnaryError> {
    if ocn.alphabet().len() != 1 {
        return Err(UnaryError::NonUnaryAlphabet(ocn.alphabet().len()));
    }
    Ok(())
}

/// One non-dominated point of a per-state frontier: some length-`n` path
/// into the state needs initial counter `need` (= minus its nadir) and has
/// total effect `effect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParetoEntry {
    pub need: Counter,
    pub effect: i64,
}

/// Per-length, per-state Pareto frontiers of `(need, effect)` pairs, for
/// lengths `0..=horizon`. Frontiers are sorted by increasing `need` with
/// strictly increasing `effect`.
pub fn mcr_frontiers(ocn: &Ocn, horizon: usize) -> Result<Vec<Vec<Vec<ParetoEntry>>>, UnaryError> {
    require_unary(ocn)?;
    let n_states = ocn.states().len();
    let mut layers = Vec::with_capacity(horizon + 1);
    let mut current: Vec<Vec<ParetoEntry>> = vec![Vec::new(); n_states];
    for s in ocn.initial_ids() {
        current[s].push(ParetoEntry { need: 0, effect: 0 });
    }
    layers.push(current.clone());
    for _ in 1..=horizon {
        let mut next: Vec<Vec<ParetoEntry>> = vec![Vec::new(); n_states];
        for (state, frontier) in current.iter().enumerate() {
            if frontier.is_empty() {
                continue;
            }
            for &(effect, dst) in ocn.successors_idx(state, 0) {
                for entry in frontier {
                    let new_effect = entry.effect + effect;
                    let new_need = (entry.need as i64).max(-new_effect) as Counter;
                    next[dst].push(ParetoEntry {
                        need: new_need,
                        effect: new_effect,
                    });
                }
            }
        }
        for frontier in &mut next {
            prune(frontier);
        }
        layers.push(next.clone());
        current = next;
    }
    Ok(layers)
}

/// Removes dominated entries: keep a point only if no other has
/// `need' <= need` and `effect' >= effect` with at least one strict.
fn prune(frontier: &mut Vec<ParetoEntry>) {
    if frontier.len() <= 1 {
        return;
    }
    frontier.sort_by(|a, b| a.need.cmp(&b.need).then(b.effect.cmp(&a.effect)));
    let mut kept: Vec<ParetoEntry> = Vec::with_capacity(frontier.len());
    for &entry in frontier.iter() {
        match kept.last() {
            Some(last) if entry.effect <= last.effect => {} // dominated (or equal)
            _ => kept.push(entry),
        }
    }
    *frontier = kept;
}

/// Exact minimal accepting counter for `sigma^n`, for every `n <= horizon`;
/// `None` where no length-`n` accepting path exists.
pub fn mcr_prefix(ocn: &Ocn, horizon: usize) -> Result<Vec<Option<Counter>>, UnaryError> {
    let layers = mcr_frontiers(ocn, horizon)?;
    Ok(layers
        .iter()
        .map(|per_state| {
            per_state
                .iter()
                .enumerate()
                .filter(|(s, _)| ocn.is_accepting_idx(*s))
                .filter_map(|(_, frontier)| frontier.first().map(|e| e.need))
                .min()
        })
        .collect())
}

/// Acceptance of `sigma^n` for every `n <= max_len` at one initial counter,
/// computed by a single layered configuration sweep (the incremental form of
/// repeated membership tests).
pub fn accept_profile(
    ocn: &Ocn,
    counter: Counter,
    max_len: usize,
) -> Result<Vec<bool>, UnaryError> {
    require_unary(ocn)?;
    Ok(accept_profile_unary(ocn, counter, max_len))
}

/// Independent oracle for [`mcr_prefix`]: entry `n` is the least
/// `c <= counter_cap` with `sigma^n` in the language at counter `c`, found by
/// direct membership tests; `None` when no such counter exists under the cap.
pub fn mcr_brute(
    ocn: &Ocn,
    horizon: usize,
    counter_cap: Counter,
) -> Result<Vec<Option<Counter>>, UnaryError> {
    require_unary(ocn)?;
    let mut table: Vec<Option<Counter>> = vec![None; horizon + 1];
    let mut remaining = horizon + 1;
    for c in 0..=counter_cap {
        let profile = accept_profile_unary(ocn, c, horizon);
        for (n, entry) in table.iter_mut().enumerate() {
            if entry.is_none() && profile[n] {
                *entry = Some(c);
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
    }
    Ok(table)
}

/// An `(N, k, d)` shift law: past index `N`, definedness repeats with period
/// `k` and defined values shift by `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodicTail {
    #[serde(rename = "N")]
    pub start: u64,
    #[serde(rename = "k")]
    pub period: u64,
    #[serde(rename = "d")]
    pub delta: i64,
}

/// Finds the lexicographically least `(k, N)` such that for every `n` in
/// `[N, len - k)`: entry `n + k` is defined iff entry `n` is, and defined
/// values differ by one constant `d`. A candidate is reported only when the
/// law was checked on at least `max(confirm_window, 2k)` indices past `N`.
/// Reported laws are exact on the examined prefix and conjectural beyond it.
pub fn detect_periodicity(
    prefix: &[Option<Counter>],
    confirm_window: usize,
) -> Option<PeriodicTail> {
    let len = prefix.len();
    for period in 1..=len {
        let needed = confirm_window.max(2 * period);
        if period + needed > len {
            break; // even start=0 cannot gather enough evidence
        }
        for start in 0..=(len - period - needed) {
            if let Some(delta) = shift_law_holds(prefix, start, period) {
                return Some(PeriodicTail {
                    start: start as u64,
                    period: period as u64,
                    delta,
                });
            }
        }
    }
    None
}

/// Checks the shift law on `[start, len - period)`; returns the common
/// difference when it holds (0 when no index in the range is defined).
fn shift_law_holds(prefix: &[Option<Counter>], start: usize, period: usize) -> Option<i64> {
    let len = prefix.len();
    let mut delta: Option<i64> = None;
    for n in start..(len - period) {
        match (prefix[n], prefix[n + period]) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                let d = b as i64 - a as i64;
                match delta {
                    None => delta = Some(d),
                    Some(existing) if existing != d => return None,
                    Some(_) => {}
                }
            }
            _ => return None,
        }
    }
    Some(delta.unwrap_or(0))
}

/// The computed minimal counter relation of a unary net: the exact prefix up
/// to `horizon`, plus, when detected, the periodic tail law and the number of
/// shift instances (`confirmed_window`) that backed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mcr {
    pub prefix: Vec<Option<Counter>>,
    pub tail: Option<PeriodicTail>,
    pub horizon: u64,
    pub confirmed_window: u64,
}

impl Serialize for Mcr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Mcr", 4)?;
        st.serialize_field("prefix", &self.prefix)?;
        st.serialize_field("tail", &self.tail)?;
        st.serialize_field("horizon", &self.horizon)?;
        st.serialize_field("confirmed_window", &self.confirmed_window)?;
        st.end()
    }
}

impl Mcr {
    /// Entry for length `n` within the computed prefix.
    pub fn entry(&self, n: usize) -> Option<Counter> {
        self.prefix.get(n).copied().flatten()
    }
}

/// Computes the prefix, runs tail detection, and bundles the result.
pub fn mcr(ocn: &Ocn, horizon: usize, confirm_window: usize) -> Result<Mcr, UnaryError> {
    let prefix = mcr_prefix(ocn, horizon)?;
    let tail = detect_periodicity(&prefix, confirm_window);
    let confirmed_window = tail
        .map(|t| prefix.len() as u64 - t.period - t.start)
        .unwrap_or(0);
    Ok(Mcr {
        prefix,
        tail,
        horizon: horizon as u64,
        confirmed_window,
    })
}

/// A non-increasing certificate: two defined entries with `n1 < n2` but
/// `c1 > c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    /// The shorter length and its (larger) minimal counter `(n1, c1)`.
    pub first: (u64, Counter),
    /// The longer length and its (smaller) minimal counter `(n2, c2)`.
    pub second: (u64, Counter),
}

/// Least witness (smallest `n1`, then smallest `n2`) against the prefix
/// being the graph of a nondecreasing partial function; `None` if the whole
/// scanned slice is nondecreasing.
pub fn least_witness(prefix: &[Option<Counter>]) -> Option<WitnessPair> {
    least_witness_within(prefix, prefix.len().saturating_sub(1))
}

fn least_witness_within(prefix: &[Option<Counter>], up_to: usize) -> Option<WitnessPair> {
    let bound = up_to.min(prefix.len().saturating_sub(1));
    for n1 in 0..=bound {
        let Some(c1) = prefix[n1] else { continue };
        for (n2, entry) in prefix.iter().enumerate().take(bound + 1).skip(n1 + 1) {
            let Some(c2) = *entry else { continue };
            if c1 > c2 {
                return Some(WitnessPair {
                    first: (n1 as u64, c1),
                    second: (n2 as u64, c2),
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncreasingVerdict {
    /// Nondecreasing on the window and the tail shifts upward.
    Increasing,
    /// No tail was detected; only the computed prefix was checked.
    IncreasingPrefixOnly,
    NotIncreasing(WitnessPair),
}

impl IncreasingVerdict {
    pub fn is_increasing(&self) -> bool {
        !matches!(self, IncreasingVerdict::NotIncreasing(_))
    }
}

/// Decides whether the relation is increasing. With a tail, scanning defined
/// pairs on `[0, N + 2k]` plus `d >= 0` suffices: every later pair is a
/// `d`-shift of one inside the window. Without a tail the scan covers the
/// whole prefix and the verdict is flagged prefix-only.
pub fn is_increasing(mcr: &Mcr) -> IncreasingVerdict {
    match mcr.tail {
        Some(tail) => {
            let window = (tail.start + 2 * tail.period) as usize;
            if let Some(witness) = least_witness_within(&mcr.prefix, window) {
                return IncreasingVerdict::NotIncreasing(witness);
            }
            if tail.delta < 0 {
                // A negative shift always exhibits a concrete pair: the first
                // defined entry at or past N, paired with its k-shift.
                for n in tail.start as usize..(tail.start + tail.period) as usize {
                    if let (Some(c1), Some(c2)) =
                        (mcr.entry(n), mcr.entry(n + tail.period as usize))
                    {
                        return IncreasingVerdict::NotIncreasing(WitnessPair {
                            first: (n as u64, c1),
                            second: (n as u64 + tail.period, c2),
                        });
                    }
                }
            }
            IncreasingVerdict::Increasing
        }
        None => match least_witness(&mcr.prefix) {
            Some(witness) => IncreasingVerdict::NotIncreasing(witness),
            None => IncreasingVerdict::IncreasingPrefixOnly,
        },
    }
}
