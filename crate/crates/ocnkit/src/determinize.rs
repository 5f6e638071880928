//! Determinization of unary one-counter nets.
//!
//! A unary net has an equivalent deterministic net agreeing at *every*
//! initial counter exactly when its minimal counter relation is increasing.
//! The witness direction is unconditional: two lengths `n1 < n2` whose
//! minimal counters satisfy `c1 > c2` defeat every candidate, because a
//! deterministic net that accepts `sigma^{n2}` from `c2` has survived `n2`
//! letters from `c2` and would survive (and then must accept) `sigma^{n1}`
//! from `c1 > c2`'s budget as well. The synthesis direction completes the
//! relation to a total nondecreasing function `f`, and builds a chain of
//! `N + k - 1` states closed by a loop whose accumulated effect after `n`
//! letters is exactly `-f(n)`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::equiv::{bounded_equiv, EquivMode, EquivReport};
use crate::ocn::{Counter, Ocn, Transition};
use crate::semilinear::{unary_semilinear_to_regex, UnarySemilinear};
use crate::unary::{is_increasing, mcr, IncreasingVerdict, Mcr, UnaryError, WitnessPair};

/// Counter cap used when a synthesized candidate is verified against its
/// source before a positive verdict is issued.
pub const VERIFY_COUNTER_CAP: Counter = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("no periodic tail is attached to the relation")]
    TailAbsent,
    #[error("relation is not increasing: ({0}, {1}) precedes ({2}, {3})")]
    NotIncreasing(u64, Counter, u64, Counter),
    #[error("computed prefix is too short to carry the periodic segment")]
    PrefixTooShort,
}

/// The completion of an increasing minimal counter relation to a total
/// nondecreasing function: `f(0) = 0`, `f(n)` is the relation's value where
/// defined and carries the previous value forward elsewhere.
///
/// `start` is advanced from the detected tail start to the first defined
/// index at or past it, so that the shift law `f(n + period) = f(n) + delta`
/// holds for the completed function too (between the detected start and the
/// first defined index, `f` still rides on pre-periodic values).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    /// `f(0) ..= f(start + period - 1)`.
    pub values: Vec<Counter>,
    pub start: u64,
    pub period: u64,
    pub delta: i64,
}

impl FTable {
    /// `f(n)`, extending past the stored range by the shift law.
    pub fn value_at(&self, n: u64) -> Counter {
        if (n as usize) < self.values.len() {
            return self.values[n as usize];
        }
        let offset = n - self.start;
        let base = self.values[(self.start + offset % self.period) as usize];
        let shifts = offset / self.period;
        (base as i64 + shifts as i64 * self.delta) as Counter
    }
}

/// Completes an increasing relation with a detected tail to an [`FTable`].
pub fn complete_f(mcr: &Mcr) -> Result<FTable, SynthesisError> {
    let tail = mcr.tail.ok_or(SynthesisError::TailAbsent)?;
    match is_increasing(mcr) {
        IncreasingVerdict::NotIncreasing(w) => {
            return Err(SynthesisError::NotIncreasing(
                w.first.0, w.first.1, w.second.0, w.second.1,
            ));
        }
        IncreasingVerdict::Increasing | IncreasingVerdict::IncreasingPrefixOnly => {}
    }

    // First defined index at or past the detected start; when the tail region
    // is entirely undefined the detected start already works (delta is 0).
    let start = (tail.start as usize..mcr.prefix.len())
        .find(|&n| mcr.prefix[n].is_some())
        .map(|n| n as u64)
        .unwrap_or(tail.start);
    let table_len = (start + tail.period) as usize;
    if table_len > mcr.prefix.len() {
        return Err(SynthesisError::PrefixTooShort);
    }

    let mut values = Vec::with_capacity(table_len);
    let mut previous: Counter = 0;
    for n in 0..table_len {
        let v = match mcr.prefix[n] {
            Some(c) => c,
            None => previous,
        };
        values.push(v);
        previous = v;
    }
    Ok(FTable {
        values,
        start,
        period: tail.period,
        delta: tail.delta,
    })
}

/// Builds the deterministic equivalent from an increasing, ultimately
/// periodic relation: states `q0 ..= q(start + period - 1)` where `qi` is the
/// state after `i` letters, chain effects `f(i) - f(i+1)`, and a loop-back
/// edge whose effect `f(start + period - 1) - f(start) - delta` is the unique
/// value keeping the accumulated effect after `n` letters at `-f(n)`. All
/// effects are nonpositive and `qi` accepts iff the relation defines `i`.
pub fn synthesize_docn(symbol: &str, mcr: &Mcr) -> Result<Ocn, SynthesisError> {
    let table = complete_f(mcr)?;
    let count = table.values.len();
    let states: Vec<String> = (0..count).map(|i| format!("q{i}")).collect();
    let mut transitions = Vec::with_capacity(count);
    for i in 0..count - 1 {
        let effect = table.values[i] as i64 - table.values[i + 1] as i64;
        transitions.push(Transition::new(
            states[i].clone(),
            symbol,
            effect,
            states[i + 1].clone(),
        ));
    }
    let loop_effect =
        table.values[count - 1] as i64 - table.values[table.start as usize] as i64 - table.delta;
    transitions.push(Transition::new(
        states[count - 1].clone(),
        symbol,
        loop_effect,
        states[table.start as usize].clone(),
    ));
    let accepting: Vec<String> = (0..count)
        .filter(|&i| mcr.prefix[i].is_some())
        .map(|i| states[i].clone())
        .collect();
    Ok(Ocn::new(
        [symbol],
        states.clone(),
        [states[0].clone()],
        transitions,
        accepting,
    )
    .expect("synthesized net is well-formed by construction"))
}

/// Outcome of the uniform determinizability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// An equivalent deterministic net, checked against the source for all
    /// word lengths up to `verified_horizon` and counters up to
    /// [`VERIFY_COUNTER_CAP`]. The periodic tail beyond the horizon is
    /// conjectural; the verified range records exactly what was proved.
    UniformDet {
        docn: Box<Ocn>,
        verified_horizon: u64,
    },
    /// Two exactly computed entries refute every deterministic candidate.
    NotUniformDet { witness: WitnessPair },
    /// No periodic tail could be confirmed within the horizon.
    Inconclusive { reason: String },
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::UniformDet {
                docn,
                verified_horizon,
            } => {
                let mut st = serializer.serialize_struct("Verdict", 3)?;
                st.serialize_field("verdict", "uniform-det")?;
                st.serialize_field("docn", &docn.to_text())?;
                st.serialize_field("verified_horizon", verified_horizon)?;
                st.end()
            }
            Verdict::NotUniformDet { witness } => {
                let mut st = serializer.serialize_struct("Verdict", 2)?;
                st.serialize_field("verdict", "not-uniform-det")?;
                st.serialize_field(
                    "witness",
                    &[
                        [witness.first.0, witness.first.1],
                        [witness.second.0, witness.second.1],
                    ],
                )?;
                st.end()
            }
            Verdict::Inconclusive { reason } => {
                let mut st = serializer.serialize_struct("Verdict", 2)?;
                st.serialize_field("verdict", "inconclusive")?;
                st.serialize_field("reason", reason)?;
                st.end()
            }
        }
    }
}

/// Decides uniform determinizability of a unary net.
///
/// The relation's prefix is computed exactly up to `horizon`. Any
/// non-increasing pair found there is an unconditional refutation. Otherwise
/// a confirmed tail yields a candidate, which must pass a bounded
/// equivalence check before the positive verdict is issued; failing both
/// routes the decision is inconclusive at this horizon.
pub fn decide_uniform_det(
    ocn: &Ocn,
    horizon: usize,
    confirm_window: usize,
) -> Result<Verdict, UnaryError> {
    let relation = mcr(ocn, horizon, confirm_window)?;
    if let Some(witness) = crate::unary::least_witness(&relation.prefix) {
        return Ok(Verdict::NotUniformDet { witness });
    }
    if relation.tail.is_none() {
        return Ok(Verdict::Inconclusive {
            reason: format!(
                "no periodic tail confirmed within horizon {horizon} (window {confirm_window})"
            ),
        });
    }
    let docn = match synthesize_docn(&ocn.alphabet()[0], &relation) {
        Ok(docn) => docn,
        Err(e) => {
            return Ok(Verdict::Inconclusive {
                reason: format!("synthesis failed: {e}"),
            });
        }
    };
    match bounded_equiv(
        ocn,
        &docn,
        EquivMode::UniformUpTo(VERIFY_COUNTER_CAP),
        horizon,
    )
    .expect("alphabets match by construction")
    {
        EquivReport::Agree { .. } => Ok(Verdict::UniformDet {
            docn: Box::new(docn),
            verified_horizon: horizon as u64,
        }),
        EquivReport::Counterexample { word, counter, .. } => Ok(Verdict::Inconclusive {
            reason: format!(
                "candidate failed verification on sigma^{} at counter {counter}",
                word.len()
            ),
        }),
    }
}

/// The language of a unary net at one fixed counter, as a semilinear length
/// set and a regular expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnaryLanguage {
    pub set: UnarySemilinear,
    pub regex: String,
    /// With a confirmed tail the description extrapolates to all lengths;
    /// otherwise it is exact only up to `horizon`.
    pub exact: bool,
    pub horizon: u64,
}

impl UnaryLanguage {
    pub fn contains(&self, n: u64) -> bool {
        self.set.contains(n)
    }
}

/// Assembles `{ n : MCR(n) <= c }` from the computed relation: prefix
/// entries become fixed lengths, and each residue of the periodic segment
/// contributes either finitely many lengths (rising values cross `c` at some
/// point) or a full arithmetic progression (constant values stay below `c`).
pub fn unary_language_dfa(
    ocn: &Ocn,
    counter: Counter,
    horizon: usize,
    confirm_window: usize,
) -> Result<UnaryLanguage, UnaryError> {
    let relation = mcr(ocn, horizon, confirm_window)?;
    let mut components: Vec<(u64, u64)> = Vec::new();
    let exact = relation.tail.is_some();
    match relation.tail {
        Some(tail) => {
            let start = tail.start as usize;
            let period = tail.period as usize;
            for n in 0..start {
                if relation.prefix[n].is_some_and(|v| v <= counter) {
                    components.push((n as u64, 0));
                }
            }
            for j in start..start + period {
                let Some(value) = relation.prefix[j] else {
                    continue;
                };
                if tail.delta > 0 {
                    // Values rise by delta each period: finitely many lengths.
                    if value <= counter {
                        let last = (counter - value) / tail.delta as u64;
                        for m in 0..=last {
                            components.push((j as u64 + m * tail.period, 0));
                        }
                    }
                } else if tail.delta == 0 {
                    if value <= counter {
                        components.push((j as u64, tail.period));
                    }
                } else {
                    // Mechanical extrapolation of a falling law: membership
                    // starts once the value has dropped to the counter.
                    let fall = (-tail.delta) as u64;
                    let first = if value <= counter {
                        0
                    } else {
                        (value - counter).div_ceil(fall)
                    };
                    components.push((j as u64 + first * tail.period, tail.period));
                }
            }
        }
        None => {
            for (n, entry) in relation.prefix.iter().enumerate() {
                if entry.is_some_and(|v| v <= counter) {
                    components.push((n as u64, 0));
                }
            }
        }
    }
    components.sort_unstable();
    components.dedup();
    let set = UnarySemilinear::new(components);
    let regex = unary_semilinear_to_regex(&set, &ocn.alphabet()[0]);
    Ok(UnaryLanguage {
        set,
        regex,
        exact,
        horizon: horizon as u64,
    })
}
