//! Bounded language-equivalence testing.
//!
//! Exhaustively compares membership of two nets on every word up to a length
//! bound, either at one fixed initial counter or uniformly for all counters
//! up to a cap. Words are visited in shortlex order (shorter first, then by
//! the left net's alphabet order) and counters ascending, so the reported
//! counterexample is deterministic and minimal in that order.

use std::collections::HashSet;

use thiserror::Error;

use crate::ocn::{Counter, Ocn, OcnError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("alphabet mismatch: left {left:?}, right {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error(transparent)]
    Ocn(#[from] OcnError),
}

/// Which initial counters to probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMode {
    /// Compare `L(a, c)` with `L(b, c)` for the single given counter.
    Fixed(Counter),
    /// Compare for every counter `0..=cap`.
    UniformUpTo(Counter),
}

impl EquivMode {
    fn counters(&self) -> std::ops::RangeInclusive<Counter> {
        match *self {
            EquivMode::Fixed(c) => c..=c,
            EquivMode::UniformUpTo(cap) => 0..=cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivReport {
    Agree {
        words_checked: u64,
    },
    Counterexample {
        word: Word,
        counter: Counter,
        left: bool,
        right: bool,
    },
}

impl EquivReport {
    pub fn agrees(&self) -> bool {
        matches!(self, EquivReport::Agree { .. })
    }
}

/// Exhaustive membership comparison for all words of length `<= max_len`.
pub fn bounded_equiv(
    a: &Ocn,
    b: &Ocn,
    mode: EquivMode,
    max_len: usize,
) -> Result<EquivReport, EquivError> {
    let left: HashSet<&String> = a.alphabet().iter().collect();
    let right: HashSet<&String> = b.alphabet().iter().collect();
    if left != right {
        return Err(EquivError::AlphabetMismatch {
            left: a.alphabet().to_vec(),
            right: b.alphabet().to_vec(),
        });
    }
    if a.alphabet().len() == 1 {
        return Ok(unary_equiv(a, b, mode, max_len));
    }

    let mut words_checked = 0u64;
    // Iterative shortlex enumeration: a word is a digit string over the
    // alphabet indices. An empty alphabet only admits the empty word.
    let longest = if a.alphabet().is_empty() { 0 } else { max_len };
    for len in 0..=longest {
        let mut digits = vec![0usize; len];
        loop {
            let word = Word::new(digits.iter().map(|&d| a.alphabet()[d].clone()));
            words_checked += 1;
            for counter in mode.counters() {
                let la = a.accepts(&word, counter)?;
                let lb = b.accepts(&word, counter)?;
                if la != lb {
                    return Ok(EquivReport::Counterexample {
                        word,
                        counter,
                        left: la,
                        right: lb,
                    });
                }
            }
            // Advance to the next digit string of this length.
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < a.alphabet().len() {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(EquivReport::Agree { words_checked })
}

/// Unary fast path: one incremental configuration sweep per counter gives the
/// acceptance profile for every length at once.
fn unary_equiv(a: &Ocn, b: &Ocn, mode: EquivMode, max_len: usize) -> EquivReport {
    let counters: Vec<Counter> = mode.counters().collect();
    let prof_a: Vec<Vec<bool>> = counters
        .iter()
        .map(|&c| accept_profile_unary(a, c, max_len))
        .collect();
    let prof_b: Vec<Vec<bool>> = counters
        .iter()
        .map(|&c| accept_profile_unary(b, c, max_len))
        .collect();
    for n in 0..=max_len {
        for (ci, &c) in counters.iter().enumerate() {
            if prof_a[ci][n] != prof_b[ci][n] {
                return EquivReport::Counterexample {
                    word: Word::repeated(&a.alphabet()[0], n),
                    counter: c,
                    left: prof_a[ci][n],
                    right: prof_b[ci][n],
                };
            }
        }
    }
    EquivReport::Agree {
        words_checked: max_len as u64 + 1,
    }
}

/// Acceptance of `sigma^n` for every `n <= max_len`, by one layered sweep.
/// Configurations are kept in a dense state-by-counter table; counters are
/// bounded by `counter + max_len * max_positive_effect`, so the table covers
/// every reachable configuration.
pub(crate) fn accept_profile_unary(ocn: &Ocn, counter: Counter, max_len: usize) -> Vec<bool> {
    let sym = 0usize; // unary alphabet
    let n_states = ocn.states().len();
    let span = counter as usize + ocn.max_positive_effect().max(0) as usize * max_len + 1;
    let idx = |state: usize, c: usize| state * span + c;
    let mut layer = vec![false; n_states * span];
    for s in ocn.initial_ids() {
        layer[idx(s, counter as usize)] = true;
    }
    let accepted = |layer: &[bool]| {
        (0..n_states)
            .filter(|&s| ocn.is_accepting_idx(s))
            .any(|s| layer[idx(s, 0)..idx(s, 0) + span].iter().any(|&b| b))
    };
    let mut profile = Vec::with_capacity(max_len + 1);
    profile.push(accepted(&layer));
    for _ in 1..=max_len {
        let mut next = vec![false; n_states * span];
        for state in 0..n_states {
            let succs = ocn.successors_idx(state, sym);
            if succs.is_empty() {
                continue;
            }
            for c in 0..span {
                if !layer[idx(state, c)] {
                    continue;
                }
                for &(effect, dst) in succs {
                    let nc = c as i64 + effect;
                    if nc >= 0 && (nc as usize) < span {
                        next[idx(dst, nc as usize)] = true;
                    }
                }
            }
        }
        layer = next;
        profile.push(accepted(&layer));
    }
    profile
}
