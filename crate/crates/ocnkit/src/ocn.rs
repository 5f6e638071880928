//! One-counter nets: the data model and its exact nondeterministic semantics.
//!
//! An [`Ocn`] is a finite automaton whose transitions carry integer counter
//! effects. A run keeps a single nonnegative counter; a transition whose
//! effect would drive the counter below zero is disabled. There are no zero
//! tests, which makes the model monotone: anything accepted from counter `c`
//! is accepted from every `c' >= c`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Counter values are nonnegative.
pub type Counter = u64;
/// Transition effects are arbitrary integers.
pub type Effect = i64;

/// Errors raised when building or querying an [`Ocn`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OcnError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("at least one initial state is required")]
    EmptyInitials,
    #[error("invalid token `{0}`: tokens must be nonempty, whitespace-free and `;`-free")]
    BadToken(String),
}

/// A single labelled, weighted transition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: String,
    pub symbol: String,
    pub effect: Effect,
    pub target: String,
}

impl Transition {
    pub fn new(
        source: impl Into<String>,
        symbol: impl Into<String>,
        effect: Effect,
        target: impl Into<String>,
    ) -> Self {
        Transition {
            source: source.into(),
            symbol: symbol.into(),
            effect,
            target: target.into(),
        }
    }
}

/// A state together with a nonnegative counter value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: String,
    pub counter: Counter,
}

impl Configuration {
    pub fn new(state: impl Into<String>, counter: Counter) -> Self {
        Configuration {
            state: state.into(),
            counter,
        }
    }
}

/// A finite word of symbol tokens. Tokens are whitespace-separated, so
/// multi-character symbols such as `ell0` or `z1` are first-class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<String>);

impl Word {
    pub fn new(tokens: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Word(tokens.into_iter().map(Into::into).collect())
    }

    /// Splits `text` on whitespace; the empty string denotes the empty word.
    pub fn parse(text: &str) -> Self {
        Word(text.split_whitespace().map(str::to_owned).collect())
    }

    /// The unary word `token^n`.
    pub fn repeated(token: &str, n: usize) -> Self {
        Word(std::iter::repeat_n(token.to_owned(), n).collect())
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Token-level reversal.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    pub fn push(&mut self, token: impl Into<String>) {
        self.0.push(token.into());
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(" "))
    }
}

/// Effect and nadir of a path, as computed by [`path_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStats {
    /// Sum of all transition effects.
    pub effect: Effect,
    /// Minimum over all prefix sums, including the empty prefix; never positive.
    pub nadir: Effect,
}

/// Prefix-sum statistics of a sequence of effects.
pub fn path_stats(effects: &[Effect]) -> PathStats {
    let mut sum = 0i64;
    let mut nadir = 0i64;
    for &e in effects {
        sum += e;
        nadir = nadir.min(sum);
    }
    PathStats { effect: sum, nadir }
}

/// The least initial counter from which the effect sequence can be traversed
/// without the running sum dipping below zero: exactly `-nadir`.
pub fn min_initial_counter(effects: &[Effect]) -> Counter {
    (-path_stats(effects).nadir) as Counter
}

fn check_token(tok: &str) -> Result<(), OcnError> {
    if tok.is_empty() || tok.contains(char::is_whitespace) || tok.contains(';') {
        return Err(OcnError::BadToken(tok.to_owned()));
    }
    Ok(())
}

/// A one-counter net.
///
/// Several initial states are allowed; determinism additionally requires the
/// initial set to be a singleton. Duplicate transitions are collapsed so each
/// `(source, symbol, effect, target)` quadruple appears once.
#[derive(Debug, Clone)]
pub struct Ocn {
    alphabet: Vec<String>,
    states: Vec<String>,
    initials: BTreeSet<usize>,
    transitions: Vec<Transition>,
    accepting: BTreeSet<usize>,
    symbol_index: HashMap<String, usize>,
    state_index: HashMap<String, usize>,
    // adjacency[state][symbol] -> list of (effect, target state)
    adjacency: Vec<Vec<Vec<(Effect, usize)>>>,
}

impl PartialEq for Ocn {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.states == other.states
            && self.initials == other.initials
            && self.transitions == other.transitions
            && self.accepting == other.accepting
    }
}

impl Eq for Ocn {}

impl Ocn {
    pub fn new(
        alphabet: impl IntoIterator<Item = impl Into<String>>,
        states: impl IntoIterator<Item = impl Into<String>>,
        initials: impl IntoIterator<Item = impl Into<String>>,
        transitions: impl IntoIterator<Item = Transition>,
        accepting: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, OcnError> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        let states: Vec<String> = states.into_iter().map(Into::into).collect();

        let mut symbol_index = HashMap::new();
        for (i, sym) in alphabet.iter().enumerate() {
            check_token(sym)?;
            if symbol_index.insert(sym.clone(), i).is_some() {
                return Err(OcnError::DuplicateSymbol(sym.clone()));
            }
        }
        let mut state_index = HashMap::new();
        for (i, st) in states.iter().enumerate() {
            check_token(st)?;
            if state_index.insert(st.clone(), i).is_some() {
                return Err(OcnError::DuplicateState(st.clone()));
            }
        }

        let lookup_state = |name: String| -> Result<usize, OcnError> {
            state_index
                .get(&name)
                .copied()
                .ok_or(OcnError::UndeclaredState(name))
        };

        let mut initial_set = BTreeSet::new();
        for name in initials {
            initial_set.insert(lookup_state(name.into())?);
        }
        if initial_set.is_empty() {
            return Err(OcnError::EmptyInitials);
        }
        let mut accepting_set = BTreeSet::new();
        for name in accepting {
            accepting_set.insert(lookup_state(name.into())?);
        }

        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        let mut adjacency = vec![vec![Vec::new(); alphabet.len()]; states.len()];
        for t in transitions {
            let src = lookup_state(t.source.clone())?;
            let dst = lookup_state(t.target.clone())?;
            let sym = symbol_index
                .get(&t.symbol)
                .copied()
                .ok_or_else(|| OcnError::UndeclaredSymbol(t.symbol.clone()))?;
            if seen.insert((src, sym, t.effect, dst)) {
                adjacency[src][sym].push((t.effect, dst));
                kept.push(t);
            }
        }

        Ok(Ocn {
            alphabet,
            states,
            initials: initial_set,
            transitions: kept,
            accepting: accepting_set,
            symbol_index,
            state_index,
            adjacency,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Initial state names, in declaration order.
    pub fn initials(&self) -> impl Iterator<Item = &str> {
        self.initials.iter().map(|&i| self.states[i].as_str())
    }

    /// Accepting state names, in declaration order.
    pub fn accepting(&self) -> impl Iterator<Item = &str> {
        self.accepting.iter().map(|&i| self.states[i].as_str())
    }

    pub fn is_initial(&self, state: &str) -> bool {
        self.state_index
            .get(state)
            .is_some_and(|i| self.initials.contains(i))
    }

    pub fn is_accepting(&self, state: &str) -> bool {
        self.state_index
            .get(state)
            .is_some_and(|i| self.accepting.contains(i))
    }

    pub fn symbol_id(&self, symbol: &str) -> Option<usize> {
        self.symbol_index.get(symbol).copied()
    }

    pub fn state_id(&self, state: &str) -> Option<usize> {
        self.state_index.get(state).copied()
    }

    /// The largest positive effect on any transition (0 when none is positive).
    /// Bounds the counter growth per letter, which keeps every membership
    /// search finite: no run on a length-`n` word can push the counter beyond
    /// `initial + n * max_positive_effect`.
    pub fn max_positive_effect(&self) -> Effect {
        self.transitions
            .iter()
            .map(|t| t.effect.max(0))
            .max()
            .unwrap_or(0)
    }

    /// All successor configurations of `config` on `symbol`; successors whose
    /// counter would become negative are excluded.
    pub fn step(
        &self,
        config: &Configuration,
        symbol: &str,
    ) -> Result<BTreeSet<Configuration>, OcnError> {
        let sym = self
            .symbol_id(symbol)
            .ok_or_else(|| OcnError::UndeclaredSymbol(symbol.to_owned()))?;
        let src = self
            .state_id(&config.state)
            .ok_or_else(|| OcnError::UndeclaredState(config.state.clone()))?;
        let mut out = BTreeSet::new();
        for &(effect, dst) in &self.adjacency[src][sym] {
            let next = config.counter as i64 + effect;
            if next >= 0 {
                out.insert(Configuration::new(
                    self.states[dst].clone(),
                    next as Counter,
                ));
            }
        }
        Ok(out)
    }

    pub(crate) fn successors_idx(&self, state: usize, sym: usize) -> &[(Effect, usize)] {
        &self.adjacency[state][sym]
    }

    pub(crate) fn initial_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.initials.iter().copied()
    }

    pub(crate) fn is_accepting_idx(&self, state: usize) -> bool {
        self.accepting.contains(&state)
    }

    fn word_ids(&self, word: &Word) -> Result<Vec<usize>, OcnError> {
        word.tokens()
            .iter()
            .map(|tok| {
                self.symbol_id(tok)
                    .ok_or_else(|| OcnError::UndeclaredSymbol(tok.clone()))
            })
            .collect()
    }

    /// Exact membership: is some accepting run on `word` possible from
    /// `initial_counter`? Breadth-first closure over configurations; the
    /// per-letter counter growth bound makes each layer finite.
    pub fn accepts(&self, word: &Word, initial_counter: Counter) -> Result<bool, OcnError> {
        let symbols = self.word_ids(word)?;
        let mut layer: HashSet<(usize, Counter)> =
            self.initial_ids().map(|s| (s, initial_counter)).collect();
        for &sym in &symbols {
            let mut next = HashSet::new();
            for &(state, counter) in &layer {
                for &(effect, dst) in self.successors_idx(state, sym) {
                    let c = counter as i64 + effect;
                    if c >= 0 {
                        next.insert((dst, c as Counter));
                    }
                }
            }
            if next.is_empty() {
                return Ok(false);
            }
            layer = next;
        }
        Ok(layer.iter().any(|&(s, _)| self.is_accepting_idx(s)))
    }

    /// True iff there is exactly one initial state and at most one transition
    /// per `(state, symbol)` pair.
    pub fn is_deterministic(&self) -> bool {
        if self.initials.len() != 1 {
            return false;
        }
        self.adjacency
            .iter()
            .all(|per_state| per_state.iter().all(|succ| succ.len() <= 1))
    }
}
