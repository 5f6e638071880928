//! Lossy counter machines.
//!
//! A machine has locations, named counters, and transitions labelled with
//! one counter operation each: increment, decrement, or zero test. The
//! semantics are lossy: on every step, each counter may additionally drop to
//! any smaller value. Concretely, a step on `op` from counter vector `a` to
//! `b` requires `b_k <= a_k + 1` (increment), `b_k <= a_k - 1` (decrement),
//! or `b_k = a_k = 0` (zero test) on the operated counter, and `b_j <= a_j`
//! elsewhere.
//!
//! Runs are encoded as words for the reduction machinery: a configuration
//! `<l, (a_1 .. a_n)>` becomes the block `l z1^a1 ... zn^an` over the
//! location and counter names, and a run is the concatenation of its
//! configuration blocks (read in reverse by the nets built from it).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::ocn::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcmError {
    #[error("duplicate location `{0}`")]
    DuplicateLocation(String),
    #[error("duplicate counter `{0}`")]
    DuplicateCounter(String),
    #[error("location and counter names must be disjoint; `{0}` is both")]
    NameClash(String),
    #[error("undeclared location `{0}`")]
    UndeclaredLocation(String),
    #[error("undeclared counter `{0}`")]
    UndeclaredCounter(String),
    #[error("invalid token `{0}`")]
    BadToken(String),
    #[error("configuration has {got} counter values, machine has {expected} counters")]
    ArityMismatch { got: usize, expected: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("consecutive configurations {0} -> {1} are not related by a step")]
    NotARun(String, String),
}

/// The three counter operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Increment,
    Decrement,
    ZeroTest,
}

impl OpKind {
    pub fn suffix(self) -> &'static str {
        match self {
            OpKind::Increment => "++",
            OpKind::Decrement => "--",
            OpKind::ZeroTest => "=0?",
        }
    }
}

/// A transition `source --(counter op)--> target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LcmTransition {
    pub source: String,
    pub counter: String,
    pub kind: OpKind,
    pub target: String,
}

impl fmt::Display for LcmTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}{} {}",
            self.source,
            self.counter,
            self.kind.suffix(),
            self.target
        )
    }
}

/// A location and a vector of counter values (one per declared counter).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LcmConfig {
    pub location: String,
    pub counters: Vec<u64>,
}

impl LcmConfig {
    pub fn new(location: impl Into<String>, counters: impl IntoIterator<Item = u64>) -> Self {
        LcmConfig {
            location: location.into(),
            counters: counters.into_iter().collect(),
        }
    }
}

impl fmt::Display for LcmConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.location)?;
        for c in &self.counters {
            write!(f, " {c}")?;
        }
        write!(f, ">")
    }
}

fn check_token(tok: &str) -> Result<(), LcmError> {
    if tok.is_empty() || tok.contains(char::is_whitespace) || tok.contains(';') {
        return Err(LcmError::BadToken(tok.to_owned()));
    }
    Ok(())
}

/// A lossy counter machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcm {
    locations: Vec<String>,
    counters: Vec<String>,
    transitions: Vec<LcmTransition>,
    location_index: HashMap<String, usize>,
    counter_index: HashMap<String, usize>,
}

impl Lcm {
    pub fn new(
        locations: impl IntoIterator<Item = impl Into<String>>,
        counters: impl IntoIterator<Item = impl Into<String>>,
        transitions: impl IntoIterator<Item = LcmTransition>,
    ) -> Result<Self, LcmError> {
        let locations: Vec<String> = locations.into_iter().map(Into::into).collect();
        let counters: Vec<String> = counters.into_iter().map(Into::into).collect();
        let mut location_index = HashMap::new();
        for (i, loc) in locations.iter().enumerate() {
            check_token(loc)?;
            if location_index.insert(loc.clone(), i).is_some() {
                return Err(LcmError::DuplicateLocation(loc.clone()));
            }
        }
        let mut counter_index = HashMap::new();
        for (i, z) in counters.iter().enumerate() {
            check_token(z)?;
            if counter_index.insert(z.clone(), i).is_some() {
                return Err(LcmError::DuplicateCounter(z.clone()));
            }
            if location_index.contains_key(z) {
                return Err(LcmError::NameClash(z.clone()));
            }
        }
        let transitions: Vec<LcmTransition> = transitions.into_iter().collect();
        for t in &transitions {
            if !location_index.contains_key(&t.source) {
                return Err(LcmError::UndeclaredLocation(t.source.clone()));
            }
            if !location_index.contains_key(&t.target) {
                return Err(LcmError::UndeclaredLocation(t.target.clone()));
            }
            if !counter_index.contains_key(&t.counter) {
                return Err(LcmError::UndeclaredCounter(t.counter.clone()));
            }
        }
        Ok(Lcm {
            locations,
            counters,
            transitions,
            location_index,
            counter_index,
        })
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn counters(&self) -> &[String] {
        &self.counters
    }

    pub fn transitions(&self) -> &[LcmTransition] {
        &self.transitions
    }

    pub fn has_location(&self, name: &str) -> bool {
        self.location_index.contains_key(name)
    }

    pub fn counter_id(&self, name: &str) -> Option<usize> {
        self.counter_index.get(name).copied()
    }

    fn check_config(&self, config: &LcmConfig) -> Result<(), LcmError> {
        if !self.has_location(&config.location) {
            return Err(LcmError::UndeclaredLocation(config.location.clone()));
        }
        if config.counters.len() != self.counters.len() {
            return Err(LcmError::ArityMismatch {
                got: config.counters.len(),
                expected: self.counters.len(),
            });
        }
        Ok(())
    }

    /// Is `to` reachable from `from` by a single (lossy) step?
    pub fn single_step(&self, from: &LcmConfig, to: &LcmConfig) -> bool {
        self.transitions.iter().any(|t| {
            if t.source != from.location || t.target != to.location {
                return false;
            }
            let k = self.counter_index[&t.counter];
            (0..self.counters.len()).all(|j| {
                let a = from.counters[j];
                let b = to.counters[j];
                if j == k {
                    match t.kind {
                        OpKind::Increment => b <= a + 1,
                        OpKind::Decrement => b < a,
                        OpKind::ZeroTest => a == 0 && b == 0,
                    }
                } else {
                    b <= a
                }
            })
        })
    }
}

/// Successor configurations and whether the cap truncated any of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub successors: BTreeSet<LcmConfig>,
    /// True when some increment would have pushed a counter past the cap.
    pub saturated: bool,
}

/// All lossy successors of `config`, with every counter bounded by `cap`.
pub fn lcm_step(lcm: &Lcm, config: &LcmConfig, cap: u64) -> Result<StepResult, LcmError> {
    lcm.check_config(config)?;
    let mut successors = BTreeSet::new();
    let mut saturated = false;
    for t in lcm.transitions() {
        if t.source != config.location {
            continue;
        }
        let k = lcm.counter_index[&t.counter];
        let a_k = config.counters[k];
        let operated_max = match t.kind {
            OpKind::Increment => {
                if a_k + 1 > cap {
                    saturated = true;
                }
                Some((a_k + 1).min(cap))
            }
            OpKind::Decrement => a_k.checked_sub(1),
            OpKind::ZeroTest => {
                if a_k == 0 {
                    Some(0)
                } else {
                    None
                }
            }
        };
        let Some(operated_max) = operated_max else {
            continue;
        };
        // Enumerate all lossy outcomes: the operated counter up to its rule's
        // bound, every other counter up to its current value.
        let mut stack = vec![Vec::with_capacity(config.counters.len())];
        for j in 0..config.counters.len() {
            let max_j = if j == k {
                operated_max
            } else {
                config.counters[j]
            };
            let mut grown = Vec::new();
            for partial in stack {
                for b in 0..=max_j {
                    let mut next = partial.clone();
                    next.push(b);
                    grown.push(next);
                }
            }
            stack = grown;
        }
        for counters in stack {
            successors.insert(LcmConfig {
                location: t.target.clone(),
                counters,
            });
        }
    }
    Ok(StepResult {
        successors,
        saturated,
    })
}

/// Breadth-first reachability closure with counters capped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    pub configs: BTreeSet<LcmConfig>,
    /// True when some step was truncated by the cap, i.e. the true
    /// reachability set may extend beyond the capped one.
    pub saturated: bool,
}

pub fn lcm_reach(lcm: &Lcm, init: &LcmConfig, cap: u64) -> Result<ReachResult, LcmError> {
    lcm.check_config(init)?;
    let mut configs = BTreeSet::new();
    let mut queue = VecDeque::new();
    configs.insert(init.clone());
    queue.push_back(init.clone());
    let mut saturated = false;
    while let Some(config) = queue.pop_front() {
        let step = lcm_step(lcm, &config, cap)?;
        saturated |= step.saturated;
        for succ in step.successors {
            if configs.insert(succ.clone()) {
                queue.push_back(succ);
            }
        }
    }
    Ok(ReachResult { configs, saturated })
}

/// A run encoding and its token-level reversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunEncoding {
    pub forward: Word,
    pub reversed: Word,
}

/// Encodes one configuration as `location z1^a1 ... zn^an`.
pub fn encode_config(lcm: &Lcm, config: &LcmConfig) -> Result<Word, LcmError> {
    lcm.check_config(config)?;
    let mut word = Word::default();
    word.push(config.location.clone());
    for (z, &count) in lcm.counters().iter().zip(&config.counters) {
        for _ in 0..count {
            word.push(z.clone());
        }
    }
    Ok(word)
}

/// Encodes a run as the concatenation of its configuration blocks and also
/// returns the reversal. Consecutive configurations must be related by a
/// lossy step.
pub fn encode_run(lcm: &Lcm, run: &[LcmConfig]) -> Result<RunEncoding, LcmError> {
    let mut forward = Word::default();
    for (i, config) in run.iter().enumerate() {
        if i + 1 < run.len() && !lcm.single_step(config, &run[i + 1]) {
            return Err(LcmError::NotARun(
                config.to_string(),
                run[i + 1].to_string(),
            ));
        }
        for token in encode_config(lcm, config)?.tokens() {
            forward.push(token.clone());
        }
    }
    let reversed = forward.reversed();
    Ok(RunEncoding { forward, reversed })
}

/// Parses the `.lcm` text format:
///
/// ```text
/// locations: l0 l1
/// counters: z1 z2
/// trans: l0 z1++ l1
/// trans: l1 z2=0? l0
/// ```
pub fn parse_lcm(text: &str) -> Result<Lcm, LcmError> {
    let mut locations: Option<Vec<String>> = None;
    let mut counters: Option<Vec<String>> = None;
    let mut transitions: Vec<LcmTransition> = Vec::new();
    let perr = |line: usize, message: String| LcmError::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, rest)) = line.split_once(':') else {
            return Err(perr(lineno, "expected `directive: ...`".into()));
        };
        let tokens: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
        match name.trim() {
            "locations" => {
                if locations.replace(tokens).is_some() {
                    return Err(perr(lineno, "duplicate `locations:` directive".into()));
                }
            }
            "counters" => {
                if counters.replace(tokens).is_some() {
                    return Err(perr(lineno, "duplicate `counters:` directive".into()));
                }
            }
            "trans" => {
                if tokens.len() != 3 {
                    return Err(perr(lineno, "`trans:` takes `source op target`".into()));
                }
                let op = &tokens[1];
                let (counter, kind) = if let Some(c) = op.strip_suffix("++") {
                    (c, OpKind::Increment)
                } else if let Some(c) = op.strip_suffix("--") {
                    (c, OpKind::Decrement)
                } else if let Some(c) = op.strip_suffix("=0?") {
                    (c, OpKind::ZeroTest)
                } else {
                    return Err(perr(
                        lineno,
                        format!("op `{op}` must end in `++`, `--` or `=0?`"),
                    ));
                };
                transitions.push(LcmTransition {
                    source: tokens[0].clone(),
                    counter: counter.to_owned(),
                    kind,
                    target: tokens[2].clone(),
                });
            }
            other => return Err(perr(lineno, format!("unknown directive `{other}`"))),
        }
    }
    let locations = locations.ok_or(perr(0, "missing `locations:` directive".into()))?;
    let counters = counters.ok_or(perr(0, "missing `counters:` directive".into()))?;
    Lcm::new(locations, counters, transitions)
}

/// Serializes to canonical `.lcm` text.
pub fn serialize_lcm(lcm: &Lcm) -> String {
    let mut out = String::new();
    out.push_str(&format!("locations: {}\n", lcm.locations().join(" ")));
    out.push_str(&format!("counters: {}\n", lcm.counters().join(" ")));
    for t in lcm.transitions() {
        out.push_str(&format!(
            "trans: {} {}{} {}\n",
            t.source,
            t.counter,
            t.kind.suffix(),
            t.target
        ));
    }
    out
}

impl Lcm {
    pub fn parse(text: &str) -> Result<Lcm, LcmError> {
        parse_lcm(text)
    }

    pub fn to_text(&self) -> String {
        serialize_lcm(self)
    }
}
