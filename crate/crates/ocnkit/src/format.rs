//! The `.ocn` text format.
//!
//! Line-oriented UTF-8; `;` starts a comment (so `#` stays usable as a
//! symbol token). Example:
//!
//! ```text
//! alphabet: a b #
//! states: q0 q1 q2
//! initial: q0
//! accepting: q1 q2
//! trans: q0 # 0 q1
//! trans: q0 # -1 q2
//! ```
//!
//! The serializer emits the directives in exactly that order, one `trans:`
//! line per transition, effects as decimal integers. Parsing the serialized
//! text reproduces the original value.

use thiserror::Error;

use crate::ocn::{Ocn, OcnError, Transition};

/// A parse failure, pointing at the offending 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `directive: ...`")]
    MissingColon,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("duplicate `{0}:` directive")]
    DuplicateDirective(&'static str),
    #[error("missing `{0}:` directive")]
    MissingDirective(&'static str),
    #[error("`trans:` takes `source symbol effect target`")]
    BadTransitionArity,
    #[error("invalid effect `{0}`")]
    BadEffect(String),
    #[error(transparent)]
    Invalid(#[from] OcnError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses `.ocn` text into an [`Ocn`].
pub fn parse_ocn(text: &str) -> Result<Ocn, ParseError> {
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut initials: Option<(usize, Vec<String>)> = None;
    let mut accepting: Option<(usize, Vec<String>)> = None;
    let mut transitions: Vec<(usize, Transition)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, rest)) = line.split_once(':') else {
            return Err(err(lineno, ParseErrorKind::MissingColon));
        };
        let tokens: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
        let store = |slot: &mut Option<(usize, Vec<String>)>,
                     which: &'static str|
         -> Result<(), ParseError> {
            if slot.is_some() {
                return Err(err(lineno, ParseErrorKind::DuplicateDirective(which)));
            }
            *slot = Some((lineno, tokens.clone()));
            Ok(())
        };
        match name.trim() {
            "alphabet" => store(&mut alphabet, "alphabet")?,
            "states" => store(&mut states, "states")?,
            "initial" => store(&mut initials, "initial")?,
            "accepting" => store(&mut accepting, "accepting")?,
            "trans" => {
                if tokens.len() != 4 {
                    return Err(err(lineno, ParseErrorKind::BadTransitionArity));
                }
                let effect: i64 = tokens[2]
                    .parse()
                    .map_err(|_| err(lineno, ParseErrorKind::BadEffect(tokens[2].clone())))?;
                transitions.push((
                    lineno,
                    Transition::new(&tokens[0], &tokens[1], effect, &tokens[3]),
                ));
            }
            other => {
                return Err(err(
                    lineno,
                    ParseErrorKind::UnknownDirective(other.to_owned()),
                ));
            }
        }
    }

    let (alpha_line, alphabet) =
        alphabet.ok_or(err(0, ParseErrorKind::MissingDirective("alphabet")))?;
    let (state_line, states) = states.ok_or(err(0, ParseErrorKind::MissingDirective("states")))?;
    let (init_line, initials) =
        initials.ok_or(err(0, ParseErrorKind::MissingDirective("initial")))?;
    let (acc_line, accepting) =
        accepting.ok_or(err(0, ParseErrorKind::MissingDirective("accepting")))?;

    // Re-run the declaration checks ourselves so errors carry line numbers.
    let mut seen = std::collections::HashSet::new();
    for sym in &alphabet {
        if !seen.insert(sym.clone()) {
            return Err(err(
                alpha_line,
                OcnError::DuplicateSymbol(sym.clone()).into(),
            ));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for st in &states {
        if !seen.insert(st.clone()) {
            return Err(err(state_line, OcnError::DuplicateState(st.clone()).into()));
        }
    }
    let declared_state = |s: &String| states.contains(s);
    for name in &initials {
        if !declared_state(name) {
            return Err(err(
                init_line,
                OcnError::UndeclaredState(name.clone()).into(),
            ));
        }
    }
    for name in &accepting {
        if !declared_state(name) {
            return Err(err(
                acc_line,
                OcnError::UndeclaredState(name.clone()).into(),
            ));
        }
    }
    for (lineno, t) in &transitions {
        if !declared_state(&t.source) {
            return Err(err(
                *lineno,
                OcnError::UndeclaredState(t.source.clone()).into(),
            ));
        }
        if !declared_state(&t.target) {
            return Err(err(
                *lineno,
                OcnError::UndeclaredState(t.target.clone()).into(),
            ));
        }
        if !alphabet.contains(&t.symbol) {
            return Err(err(
                *lineno,
                OcnError::UndeclaredSymbol(t.symbol.clone()).into(),
            ));
        }
    }

    Ocn::new(
        alphabet,
        states,
        initials,
        transitions.into_iter().map(|(_, t)| t),
        accepting,
    )
    .map_err(|e| err(init_line, e.into()))
}

/// Serializes an [`Ocn`] to canonical `.ocn` text.
pub fn serialize_ocn(ocn: &Ocn) -> String {
    let mut out = String::new();
    let join = |items: Vec<&str>| items.join(" ");
    out.push_str(&format!(
        "alphabet: {}\n",
        join(ocn.alphabet().iter().map(String::as_str).collect())
    ));
    out.push_str(&format!(
        "states: {}\n",
        join(ocn.states().iter().map(String::as_str).collect())
    ));
    out.push_str(&format!("initial: {}\n", join(ocn.initials().collect())));
    out.push_str(&format!("accepting: {}\n", join(ocn.accepting().collect())));
    for t in ocn.transitions() {
        out.push_str(&format!(
            "trans: {} {} {} {}\n",
            t.source, t.symbol, t.effect, t.target
        ));
    }
    out
}

impl Ocn {
    /// See [`parse_ocn`].
    pub fn parse(text: &str) -> Result<Ocn, ParseError> {
        parse_ocn(text)
    }

    /// See [`serialize_ocn`].
    pub fn to_text(&self) -> String {
        serialize_ocn(self)
    }
}
