//! Linear and semilinear sets over pairs of naturals, and the normalization
//! steps that turn an increasing semilinear set into an ultimately periodic
//! description.
//!
//! A linear set `Lin(b, P)` contains `b + sum(lambda_i * p_i)` for all
//! nonnegative coefficients. The pipeline here handles the single-period
//! shape produced by minimal-counter analysis:
//!
//! 1. [`gamma_split`] rewrites one component so its period's first coordinate
//!    becomes a chosen multiple `gamma`, compensating with shifted bases.
//! 2. [`normalize_common_period`] applies the split with `gamma` equal to the
//!    lcm of all period first-coordinates. For an increasing set the second
//!    coordinates are then forced to agree as well; if two distinct slopes
//!    survive, the two offending components certify the set is not
//!    increasing, and they are returned as evidence.
//! 3. [`to_ultimately_periodic`] reads off the `(N, k, d)` shift law from the
//!    normalized form.
//!
//! [`UnarySemilinear`] covers the one-dimensional case, whose members are
//! word lengths; [`unary_semilinear_to_regex`] prints it as a union of
//! `t^c (t^p)*` expressions.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("expected a single-period component, found {0} periods")]
    NotSinglePeriod(usize),
    #[error("component has {0} periods; normalization handles at most one")]
    MultiPeriodComponent(usize),
    #[error("period first component {p} does not divide gamma {gamma}")]
    UnalignedSplit { p: u64, gamma: u64 },
    #[error("cannot split a finite component (period step 0) to gamma {0}")]
    ZeroPeriodSplit(u64),
    #[error(
        "period ({0}, {1}) advances the second coordinate only; the set is not a function graph"
    )]
    VerticalPeriod(u64, u64),
    #[error("components do not share a single period; normalize first")]
    NotNormalized,
}

/// `Lin(base, periods)` over pairs of naturals. The zero vector is never
/// stored as a period; an empty period set denotes the singleton `{base}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSet2 {
    pub base: (u64, u64),
    pub periods: Vec<(u64, u64)>,
}

impl LinearSet2 {
    pub fn new(base: (u64, u64), periods: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut kept: Vec<(u64, u64)> = Vec::new();
        for p in periods {
            if p != (0, 0) && !kept.contains(&p) {
                kept.push(p);
            }
        }
        LinearSet2 {
            base,
            periods: kept,
        }
    }

    /// The singleton `{base}`.
    pub fn point(base: (u64, u64)) -> Self {
        LinearSet2 {
            base,
            periods: Vec::new(),
        }
    }

    fn contains(&self, point: (u64, u64)) -> bool {
        fn search(point: (u64, u64), base: (u64, u64), periods: &[(u64, u64)]) -> bool {
            if point == base {
                return true;
            }
            if point.0 < base.0 || point.1 < base.1 {
                return false;
            }
            let Some((&p, rest)) = periods.split_first() else {
                return false;
            };
            // Coefficients are bounded by the point's coordinates since every
            // period is nonzero and nonnegative.
            let max_lambda = {
                let by_x = (point.0 - base.0).checked_div(p.0).unwrap_or(u64::MAX);
                let by_y = (point.1 - base.1).checked_div(p.1).unwrap_or(u64::MAX);
                by_x.min(by_y)
            };
            (0..=max_lambda).any(|lambda| {
                let shifted = (base.0 + lambda * p.0, base.1 + lambda * p.1);
                search(point, shifted, rest)
            })
        }
        search(point, self.base, &self.periods)
    }
}

/// A finite union of linear sets; components may overlap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemilinearSet2 {
    pub components: Vec<LinearSet2>,
}

impl SemilinearSet2 {
    pub fn new(components: impl IntoIterator<Item = LinearSet2>) -> Self {
        SemilinearSet2 {
            components: components.into_iter().collect(),
        }
    }
}

/// Membership test by bounded coefficient search.
pub fn lin_member(point: (u64, u64), set: &SemilinearSet2) -> bool {
    set.components.iter().any(|c| c.contains(point))
}

/// Splits a single-period component into `gamma / p` components that all
/// carry period `(gamma, r * gamma / p)`, preserving the member set.
pub fn gamma_split(component: &LinearSet2, gamma: u64) -> Result<SemilinearSet2, SemilinearError> {
    if component.periods.len() != 1 {
        return Err(SemilinearError::NotSinglePeriod(component.periods.len()));
    }
    let (p, r) = component.periods[0];
    if p == 0 {
        if gamma > 0 {
            return Err(SemilinearError::ZeroPeriodSplit(gamma));
        }
        return Err(SemilinearError::VerticalPeriod(p, r));
    }
    if gamma == 0 || !gamma.is_multiple_of(p) {
        return Err(SemilinearError::UnalignedSplit { p, gamma });
    }
    let parts = gamma / p;
    let period = (gamma, r * parts);
    let components = (0..parts)
        .map(|i| {
            LinearSet2::new(
                (component.base.0 + i * p, component.base.1 + i * r),
                [period],
            )
        })
        .collect();
    Ok(SemilinearSet2 { components })
}

/// Result of [`normalize_common_period`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    /// All infinite components now share `period`; finite components pass
    /// through untouched. Membership is preserved.
    Normalized {
        set: SemilinearSet2,
        period: (u64, u64),
    },
    /// Two split components ended up with the same first coordinate but
    /// different second coordinates: their tails have different slopes, so
    /// the set cannot be increasing.
    NotIncreasingEvidence {
        first: LinearSet2,
        second: LinearSet2,
    },
}

/// Rewrites every infinite component to share one period whose first
/// coordinate is the lcm of the inputs' first coordinates. Inputs must have
/// at most one period each.
pub fn normalize_common_period(set: &SemilinearSet2) -> Result<NormalizeOutcome, SemilinearError> {
    let mut gamma = 1u64;
    let mut has_periodic = false;
    for comp in &set.components {
        match comp.periods.len() {
            0 => {}
            1 => {
                let (p, r) = comp.periods[0];
                if p == 0 {
                    return Err(SemilinearError::VerticalPeriod(p, r));
                }
                gamma = lcm(gamma, p);
                has_periodic = true;
            }
            n => return Err(SemilinearError::MultiPeriodComponent(n)),
        }
    }
    if !has_periodic {
        return Ok(NormalizeOutcome::Normalized {
            set: set.clone(),
            period: (0, 0),
        });
    }

    let mut components = Vec::new();
    let mut eta: Option<(u64, LinearSet2)> = None;
    for comp in &set.components {
        if comp.periods.is_empty() {
            components.push(comp.clone());
            continue;
        }
        let split = gamma_split(comp, gamma)?;
        for part in split.components {
            let this_eta = part.periods[0].1;
            match &eta {
                None => eta = Some((this_eta, part.clone())),
                Some((existing, witness)) if *existing != this_eta => {
                    return Ok(NormalizeOutcome::NotIncreasingEvidence {
                        first: witness.clone(),
                        second: part,
                    });
                }
                Some(_) => {}
            }
            components.push(part);
        }
    }
    let eta = eta.expect("at least one periodic component").0;
    Ok(NormalizeOutcome::Normalized {
        set: SemilinearSet2 { components },
        period: (gamma, eta),
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An `(N, k, d)` description: for `n >= start`, `(n, x)` is a member iff
/// `(n + period, x + delta)` is. `prefix` lists every member with first
/// coordinate below `start + period` (the whole set when it is finite).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpLaw {
    #[serde(rename = "N")]
    pub start: u64,
    #[serde(rename = "k")]
    pub period: u64,
    #[serde(rename = "d")]
    pub delta: u64,
    pub prefix: Vec<(u64, u64)>,
}

/// Reads the shift law off a normalized set: `N` is the largest base first
/// coordinate of the shared-period components (finite members push `N` past
/// themselves), `k` the shared period step and `d` its value shift.
pub fn to_ultimately_periodic(set: &SemilinearSet2) -> Result<UpLaw, SemilinearError> {
    let mut shared: Option<(u64, u64)> = None;
    let mut max_finite: Option<u64> = None;
    let mut alpha_max: Option<u64> = None;
    for comp in &set.components {
        match comp.periods.len() {
            0 => max_finite = Some(max_finite.map_or(comp.base.0, |m| m.max(comp.base.0))),
            1 => {
                let period = comp.periods[0];
                if period.0 == 0 {
                    return Err(SemilinearError::VerticalPeriod(period.0, period.1));
                }
                match shared {
                    None => shared = Some(period),
                    Some(existing) if existing != period => {
                        return Err(SemilinearError::NotNormalized);
                    }
                    Some(_) => {}
                }
                alpha_max = Some(alpha_max.map_or(comp.base.0, |m| m.max(comp.base.0)));
            }
            _ => return Err(SemilinearError::NotNormalized),
        }
    }

    let (start, period, delta) = match shared {
        None => {
            // Finite set: pure prefix, trivial shift law past its largest member.
            let start = max_finite.map_or(0, |m| m + 1);
            (start, 1, 0)
        }
        Some((gamma, eta)) => {
            let start = alpha_max
                .expect("shared period implies a periodic component")
                .max(max_finite.map_or(0, |m| m + 1));
            (start, gamma, eta)
        }
    };

    let cutoff = start + period;
    let mut prefix = Vec::new();
    for comp in &set.components {
        if comp.periods.is_empty() {
            if comp.base.0 < cutoff {
                prefix.push(comp.base);
            }
            continue;
        }
        let (p, r) = comp.periods[0];
        let mut member = comp.base;
        while member.0 < cutoff {
            prefix.push(member);
            member = (member.0 + p, member.1 + r);
        }
    }
    prefix.sort_unstable();
    prefix.dedup();
    Ok(UpLaw {
        start,
        period,
        delta,
        prefix,
    })
}

/// A semilinear subset of the naturals: a union of `offset + period * m`
/// progressions (`period` 0 denotes the singleton `{offset}`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UnarySemilinear {
    pub components: Vec<(u64, u64)>,
}

impl UnarySemilinear {
    pub fn new(components: impl IntoIterator<Item = (u64, u64)>) -> Self {
        UnarySemilinear {
            components: components.into_iter().collect(),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.components.iter().any(|&(offset, period)| {
            if period == 0 {
                n == offset
            } else {
                n >= offset && (n - offset).is_multiple_of(period)
            }
        })
    }
}

/// Prints the set as a regular expression over the given symbol: one
/// `t^c (t^p)*` alternative per component, `+`-joined; the empty union is
/// the empty-language marker.
pub fn unary_semilinear_to_regex(set: &UnarySemilinear, symbol: &str) -> String {
    if set.components.is_empty() {
        return "<empty>".to_owned();
    }
    let atom = |count: u64| -> String {
        match count {
            0 => String::new(),
            1 => symbol.to_owned(),
            n => format!("{symbol}^{n}"),
        }
    };
    let parts: Vec<String> = set
        .components
        .iter()
        .map(|&(offset, period)| {
            let head = atom(offset);
            let tail = if period == 0 {
                String::new()
            } else if period == 1 {
                format!("{symbol}*")
            } else {
                format!("({})*", atom(period))
            };
            match (head.is_empty(), tail.is_empty()) {
                (true, true) => "ε".to_owned(),
                (true, false) => tail,
                (false, true) => head,
                (false, false) => format!("{head}{tail}"),
            }
        })
        .collect();
    parts.join(" + ")
}
