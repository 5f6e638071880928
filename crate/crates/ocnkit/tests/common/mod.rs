//! Shared helpers for the integration suites: seeded net generators and
//! independent oracles that deliberately avoid the library's engine paths.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use ocnkit::{lcm_step, Lcm, LcmConfig, Ocn, Transition, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random unary net: up to `max_states` states, effects in [-3, 3], each
/// ordered state pair carrying an edge with probability 1/2.
pub fn random_unary_ocn(rng: &mut ChaCha8Rng, max_states: usize) -> Ocn {
    let n = rng.random_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut transitions = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.random_bool(0.5) {
                let effect = rng.random_range(-3..=3);
                transitions.push(Transition::new(&states[i], "u", effect, &states[j]));
            }
        }
    }
    let mut initials = vec![states[0].clone()];
    for s in states.iter().skip(1) {
        if rng.random_bool(0.15) {
            initials.push(s.clone());
        }
    }
    let accepting: Vec<String> = states
        .iter()
        .filter(|_| rng.random_bool(0.4))
        .cloned()
        .collect();
    Ocn::new(["u"], states.clone(), initials, transitions, accepting).unwrap()
}

/// A random net over the given alphabet, same shape parameters.
pub fn random_general_ocn(rng: &mut ChaCha8Rng, alphabet: &[&str], max_states: usize) -> Ocn {
    let n = rng.random_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut transitions = Vec::new();
    for i in 0..n {
        for sym in alphabet {
            if rng.random_bool(0.5) {
                let j = rng.random_range(0..n);
                let effect = rng.random_range(-3..=3);
                transitions.push(Transition::new(&states[i], *sym, effect, &states[j]));
            }
        }
    }
    let mut initials = vec![states[0].clone()];
    for s in states.iter().skip(1) {
        if rng.random_bool(0.15) {
            initials.push(s.clone());
        }
    }
    let accepting: Vec<String> = states
        .iter()
        .filter(|_| rng.random_bool(0.4))
        .cloned()
        .collect();
    Ocn::new(
        alphabet.iter().map(|s| s.to_string()),
        states.clone(),
        initials,
        transitions,
        accepting,
    )
    .unwrap()
}

/// A random word over the alphabet, length up to `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[&str], max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::new((0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]))
}

/// Membership by plain recursive enumeration of runs, built on the public
/// transition list rather than the layered engine.
pub fn naive_accepts(ocn: &Ocn, word: &Word, counter: u64) -> bool {
    fn go(ocn: &Ocn, state: &str, counter: i64, rest: &[String]) -> bool {
        let Some((head, tail)) = rest.split_first() else {
            return ocn.is_accepting(state);
        };
        ocn.transitions().iter().any(|t| {
            t.source == state
                && t.symbol == *head
                && counter + t.effect >= 0
                && go(ocn, &t.target, counter + t.effect, tail)
        })
    }
    ocn.initials()
        .any(|s| go(ocn, s, counter as i64, word.tokens()))
}

/// Exact legality of a reversed run encoding, by decoding: the forward word
/// must parse into blocks `location z1^a1 .. zn^an`, open at `<l0, 0..0>`,
/// and step legally between consecutive configurations.
pub fn is_legal_encoding(lcm: &Lcm, l0: &str, reversed: &Word) -> bool {
    let forward = reversed.reversed();
    let tokens = forward.tokens();
    if tokens.is_empty() {
        return false;
    }
    let mut configs: Vec<LcmConfig> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let Some(_) = lcm.locations().iter().position(|l| *l == tokens[i]) else {
            return false;
        };
        let location = tokens[i].clone();
        i += 1;
        let mut counters = vec![0u64; lcm.counters().len()];
        let mut last_index: Option<usize> = None;
        while i < tokens.len() {
            let Some(z) = lcm.counter_id(&tokens[i]) else {
                break; // next location letter
            };
            if last_index.is_some_and(|prev| z < prev) {
                return false; // forward blocks list counters in ascending order
            }
            last_index = Some(z);
            counters[z] += 1;
            i += 1;
        }
        configs.push(LcmConfig::new(location, counters));
    }
    if configs[0].location != l0 || configs[0].counters.iter().any(|&c| c != 0) {
        return false;
    }
    configs
        .windows(2)
        .all(|pair| lcm.single_step(&pair[0], &pair[1]))
}

/// All runs from `<l0, 0..0>` with counters capped and encodings within a
/// token budget. Every prefix of a run is a run, so each visited sequence is
/// reported.
pub fn enumerate_legal_runs(
    lcm: &Lcm,
    l0: &str,
    cap: u64,
    max_tokens: usize,
) -> Vec<Vec<LcmConfig>> {
    fn block_tokens(config: &LcmConfig) -> usize {
        1 + config.counters.iter().sum::<u64>() as usize
    }
    fn go(
        lcm: &Lcm,
        run: &mut Vec<LcmConfig>,
        used: usize,
        cap: u64,
        max_tokens: usize,
        out: &mut Vec<Vec<LcmConfig>>,
    ) {
        out.push(run.clone());
        let last = run.last().unwrap().clone();
        for succ in lcm_step(lcm, &last, cap).unwrap().successors {
            let cost = block_tokens(&succ);
            if used + cost <= max_tokens {
                run.push(succ.clone());
                go(lcm, run, used + cost, cap, max_tokens, out);
                run.pop();
            }
        }
    }
    let init = LcmConfig::new(l0, vec![0; lcm.counters().len()]);
    let used = block_tokens(&init);
    let mut out = Vec::new();
    if used <= max_tokens {
        let mut run = vec![init];
        go(lcm, &mut run, used, cap, max_tokens, &mut out);
    }
    out
}

/// All well-formed reversed words for the machine: location sequences linked
/// by machine transitions ending (in run order: starting) at `l0`, every
/// block count at most `bound`, at most `max_blocks` blocks and `max_tokens`
/// tokens in total.
pub fn well_formed_words(
    lcm: &Lcm,
    l0: &str,
    bound: u64,
    max_blocks: usize,
    max_tokens: usize,
) -> Vec<Word> {
    // Enumerate in run order (first config at l0), then emit reversed.
    let n = lcm.counters().len();
    let mut count_choices: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..n {
        let mut grown = Vec::new();
        for partial in count_choices {
            for c in 0..=bound {
                let mut next = partial.clone();
                next.push(c);
                grown.push(next);
            }
        }
        count_choices = grown;
    }

    fn emit(lcm: &Lcm, blocks: &[(String, Vec<u64>)]) -> Word {
        let mut forward = Word::default();
        for (location, counts) in blocks {
            forward.push(location.clone());
            for (z, &c) in lcm.counters().iter().zip(counts) {
                for _ in 0..c {
                    forward.push(z.clone());
                }
            }
        }
        forward.reversed()
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        lcm: &Lcm,
        blocks: &mut Vec<(String, Vec<u64>)>,
        used: usize,
        count_choices: &[Vec<u64>],
        max_blocks: usize,
        max_tokens: usize,
        out: &mut Vec<Word>,
    ) {
        out.push(emit(lcm, blocks));
        if blocks.len() == max_blocks {
            return;
        }
        let here = blocks.last().unwrap().0.clone();
        let next_locations: Vec<String> = lcm
            .locations()
            .iter()
            .filter(|l| {
                lcm.transitions()
                    .iter()
                    .any(|t| t.source == here && t.target == **l)
            })
            .cloned()
            .collect();
        for location in next_locations {
            for counts in count_choices {
                let cost = 1 + counts.iter().sum::<u64>() as usize;
                if used + cost > max_tokens {
                    continue;
                }
                blocks.push((location.clone(), counts.clone()));
                go(
                    lcm,
                    blocks,
                    used + cost,
                    count_choices,
                    max_blocks,
                    max_tokens,
                    out,
                );
                blocks.pop();
            }
        }
    }

    let mut out = Vec::new();
    for counts in &count_choices {
        let cost = 1 + counts.iter().sum::<u64>() as usize;
        if cost > max_tokens {
            continue;
        }
        let mut blocks = vec![(l0.to_owned(), counts.clone())];
        go(
            lcm,
            &mut blocks,
            cost,
            &count_choices,
            max_blocks,
            max_tokens,
            &mut out,
        );
    }
    out.sort_by_key(|w| (w.len(), w.to_string()));
    out.dedup();
    out
}
