//! Acceptance suite: one test per shipping criterion, each printing a
//! single pass/fail line (`cargo test --test acceptance -- --nocapture` to
//! see them). Every tolerance and bound is pinned in the code below.

mod common;

use std::time::Instant;

use ocnkit::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    enumerate_legal_runs, is_legal_encoding, random_general_ocn, random_unary_ocn, random_word,
    well_formed_words,
};

fn criterion(
    number: u32,
    name: &str,
    budget_secs: f64,
    body: impl FnOnce() -> Result<String, String>,
) {
    let started = Instant::now();
    let outcome = body();
    let elapsed = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {number} ({name}): PASS [{elapsed:.2}s] {detail}");
            assert!(
                elapsed < budget_secs,
                "criterion {number} exceeded its {budget_secs}s budget ({elapsed:.2}s)"
            );
        }
        Err(reason) => {
            println!("criterion {number} ({name}): FAIL [{elapsed:.2}s] {reason}");
            panic!("criterion {number} failed: {reason}");
        }
    }
}

#[test]
fn acceptance_01_gamma_split_golden() {
    criterion(1, "gamma-split golden example", 1.0, || {
        let set = SemilinearSet2::new([
            LinearSet2::new((1, 0), [(4, 8)]),
            LinearSet2::new((2, 1), [(6, 12)]),
        ]);
        let NormalizeOutcome::Normalized { set, period } =
            normalize_common_period(&set).map_err(|e| e.to_string())?
        else {
            return Err("normalization unexpectedly reported failure evidence".into());
        };
        if period != (12, 24) {
            return Err(format!("period {period:?}, expected (12, 24)"));
        }
        let mut bases: Vec<(u64, u64)> = set.components.iter().map(|c| c.base).collect();
        bases.sort_unstable();
        let mut expected = vec![(1, 0), (5, 8), (9, 16), (2, 1), (8, 13)];
        expected.sort_unstable();
        if bases != expected {
            return Err(format!("bases {bases:?}, expected {expected:?}"));
        }
        let law = to_ultimately_periodic(&set).map_err(|e| e.to_string())?;
        if (law.start, law.period, law.delta) != (9, 12, 24) {
            return Err(format!(
                "shift law ({}, {}, {}), expected (9, 12, 24)",
                law.start, law.period, law.delta
            ));
        }
        Ok("period (12,24), five bases, shift law (9,12,24)".into())
    });
}

#[test]
fn acceptance_02_mcr_oracle_equivalence() {
    criterion(2, "MCR frontier vs brute-force oracle", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0c11);
        let horizon = 40;
        // No accepting path of length n <= 40 can need more than
        // 40 * 3 + 5; anything absent under this cap is truly absent.
        let cap = (horizon as u64) * 3 + 5;
        for case in 0..200 {
            let ocn = random_unary_ocn(&mut rng, 5);
            let fast = mcr_prefix(&ocn, horizon).map_err(|e| e.to_string())?;
            let brute = mcr_brute(&ocn, horizon, cap).map_err(|e| e.to_string())?;
            if fast != brute {
                return Err(format!(
                    "case {case}: frontier {fast:?} != brute {brute:?}\n{}",
                    ocn.to_text()
                ));
            }
        }
        Ok("200 random unary nets agree at horizon 40".into())
    });
}

#[test]
fn acceptance_03_uniform_det_round_trip() {
    criterion(3, "uniform-det round trip and refutations", 30.0, || {
        // Positive instances: keep sampling until 50 are certified.
        let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
        let mut positives = 0usize;
        let mut attempts = 0usize;
        while positives < 50 {
            attempts += 1;
            if attempts > 2000 {
                return Err(format!("only {positives} positive instances in 2000 draws"));
            }
            let ocn = random_unary_ocn(&mut rng, 5);
            let verdict = decide_uniform_det(&ocn, 100, 16).map_err(|e| e.to_string())?;
            let Verdict::UniformDet { docn, .. } = verdict else {
                continue;
            };
            let report = bounded_equiv(&ocn, &docn, EquivMode::UniformUpTo(25), 100)
                .map_err(|e| e.to_string())?;
            if !report.agrees() {
                return Err(format!(
                    "synthesized net disagrees with its source: {report:?}\n{}",
                    ocn.to_text()
                ));
            }
            positives += 1;
        }

        // Non-increasing family: a direct costly hop to acceptance plus a
        // longer free detour. Instance 0 is the canonical 3-state example.
        for i in 0..20 {
            let drop = 2 + (i % 4) as i64;
            let detour = 2 + (i % 2);
            let mut chain = vec!["s0".to_owned()];
            for j in 1..detour {
                chain.push(format!("m{j}"));
            }
            chain.push("f".to_owned());
            let mut transitions = vec![Transition::new("s0", "u", -drop, "f")];
            for pair in chain.windows(2) {
                transitions.push(Transition::new(&pair[0], "u", 0, &pair[1]));
            }
            let ocn =
                Ocn::new(["u"], chain, ["s0"], transitions, ["f"]).map_err(|e| e.to_string())?;
            match decide_uniform_det(&ocn, 100, 16).map_err(|e| e.to_string())? {
                Verdict::NotUniformDet { witness } => {
                    let (n1, c1) = witness.first;
                    let (n2, c2) = witness.second;
                    if i == 0 && ((n1, c1), (n2, c2)) != ((1, 2), (2, 0)) {
                        return Err(format!(
                            "canonical instance witness ((1,2),(2,0)) expected, got {witness:?}"
                        ));
                    }
                    // Validate the witness by direct membership.
                    let long_ok = ocn
                        .accepts(&Word::repeated("u", n2 as usize), c2)
                        .map_err(|e| e.to_string())?;
                    let short_fails = !ocn
                        .accepts(&Word::repeated("u", n1 as usize), c2)
                        .map_err(|e| e.to_string())?;
                    if !(long_ok && short_fails) {
                        return Err(format!("witness {witness:?} not certified by membership"));
                    }
                }
                other => return Err(format!("instance {i}: expected refutation, got {other:?}")),
            }
        }
        Ok("50 synthesized nets verified (c <= 25, n <= 100); 20 refutations certified".into())
    });
}

#[test]
fn acceptance_04_synthesis_contract() {
    criterion(
        4,
        "synthesis contract: nonpositive effects, -f accumulation",
        5.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xf00f);
            let mut checked = 0usize;
            let mut attempts = 0usize;
            while checked < 50 {
                attempts += 1;
                if attempts > 2000 {
                    return Err(format!(
                        "only {checked} synthesizable instances in 2000 draws"
                    ));
                }
                let ocn = random_unary_ocn(&mut rng, 5);
                let relation = mcr(&ocn, 100, 16).map_err(|e| e.to_string())?;
                if relation.tail.is_none() || !is_increasing(&relation).is_increasing() {
                    continue;
                }
                let table = complete_f(&relation).map_err(|e| e.to_string())?;
                let docn = synthesize_docn("u", &relation).map_err(|e| e.to_string())?;
                if !docn.is_deterministic() {
                    return Err(format!(
                        "synthesized net not deterministic:\n{}",
                        docn.to_text()
                    ));
                }
                if let Some(t) = docn.transitions().iter().find(|t| t.effect > 0) {
                    return Err(format!("positive effect {t:?} in synthesized net"));
                }
                // Walk the unique path and compare accumulated effect to -f(n).
                let mut state = docn.initials().next().unwrap().to_owned();
                let mut accumulated: i64 = 0;
                for n in 1..=100u64 {
                    let t = docn
                        .transitions()
                        .iter()
                        .find(|t| t.source == state)
                        .ok_or_else(|| format!("missing outgoing transition at {state}"))?;
                    accumulated += t.effect;
                    state = t.target.clone();
                    if accumulated != -(table.value_at(n) as i64) {
                        return Err(format!(
                            "accumulated {accumulated} at n={n}, expected {}\n{}",
                            -(table.value_at(n) as i64),
                            docn.to_text()
                        ));
                    }
                }
                checked += 1;
            }
            Ok("50 synthesized nets satisfy the accumulation contract up to n = 100".into())
        },
    );
}

#[test]
fn acceptance_05_gadget_identities() {
    criterion(5, "separation gadget language identities", 10.0, || {
        let c = gadget(GadgetName::C);
        // Deterministic companion for counter 0.
        let docn = Ocn::new(
            ["a", "b", "#"],
            ["d0", "d1"],
            ["d0"],
            [
                Transition::new("d0", "#", 0, "d1"),
                Transition::new("d1", "a", 1, "d1"),
                Transition::new("d1", "b", -1, "d1"),
            ],
            ["d1"],
        )
        .unwrap();
        let report = bounded_equiv(&c, &docn, EquivMode::Fixed(0), 8).map_err(|e| e.to_string())?;
        if !report.agrees() {
            return Err(format!("C vs companion at counter 0: {report:?}"));
        }

        // `# {a,b}*` as a zero-effect reference, language counter-free.
        let hash_free = Ocn::new(
            ["a", "b", "#"],
            ["r0", "r1"],
            ["r0"],
            [
                Transition::new("r0", "#", 0, "r1"),
                Transition::new("r1", "a", 0, "r1"),
                Transition::new("r1", "b", 0, "r1"),
            ],
            ["r1"],
        )
        .unwrap();
        for k in [1, 2] {
            let report =
                bounded_equiv(&c, &hash_free, EquivMode::Fixed(k), 8).map_err(|e| e.to_string())?;
            if !report.agrees() {
                return Err(format!("C at counter {k} is not # {{a,b}}*: {report:?}"));
            }
        }

        // B accepts nothing from counter 0.
        let b = gadget(GadgetName::B);
        let empty = Ocn::new(
            ["a", "b", "c", "#"],
            ["r"],
            ["r"],
            Vec::<Transition>::new(),
            Vec::<String>::new(),
        )
        .unwrap();
        let report =
            bounded_equiv(&b, &empty, EquivMode::Fixed(0), 6).map_err(|e| e.to_string())?;
        if !report.agrees() {
            return Err(format!("B at counter 0 not empty: {report:?}"));
        }
        Ok("C-vs-companion (len 8), C = #{a,b}* at k=1,2, B empty at 0".into())
    });
}

#[test]
fn acceptance_06_lcm_reduction_cross_check() {
    criterion(6, "reduction and finite-reach cross-check", 30.0, || {
        let machine_one = Lcm::parse("locations: l0\ncounters: z1\ntrans: l0 z1++ l0\n")
            .map_err(|e| e.to_string())?;
        let machine_two = Lcm::parse(concat!(
            "locations: l0 l1\n",
            "counters: z1 z2\n",
            "trans: l0 z1++ l1\n",
            "trans: l1 z1-- l0\n",
            "trans: l0 z2=0? l0\n",
            "trans: l1 z2++ l1\n",
        ))
        .map_err(|e| e.to_string())?;

        let mut mutant_total = 0usize;
        for (name, lcm) in [("one-counter", &machine_one), ("two-counter", &machine_two)] {
            let ocn = lcm_to_ocn(lcm, "l0").map_err(|e| e.to_string())?;
            let dfa = finite_reach_dfa(lcm, "l0", 3).map_err(|e| e.to_string())?;

            // Every reversed legal-run encoding within 12 tokens is rejected.
            let runs = enumerate_legal_runs(lcm, "l0", 3, 12);
            if runs.len() < 10 {
                return Err(format!("{name}: only {} legal runs enumerated", runs.len()));
            }
            let mut legal_words = Vec::new();
            for run in &runs {
                let encoding = encode_run(lcm, run).map_err(|e| e.to_string())?;
                legal_words.push(encoding.reversed);
            }
            legal_words.sort_by_key(|w| (w.len(), w.to_string()));
            legal_words.dedup();
            for word in &legal_words {
                if ocn.accepts(word, 0).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: legal encoding accepted: `{word}`"));
                }
            }

            // Mutations produce non-encodings; all must be accepted.
            let mut mutants: Vec<Word> = Vec::new();
            for word in &legal_words {
                let tokens = word.tokens();
                let mut candidates: Vec<Vec<String>> = Vec::new();
                for (i, tok) in tokens.iter().enumerate() {
                    if lcm.counter_id(tok).is_some() {
                        let mut dup = tokens.to_vec();
                        dup.insert(i, tok.clone());
                        candidates.push(dup);
                    }
                }
                for z in lcm.counters() {
                    let mut appended = tokens.to_vec();
                    appended.push(z.clone());
                    candidates.push(appended);
                    let mut prefixed = tokens.to_vec();
                    prefixed.insert(0, z.clone());
                    candidates.push(prefixed);
                }
                if !tokens.is_empty() {
                    candidates.push(tokens[..tokens.len() - 1].to_vec());
                }
                for cand in candidates {
                    let cand = Word::new(cand);
                    if !is_legal_encoding(lcm, "l0", &cand) && !mutants.contains(&cand) {
                        mutants.push(cand);
                    }
                }
            }
            if mutants.len() < 50 {
                return Err(format!("{name}: only {} mutants generated", mutants.len()));
            }
            for word in &mutants {
                if word.is_empty() {
                    continue;
                }
                if !ocn.accepts(word, 0).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: non-encoding rejected: `{word}`"));
                }
            }
            mutant_total += mutants.len();

            // On well-formed words within the bound, the deterministic
            // automaton is the exact complement.
            let words = well_formed_words(lcm, "l0", 3, 3, 12);
            for word in &words {
                let in_dfa = dfa.accepts(word, 0).map_err(|e| e.to_string())?;
                let in_ocn = ocn.accepts(word, 0).map_err(|e| e.to_string())?;
                if in_dfa == in_ocn {
                    return Err(format!(
                        "{name}: complement violated on `{word}` (dfa {in_dfa}, net {in_ocn})"
                    ));
                }
                if in_dfa != is_legal_encoding(lcm, "l0", word) {
                    return Err(format!("{name}: dfa verdict wrong on `{word}`"));
                }
            }
        }
        Ok(format!(
            "legal encodings rejected, {mutant_total} mutants accepted, complements agree"
        ))
    });
}

#[test]
fn acceptance_07_wrapper_identities() {
    criterion(7, "wrapper construction identities", 10.0, || {
        // A universal total net over {x}: one accepting state, free loop.
        let universal = Ocn::new(
            ["x"],
            ["s"],
            ["s"],
            [Transition::new("s", "x", 0, "s")],
            ["s"],
        )
        .unwrap();

        let b = wrap_forall(&universal).map_err(|e| e.to_string())?;
        // L(B, 0) = { # w : w in L(a, 0) } = # x*.
        let hash_xstar = Ocn::new(
            ["x", "#"],
            ["r0", "r1"],
            ["r0"],
            [
                Transition::new("r0", "#", 0, "r1"),
                Transition::new("r1", "x", 0, "r1"),
            ],
            ["r1"],
        )
        .unwrap();
        let report =
            bounded_equiv(&b, &hash_xstar, EquivMode::Fixed(0), 5).map_err(|e| e.to_string())?;
        if !report.agrees() {
            return Err(format!("wrap_forall at counter 0: {report:?}"));
        }
        // L(B, 1) = # (x + #)*.
        let hash_anystar = Ocn::new(
            ["x", "#"],
            ["r0", "r1"],
            ["r0"],
            [
                Transition::new("r0", "#", 0, "r1"),
                Transition::new("r1", "x", 0, "r1"),
                Transition::new("r1", "#", 0, "r1"),
            ],
            ["r1"],
        )
        .unwrap();
        let report =
            bounded_equiv(&b, &hash_anystar, EquivMode::Fixed(1), 5).map_err(|e| e.to_string())?;
        if !report.agrees() {
            return Err(format!("wrap_forall at counter 1: {report:?}"));
        }

        // Uniform wrapper, claim 1: with the universal total net,
        // L(B, c) = # (x + # + $)* for c in {0, 1}.
        let bu = wrap_uniform_lb(&universal).map_err(|e| e.to_string())?;
        let hash_all = Ocn::new(
            ["x", "#", "$"],
            ["r0", "r1"],
            ["r0"],
            [
                Transition::new("r0", "#", 0, "r1"),
                Transition::new("r1", "x", 0, "r1"),
                Transition::new("r1", "#", 0, "r1"),
                Transition::new("r1", "$", 0, "r1"),
            ],
            ["r1"],
        )
        .unwrap();
        for c in [0, 1] {
            let report =
                bounded_equiv(&bu, &hash_all, EquivMode::Fixed(c), 5).map_err(|e| e.to_string())?;
            if !report.agrees() {
                return Err(format!(
                    "wrap_uniform_lb universal at counter {c}: {report:?}"
                ));
            }
        }

        // Claims 2 and 3 on a surviving but never-accepting net.
        let surviving = Ocn::new(
            ["x"],
            ["s"],
            ["s"],
            [Transition::new("s", "x", 0, "s")],
            Vec::<String>::new(),
        )
        .unwrap();
        let bn = wrap_uniform_lb(&surviving).map_err(|e| e.to_string())?;
        for j in 0..=4usize {
            let mut tokens = vec!["#".to_owned()];
            tokens.extend(std::iter::repeat_n("x".to_owned(), j));
            let hash_w = Word::new(tokens.clone());
            if bn.accepts(&hash_w, 0).map_err(|e| e.to_string())? {
                return Err(format!("`{hash_w}` accepted at counter 0"));
            }
            if !bn.accepts(&hash_w, 1).map_err(|e| e.to_string())? {
                return Err(format!("`{hash_w}` rejected at counter 1"));
            }
            if j <= 3 {
                let mut with_dollar = tokens.clone();
                with_dollar.push("$".to_owned());
                let word = Word::new(with_dollar);
                if !bn.accepts(&word, 0).map_err(|e| e.to_string())? {
                    return Err(format!("`{word}` rejected at counter 0"));
                }
            }
        }
        // Words not opening with # are rejected at every counter.
        for c in 0..=3 {
            if bn
                .accepts(&Word::parse("x #"), c)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("`x #` accepted at counter {c}"));
            }
        }
        Ok("forall-wrapper and uniform-wrapper identities hold at lengths <= 5".into())
    });
}

#[test]
fn acceptance_08_regularization() {
    criterion(8, "unary regularization vs membership", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e6);
        for case in 0..50 {
            let ocn = random_unary_ocn(&mut rng, 5);
            for counter in 0..=10u64 {
                // Horizon 220 keeps even tail-less descriptions exact in the
                // tested range.
                let lang = unary_language_dfa(&ocn, counter, 220, 16).map_err(|e| e.to_string())?;
                let profile = accept_profile(&ocn, counter, 200).map_err(|e| e.to_string())?;
                for (n, &direct) in profile.iter().enumerate() {
                    if lang.contains(n as u64) != direct {
                        return Err(format!(
                            "case {case} counter {counter}: disagreement at n = {n}\n{}",
                            ocn.to_text()
                        ));
                    }
                }
                // Spot-check the sweep against plain membership calls.
                for n in [0usize, 1, 7, 63, 200] {
                    let direct = ocn
                        .accepts(&Word::repeated("u", n), counter)
                        .map_err(|e| e.to_string())?;
                    if profile[n] != direct {
                        return Err(format!(
                            "case {case} counter {counter}: profile wrong at n = {n}"
                        ));
                    }
                }
            }
        }
        // Regex component semantics against direct arithmetic.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e7);
        for _ in 0..100 {
            let offset = rand::Rng::random_range(&mut rng, 0..20u64);
            let period = rand::Rng::random_range(&mut rng, 0..6u64);
            let set = UnarySemilinear::new([(offset, period)]);
            for n in 0..=100u64 {
                let expected = if period == 0 {
                    n == offset
                } else {
                    n >= offset && (n - offset) % period == 0
                };
                if set.contains(n) != expected {
                    return Err(format!("component ({offset},{period}) wrong at n = {n}"));
                }
            }
        }
        Ok("50 nets x 11 counters agree up to n = 200; component arithmetic checked".into())
    });
}

#[test]
fn acceptance_09_monotonicity() {
    criterion(9, "monotonicity in the initial counter", 5.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x3010);
        let alphabets: [&[&str]; 3] = [&["a", "b"], &["a", "b", "c"], &["x", "y", "z", "w"]];
        for case in 0..500 {
            let alphabet = alphabets[case % alphabets.len()];
            let ocn = random_general_ocn(&mut rng, alphabet, 5);
            let word = random_word(&mut rng, alphabet, 6);
            let counter = rand::Rng::random_range(&mut rng, 0..5u64);
            let low = ocn.accepts(&word, counter).map_err(|e| e.to_string())?;
            let high = ocn.accepts(&word, counter + 1).map_err(|e| e.to_string())?;
            if low && !high {
                return Err(format!(
                    "monotonicity violated on `{word}` at counter {counter}\n{}",
                    ocn.to_text()
                ));
            }
        }
        Ok("500 random (net, word, counter) probes".into())
    });
}
