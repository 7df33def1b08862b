//! The acceptance suite: one line per criterion, then a summary. Set
//! `ACCEPTANCE_FULL=1` to pair every enumerated automaton with every other
//! one in the closure-algebra sweep (several minutes on one core).

mod common;

use std::time::{Duration, Instant};

use common::{all_trees, bin, member_oracle, random_bta, random_nba, random_tree, rng, tree_member_oracle, up};
use omega_core::automata::{
    buchi_decomposition, complement, equivalent, intersection, member, nfa_member, nfa_sample, pinf_nba,
    projection, singleton_nba, union, Nba,
};
use omega_core::choquet::{play_scripted, Adversary, NestedPinf, ShrinkingClopens, StabilizingSingleton};
use omega_core::enumeration::{canonical, raw_count, raw_marks, up_sweep, Structure};
use omega_core::lifting::{lift, lift_witness};
use omega_core::metric::{ball_language, cauchy_demo, delta, distinct_languages, DistanceResult};
use omega_core::trees::choquet::{
    play_tree_scripted, ExistsPathRefinements, TreeAdversary, TreeMove, TreeScripted, TreeShrinkingClopens,
    TreeStabilizingSingleton,
};
use omega_core::trees::{
    bta_member, bta_projection, clopen_bta, exists_path, tinf_bta, tree_lift, tree_prefix, tree_witness, Bta, Node,
    RegularTree,
};
use omega_core::words::{Dyadic, FiniteWord, UpWord};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn accepts(a: &Nba, x: &UpWord) -> Result<bool, String> {
    Ok(ok(member(a, x))?.is_some())
}

fn tree_accepts(a: &Bta, t: &RegularTree) -> Result<bool, String> {
    Ok(ok(bta_member(a, t))?.is_some())
}

/// A canonical word with `|u| + |v| <= 6`.
fn random_word(r: &mut impl Rng) -> UpWord {
    let u = r.gen_range(0..=5);
    let v = r.gen_range(1..=6 - u);
    let letters = |n: usize, r: &mut dyn rand::RngCore| (0..n).map(|_| (r.next_u32() % 2) as usize).collect::<Vec<_>>();
    let (pu, pv) = (letters(u, r), letters(v, r));
    UpWord::new(&bin(), pu, pv).unwrap()
}

fn metric_axioms() -> Outcome {
    let mut r = rng(1);
    let mut exact_triples = 0;
    for _ in 0..50 {
        let (x, y, z) = (random_word(&mut r), random_word(&mut r), random_word(&mut r));
        let d = |a: &UpWord, b: &UpWord| ok(delta(a, b, 3));
        check(d(&x, &x)? == DistanceResult::Exact(Dyadic::Zero), || format!("δ({x},{x}) ≠ 0"))?;
        let (xy, yz, xz) = (d(&x, &y)?, d(&y, &z)?, d(&x, &z)?);
        for (a, b, dab) in [(&x, &y, xy), (&y, &z, yz), (&x, &z, xz)] {
            check(dab == d(b, a)?, || format!("δ({a},{b}) is not symmetric"))?;
            check((dab == DistanceResult::Exact(Dyadic::Zero)) == ok(a.equals(b))?, || {
                format!("identity fails for {a}, {b}")
            })?;
        }
        if let (Some(xy), Some(yz), Some(xz)) = (xy.exact(), yz.exact(), xz.exact()) {
            exact_triples += 1;
            check(xz.le_sum(xy, yz), || format!("triangle fails on {x}, {y}, {z}"))?;
            check(xz <= xy.max(yz), || format!("max inequality fails on {x}, {y}, {z}"))?;
        }
    }
    Ok(format!("50 triples, {exact_triples} with all three distances exact"))
}

fn constant_words_at_one_half() -> Outcome {
    let (x, y) = (up("(0)w"), up("(1)w"));
    let mut separators = 0;
    let mut checked = 0;
    for code in 0..Structure::count(1, 2) {
        let t = Structure::from_code(1, 2, code);
        for (i, f) in raw_marks(1) {
            checked += 1;
            let a = t.to_nba(&bin(), i, f);
            if member_oracle(&a, &x) != member_oracle(&a, &y) {
                separators += 1;
            }
        }
    }
    check(checked == 16, || format!("{checked} one-state automata instead of 16"))?;
    check(separators > 0, || "no one-state separator".into())?;
    let d = ok(delta(&x, &y, 1))?;
    check(d == DistanceResult::Exact(Dyadic::pow(1)), || format!("δ = {d:?}"))?;
    Ok(format!("δ = 1/2; {separators} of 16 one-state automata separate"))
}

fn no_small_separator_for_xn() -> Outcome {
    let pairs = [(3, 4), (3, 5), (4, 5)];
    let report = ok(cauchy_demo(2, &pairs))?;
    for p in &report.pairs {
        check(p.checked == raw_count(1, 2) + raw_count(2, 2), || format!("{:?}: {} checked", p.pair, p.checked))?;
        check(!p.separator_found, || format!("separator for {:?}: {:?}", p.pair, p.separator))?;
    }
    // the same sweep through the block oracle
    for (n, m) in pairs {
        let (x, y) = (ok(UpWord::xn(n))?, ok(UpWord::xn(m))?);
        for k in 1..=2 {
            for code in 0..Structure::count(k, 2) {
                let t = Structure::from_code(k, 2, code);
                for (i, f) in raw_marks(k) {
                    let a = t.to_nba(&bin(), i, f);
                    check(member_oracle(&a, &x) == member_oracle(&a, &y), || {
                        format!("oracle finds a separator of X_{n}, X_{m}:\n{}", a.to_text())
                    })?;
                }
            }
        }
    }
    check(report.verified, || "report not verified".into())?;
    Ok("pairs (3,4), (3,5), (4,5): 4112 automata each, no separator".into())
}

fn ball_is_singleton() -> Outcome {
    let x = up("(0)w");
    let ball = ok(ball_language(&x, 1))?;
    check(ok(equivalent(&ball, &singleton_nba(&x)))?, || "ball differs from {0^ω}".into())?;
    Ok(format!("ball(0^ω, 1) has {} state(s), equivalent to the singleton", ball.states()))
}

fn closure_algebra() -> Outcome {
    let automata: Vec<Nba> = (1..=2).flat_map(|k| canonical(k, 2)).map(|s| s.to_nba(&bin())).collect();
    let words = up_sweep(&bin(), 2, 3);
    let prints: Vec<Vec<bool>> = automata.iter().map(|a| words.iter().map(|x| member_oracle(a, x)).collect()).collect();
    let mut max_states = 0;
    for (a, print) in automata.iter().zip(&prints) {
        let c = ok(complement(a))?;
        max_states = max_states.max(c.states());
        for (x, &m) in words.iter().zip(print) {
            check(accepts(&c, x)? != m, || format!("complement wrong on {x} for\n{}", a.to_text()))?;
        }
        let cc = ok(complement(&c))?;
        check(ok(equivalent(&cc, a))?, || format!("double complement differs for\n{}", a.to_text()))?;
    }
    let full = std::env::var("ACCEPTANCE_FULL").is_ok_and(|v| v == "1");
    let partners: Vec<(Nba, Vec<bool>)> = if full {
        automata.iter().cloned().zip(prints.iter().cloned()).collect()
    } else {
        ok(distinct_languages(&bin(), 2))?
            .into_iter()
            .map(|a| {
                let p = words.iter().map(|x| member_oracle(&a, x)).collect();
                (a, p)
            })
            .collect()
    };
    let mut pairs = 0u64;
    for (a, pa) in automata.iter().zip(&prints) {
        for (b, pb) in &partners {
            for (l, r, pl, pr) in [(a, b, pa, pb), (b, a, pb, pa)] {
                pairs += 1;
                let u = ok(union(l, r))?;
                let i = ok(intersection(l, r))?;
                for (k, x) in words.iter().enumerate() {
                    check(accepts(&u, x)? == (pl[k] || pr[k]), || format!("union wrong on {x}"))?;
                    check(accepts(&i, x)? == (pl[k] && pr[k]), || format!("intersection wrong on {x}"))?;
                }
            }
        }
    }
    let scope = if full { "all pairs" } else { "each paired with every ≤2-state language" };
    Ok(format!(
        "{} automata × {} words, {pairs} ordered pairs ({scope}); largest complement {max_states} states",
        automata.len(),
        words.len()
    ))
}

fn twenty_automata() -> Vec<Nba> {
    let mut r = rng(6);
    (0..20)
        .map(|_| {
            let k = r.gen_range(1..=3);
            let seed = r.gen();
            random_nba(&mut rng(seed), &bin(), k, 0.35)
        })
        .collect()
}

fn decomposition() -> Outcome {
    let mut sampled = 0;
    let mut factored = 0;
    for a in twenty_automata() {
        let pairs = buchi_decomposition(&a);
        for p in &pairs {
            for u in nfa_sample(&p.prefixes, 4) {
                for v in nfa_sample(&p.periods, 4) {
                    sampled += 1;
                    let x = ok(UpWord::from_words(&u, &v))?;
                    check(accepts(&a, &x)?, || format!("{x} from pair {} rejected", p.state))?;
                }
            }
        }
        let lassos: Vec<_> = up_sweep(&bin(), 3, 3)
            .into_iter()
            .filter_map(|x| member(&a, &x).ok().flatten())
            .take(20)
            .collect();
        for run in lassos {
            let hit = run.cycle.iter().enumerate().any(|(j, &q)| {
                if !a.is_accepting(q) {
                    return false;
                }
                let mut u = run.stem_letters.clone();
                u.extend_from_slice(&run.cycle_letters[..j]);
                let mut v = run.cycle_letters[j..].to_vec();
                v.extend_from_slice(&run.cycle_letters[..j]);
                let (u, v) = (FiniteWord::new(&bin(), u).unwrap(), FiniteWord::new(&bin(), v).unwrap());
                pairs.iter().any(|p| {
                    p.state == q
                        && nfa_member(&p.prefixes, &u).unwrap()
                        && nfa_member(&p.periods, &v).unwrap()
                        && UpWord::from_words(&u, &v).unwrap().equals(&run.word).unwrap()
                })
            });
            check(hit, || format!("{} does not factor through a pair", run.word))?;
            factored += 1;
        }
    }
    Ok(format!("{sampled} sampled pair words accepted, {factored} lasso words factored"))
}

fn lifting() -> Outcome {
    let words = up_sweep(&bin(), 2, 3);
    let mut witnesses = 0;
    for a in twenty_automata() {
        let l = lift(&a);
        let back = ok(projection(&l.lifted, 0))?;
        for x in &words {
            let m = member_oracle(&a, x);
            check(accepts(&back, x)? == m, || format!("projection differs on {x}"))?;
            if m {
                let alpha = ok(lift_witness(&l, x))?;
                check(ok(alpha.is_in_pinf())?, || format!("witness {alpha} for {x} not in ℙ_∞"))?;
                witnesses += 1;
            }
        }
    }
    Ok(format!("20 automata × {} words, {witnesses} witnesses in ℙ_∞", words.len()))
}

fn word_game() -> Outcome {
    let adversaries: Vec<Box<dyn Adversary>> = vec![
        Box::new(ShrinkingClopens),
        Box::new(StabilizingSingleton { word: up("0(01)w") }),
        Box::new(NestedPinf),
    ];
    let mut names = Vec::new();
    for mut adv in adversaries {
        let r = ok(play_scripted(adv.as_mut(), &bin(), 8))?;
        check(r.rounds_played == 8, || format!("{}: {} rounds", r.adversary, r.rounds_played))?;
        check(r.records.iter().all(|x| x.sigma_in_response), || format!("{}: σ_i ∉ V_i", r.adversary))?;
        check(r.prefix_coherence && r.annotation_growth, || format!("{}: prefix or annotation invariant", r.adversary))?;
        check(r.certificate_in_languages.iter().all(|&b| b), || format!("{}: certificate outside some L_n", r.adversary))?;
        check(r.warnings.is_empty(), || format!("{}: {:?}", r.adversary, r.warnings))?;
        check(r.verified, || format!("{}: not verified", r.adversary))?;
        names.push(format!("{} → {}", r.adversary, r.certificate.unwrap()));
    }
    Ok(names.join("; "))
}

fn tree_membership_oracle() -> Outcome {
    let mut r = rng(9);
    let mut accepted = 0;
    for i in 0..100 {
        let s = r.gen_range(1..=4);
        let q = r.gen_range(1..=12 / s);
        let t = random_tree(&mut r, s);
        let a = random_bta(&mut r, q, 2);
        let expected = tree_member_oracle(&a, &t);
        check(tree_accepts(&a, &t)? == expected, || format!("instance {i}: |S|={s}, |Q|={q}"))?;
        accepted += usize::from(expected);
    }
    Ok(format!("100 instances, {accepted} accepted"))
}

fn tree_constructions() -> Outcome {
    let ones = ok(RegularTree::constant(&bin(), 1))?;
    let zeros = ok(RegularTree::constant(&bin(), 0))?;
    let e = exists_path(&pinf_nba());
    let t = tinf_bta();
    check(tree_accepts(&e, &ones)? && tree_accepts(&t, &ones)?, || "constant 1 rejected".into())?;
    check(!tree_accepts(&e, &zeros)? && !tree_accepts(&t, &zeros)?, || "constant 0 accepted".into())?;
    let suite: Vec<RegularTree> = (1..=3).flat_map(all_trees).collect();
    let mut witnesses = 0;
    for a in [&e, &t] {
        let back = ok(bta_projection(&tree_lift(a), 0))?;
        for x in &suite {
            let m = tree_accepts(a, x)?;
            check(tree_accepts(&back, x)? == m, || format!("projection differs on\n{}", x.to_text()))?;
            if m {
                let alpha = ok(tree_witness(a, x))?;
                check(tree_accepts(&t, &alpha)?, || format!("annotation outside 𝕋_∞ for\n{}", x.to_text()))?;
                witnesses += 1;
            }
        }
    }
    Ok(format!("{} trees with ≤3 states, {witnesses} annotations in 𝕋_∞", suite.len()))
}

fn tree_game() -> Outcome {
    let ones = ok(RegularTree::constant(&bin(), 1))?;
    let fixed = ok(RegularTree::new(
        &bin(),
        0,
        vec![Node { label: 1, left: 1, right: 0 }, Node { label: 0, left: 0, right: 1 }],
    ))?;
    let script = TreeScripted {
        moves: (0..5)
            .map(|i| TreeMove {
                tree: ones.clone(),
                language: if i == 0 { tinf_bta() } else { clopen_bta(&tree_prefix(&ones, i)) },
            })
            .collect(),
    };
    let adversaries: Vec<Box<dyn TreeAdversary>> = vec![
        Box::new(script),
        Box::new(TreeShrinkingClopens),
        Box::new(TreeStabilizingSingleton { tree: fixed }),
        Box::new(ExistsPathRefinements),
    ];
    let mut names = Vec::new();
    for mut adv in adversaries {
        let r = ok(play_tree_scripted(adv.as_mut(), &bin(), 5))?;
        check(r.rounds_played == 5, || format!("{}: {} rounds", r.adversary, r.rounds_played))?;
        check(r.records.iter().all(|x| x.tree_in_response), || format!("{}: t_i ∉ V_i", r.adversary))?;
        check(r.prefix_coherence && r.annotation_levels, || format!("{}: level invariant", r.adversary))?;
        check(r.certificate_in_languages.iter().all(|&b| b), || format!("{}: certificate outside some L_n", r.adversary))?;
        check(r.verified, || format!("{}: not verified", r.adversary))?;
        names.push(format!("{} ({} states)", r.adversary, r.records.last().unwrap().response_states));
    }
    Ok(names.join("; "))
}

fn isolated_points() -> Outcome {
    let words = up_sweep(&bin(), 2, 3);
    for i in 0..10 {
        let x = &words[i * words.len() / 10];
        let a = singleton_nba(x);
        for y in &words {
            let eq = ok(x.equals(y))?;
            check(accepts(&a, y)? == eq && member_oracle(&a, y) == eq, || format!("singleton({x}) on {y}"))?;
        }
    }
    Ok(format!("10 words × {} sweep words", words.len()))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("metric axioms", Duration::from_secs(300), metric_axioms),
        ("δ(0^ω, 1^ω) = 1/2", Duration::from_secs(1), constant_words_at_one_half),
        ("no ≤2-state separator of X_n, X_m", Duration::from_secs(30), no_small_separator_for_xn),
        ("ball(0^ω, 1) = {0^ω}", Duration::from_secs(10), ball_is_singleton),
        ("closure algebra", Duration::from_secs(600), closure_algebra),
        ("Büchi decomposition", Duration::from_secs(120), decomposition),
        ("lifting", Duration::from_secs(120), lifting),
        ("word Choquet game", Duration::from_secs(180), word_game),
        ("tree membership oracle", Duration::from_secs(300), tree_membership_oracle),
        ("tree constructions", Duration::from_secs(120), tree_constructions),
        ("tree Choquet game", Duration::from_secs(180), tree_game),
        ("isolated points", Duration::from_secs(30), isolated_points),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if took > limit => ("FAIL", format!("took {took:.2?}, limit {limit:?}")),
            Ok(detail) => ("PASS", detail),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name}: {detail} [{took:.2?}]", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
