//! `omega demo …`: self-contained checks of the facts the library is built
//! around. Each exits 0 exactly when the fact verifies.

use clap::ValueEnum;
use omega_core::automata::{complement, equivalent, member, pinf_nba, projection, singleton_nba, Nba};
use omega_core::enumeration::up_sweep;
use omega_core::lifting::{lift, lift_witness};
use omega_core::metric::{ball_language, cauchy_demo};
use omega_core::trees::{
    bta_member, bta_projection, exists_path, tinf_bta, tree_lift, tree_witness, Bta, Node, RegularTree,
};
use omega_core::words::{Alphabet, UpWord};
use serde_json::json;

use crate::report::{CliResult, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// Singleton automata accept exactly their word.
    IsolatedPoints,
    /// No two-state automaton separates X_3, X_4, X_5.
    NonComplete,
    /// The radius-1/2 ball around 0^ω is {0^ω}.
    BallSingleton,
    /// Projection of the lifted automaton gives back the language.
    Lifting,
    /// ∃Path(ℙ_∞) and 𝕋_∞ on constant trees, and tree annotations.
    ExistsPath,
}

pub fn run(demo: Demo) -> CliResult<Report> {
    match demo {
        Demo::IsolatedPoints => isolated_points(),
        Demo::NonComplete => {
            let pairs = [(3, 4), (3, 5), (4, 5)];
            let report = cauchy_demo(2, &pairs)?;
            Ok(Report::new("demo non-complete")
                .input("k", 2)
                .input("pairs", pairs)
                .counter("automata_checked", report.pairs.iter().map(|p| p.checked).sum())
                .verdict(report.verified)
                .result(report))
        }
        Demo::BallSingleton => {
            let x = UpWord::parse(&Alphabet::binary(), "(0)w")?;
            let ball = ball_language(&x, 1)?;
            let holds = equivalent(&ball, &singleton_nba(&x))?;
            Ok(Report::new("demo ball-singleton")
                .input("x", x.to_string())
                .input("n", 1)
                .verdict(holds)
                .result(json!({ "ball_states": ball.states(), "equivalent_to_singleton": holds }))
                .witness("ball", ball.to_text()))
        }
        Demo::Lifting => lifting(),
        Demo::ExistsPath => exists_path_demo(),
    }
}

/// Ten words spread over the sweep `|u| ≤ 2, |v| ≤ 3`.
fn sampled(sweep: &[UpWord]) -> Vec<UpWord> {
    (0..10).map(|i| sweep[i * sweep.len() / 10].clone()).collect()
}

fn isolated_points() -> CliResult<Report> {
    let sweep = up_sweep(&Alphabet::binary(), 2, 3);
    let mut rows = Vec::new();
    let mut failures = 0u64;
    for x in sampled(&sweep) {
        let a = singleton_nba(&x);
        let mut accepted = 0;
        for y in &sweep {
            let m = member(&a, y)?.is_some();
            accepted += usize::from(m);
            if m != x.equals(y)? {
                failures += 1;
            }
        }
        rows.push(json!({ "x": x.to_string(), "states": a.states(), "accepted_in_sweep": accepted }));
    }
    Ok(Report::new("demo isolated-points")
        .input("sweep", "|u| <= 2, |v| <= 3")
        .counter("sweep_words", sweep.len() as u64)
        .counter("mismatches", failures)
        .verdict(failures == 0)
        .result(json!({ "words": rows })))
}

fn lifting() -> CliResult<Report> {
    let bin = Alphabet::binary();
    let pinf = pinf_nba();
    let suite: Vec<(&str, Nba)> = vec![
        ("infinitely many 1s", pinf.clone()),
        ("finitely many 1s", complement(&pinf)?),
        ("the word (01)^w", singleton_nba(&UpWord::parse(&bin, "(01)w")?)),
    ];
    let sweep = up_sweep(&bin, 2, 3);
    let mut rows = Vec::new();
    let mut failures = 0u64;
    for (name, a) in &suite {
        let l = lift(a);
        let back = projection(&l.lifted, 0)?;
        let mut witnesses = 0;
        for x in &sweep {
            let m = member(a, x)?.is_some();
            if m != member(&back, x)?.is_some() {
                failures += 1;
            }
            if m {
                witnesses += 1;
                if !lift_witness(&l, x)?.is_in_pinf()? {
                    failures += 1;
                }
            }
        }
        rows.push(json!({ "language": name, "states": a.states(), "witnesses_checked": witnesses }));
    }
    Ok(Report::new("demo lifting")
        .input("sweep", "|u| <= 2, |v| <= 3")
        .counter("mismatches", failures)
        .verdict(failures == 0)
        .result(json!({ "automata": rows })))
}

fn exists_path_demo() -> CliResult<Report> {
    let bin = Alphabet::binary();
    let ones = RegularTree::constant(&bin, 1)?;
    let zeros = RegularTree::constant(&bin, 0)?;
    let spine = RegularTree::new(
        &bin,
        0,
        vec![
            Node { label: 0, left: 0, right: 1 },
            Node { label: 1, left: 1, right: 1 },
        ],
    )?;
    let e = exists_path(&pinf_nba());
    let t = tinf_bta();
    let accepts = |a: &Bta, x: &RegularTree| bta_member(a, x).map(|r| r.is_some());
    let facts = json!({
        "ones_in_exists_path": accepts(&e, &ones)?,
        "ones_in_tinf": accepts(&t, &ones)?,
        "zeros_in_exists_path": accepts(&e, &zeros)?,
        "zeros_in_tinf": accepts(&t, &zeros)?,
        "zero_left_spine_in_exists_path": accepts(&e, &spine)?,
        "zero_left_spine_in_tinf": accepts(&t, &spine)?,
    });
    let expected = json!({
        "ones_in_exists_path": true,
        "ones_in_tinf": true,
        "zeros_in_exists_path": false,
        "zeros_in_tinf": false,
        "zero_left_spine_in_exists_path": true,
        "zero_left_spine_in_tinf": false,
    });
    let alpha = tree_witness(&e, &ones)?;
    let alpha_in_tinf = accepts(&t, &alpha)?;
    let back = bta_projection(&tree_lift(&e), 0)?;
    let mut projection_exact = true;
    for x in [&ones, &zeros, &spine] {
        projection_exact &= accepts(&back, x)? == accepts(&e, x)?;
    }
    let holds = facts == expected && alpha_in_tinf && projection_exact;
    Ok(Report::new("demo exists-path")
        .verdict(holds)
        .result(json!({
            "memberships": facts,
            "annotation_in_tinf": alpha_in_tinf,
            "lift_projection_exact": projection_exact,
        }))
        .witness("annotation", alpha))
}
