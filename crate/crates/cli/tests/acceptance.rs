//! One line per acceptance criterion. Exits nonzero when a criterion fails
//! that is not a recorded deviation; with `ACCEPTANCE_STRICT=1` every
//! failure counts.

mod common;

use std::process::ExitCode;

use weightlab::liealg::{bch_product, check_wide_integration_hypotheses, GradedNilpotentLie};
use weightlab::poly::{int, parse, Polynomial, Rational};
use weightlab::suites::examples::{
    clean_distribution, cubic, heisenberg, parabola, plane13, sl2_borel,
};
use weightlab::suites::{suite, SuiteConfig};
use weightlab::weighting::{
    check_clean_distribution, check_weighted_morphism, filtration_degree, filtration_generators,
};
use weightlab::Degree;

const SEED: u64 = 0;

/// Criteria whose literal statement contradicts the definitions it is
/// built on; the checks below test the literal statement.
const DEVIATIONS: &[(u32, &str)] = &[
    (2, "y^2 lies in C_(4) but has filtration degree 6"),
    (8, "x∂x vanishes on the y-axis, so dim(D_p + T_pN) is constant there"),
];

struct Line {
    number: u32,
    title: &'static str,
    result: Result<String, String>,
}

fn suite_check(name: &str, minimum: usize) -> Result<String, String> {
    let run = suite(name).ok_or_else(|| format!("no suite {name}"))?;
    let outcome = run(&SuiteConfig::new(SEED));
    if outcome.instances < minimum {
        return Err(format!("{} instances, need {minimum}", outcome.instances));
    }
    if outcome.passed() {
        Ok(format!("{name}: {} instances, seed {SEED}", outcome.instances))
    } else {
        Err(format!(
            "{name}: {}/{} failed; first: {}",
            outcome.failures.len(),
            outcome.instances,
            outcome.failures[0]
        ))
    }
}

fn p(s: &str) -> Polynomial {
    parse(s).expect("polynomial")
}

fn all_ok(parts: Vec<(String, bool)>) -> Result<String, String> {
    let text = parts
        .iter()
        .map(|(label, ok)| format!("{label} {}", if *ok { "ok" } else { "FAILS" }))
        .collect::<Vec<_>>()
        .join("; ");
    if parts.iter().all(|(_, ok)| *ok) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn example_fidelity() -> Result<String, String> {
    let chart = plane13();
    let generators = filtration_generators(&chart, 4);
    let names: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    let expected_generators = names == ["x^4", "x*y", "y^2"];
    let mut off_degree = Vec::new();
    for g in &generators {
        let d = filtration_degree(&chart, g).map_err(|e| e.to_string())?;
        if d != Degree::Finite(4) {
            off_degree.push(format!("{g} has degree {d}"));
        }
    }
    let mut uncovered = Vec::new();
    for a in 0..=8u32 {
        for b in 0..=4u32 {
            let m = p(&format!("x^{a}*y^{b}"));
            let in_c4 = filtration_degree(&chart, &m).map_err(|e| e.to_string())? >= Degree::Finite(4);
            let covered = generators.iter().any(|g| {
                let e = g.named_terms()[0].0.clone();
                e.get("x").copied().unwrap_or(0) <= a && e.get("y").copied().unwrap_or(0) <= b
            });
            if in_c4 && !covered {
                uncovered.push(m.to_string());
            }
        }
    }
    let parabola = check_weighted_morphism(&parabola()).map_err(|e| e.to_string())?;
    let witness = parabola.failures.first().map(|w| w.to_string());
    let cubic = check_weighted_morphism(&cubic()).map_err(|e| e.to_string())?;
    let exact = if off_degree.is_empty() {
        "every generator has degree exactly 4".to_string()
    } else {
        format!("every generator has degree exactly 4 ({})", off_degree.join(", "))
    };
    all_ok(vec![
        (format!("C_(4) generated by {}", names.join(", ")), expected_generators),
        (exact, off_degree.is_empty()),
        ("C_(4) monomials are multiples of a generator".into(), uncovered.is_empty()),
        (format!("parabola rejected with {witness:?}"), !parabola.holds() && witness.as_deref() == Some("y: degree 2 < 3")),
        ("cubic accepted".into(), cubic.holds()),
    ])
}

fn bch_and_group_laws() -> Result<String, String> {
    let g = GradedNilpotentLie::new(heisenberg(vec![-1, -1, -2])).map_err(|e| e.to_string())?;
    let xy = bch_product(&g, &[int(1), int(0), int(0)].map(Polynomial::constant), &[int(0), int(1), int(0)].map(Polynomial::constant))
        .map_err(|e| e.to_string())?;
    let half = Polynomial::constant(Rational::new(1.into(), 2.into()));
    let expected = vec![Polynomial::one(), Polynomial::one(), half];
    if xy != expected {
        return Err(format!("(1,0,0)·(0,1,0) = {xy:?}"));
    }
    let laws = suite_check("nilpotent-fibres", 1)?;
    Ok(format!("(1,0,0)·(0,1,0) = (1, 1, 1/2); {laws}"))
}

fn cleanness_example() -> Result<String, String> {
    let (chart, d) = clean_distribution();
    let pt = |x: i64, y: i64| vec![int(x), int(y)];
    let x_axis = check_clean_distribution(&d, &chart, &["y".into()], &[pt(0, 0), pt(1, 0), pt(2, 0)])
        .map_err(|e| e.to_string())?;
    let y_axis = check_clean_distribution(&d, &chart, &["x".into()], &[pt(0, 0), pt(0, 1)])
        .map_err(|e| e.to_string())?;
    all_ok(vec![
        (format!("x-axis accepted (dims {:?})", x_axis.dimensions), x_axis.holds()),
        (format!("y-axis rejected (dims {:?})", y_axis.dimensions), !y_axis.holds()),
    ])
}

fn wide_hypotheses() -> Result<String, String> {
    let consts = |v: &[i64]| v.iter().map(|&c| Polynomial::integer(c)).collect::<Vec<_>>();
    let sl2 = check_wide_integration_hypotheses(
        &sl2_borel(),
        &[vec![0, 1, 2]],
        &[consts(&[1, 0, 0]), consts(&[0, 1, 0])],
        &[vec![]],
    )
    .map_err(|e| e.to_string())?;
    let h = check_wide_integration_hypotheses(
        &heisenberg(vec![-1, -1, -2]),
        &[vec![1]],
        &[consts(&[1, 0, 0])],
        &[vec![]],
    )
    .map_err(|e| e.to_string())?;
    let witness = h.bracket_failures.first().map(|w| w.to_string());
    all_ok(vec![
        ("sl2 Borel passes (a) and (b)".into(), sl2.bracket_condition() && sl2.constant_rank_condition()),
        (format!("Heisenberg fails (a) with {witness:?}"), !h.bracket_condition() && witness.as_deref() == Some("level 1: [β1, σ2] has σ3 component 1")),
    ])
}

fn cli_determinism() -> Result<String, String> {
    let mut bad = Vec::new();
    for (name, args) in common::CASES {
        let first = common::transcript(args);
        let second = common::transcript(args);
        let golden = common::read(&common::golden_path(name));
        if first != second || golden.as_deref() != Some(first.as_str()) {
            bad.push(*name);
        }
    }
    if bad.is_empty() {
        Ok(format!("{} golden transcripts byte-identical over two runs", common::CASES.len()))
    } else {
        Err(format!("mismatched: {}", bad.join(", ")))
    }
}

fn main() -> ExitCode {
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some();
    let lines = vec![
        Line { number: 1, title: "degree oracle", result: suite_check("degree-oracle", 2500) },
        Line { number: 2, title: "example fidelity", result: example_fidelity() },
        Line { number: 3, title: "gr/Rees laws", result: suite_check("gr-rees", 300) },
        Line { number: 4, title: "tangent-lift identities", result: suite_check("tangent-lifts", 500) },
        Line { number: 5, title: "three-way IM equivalence", result: suite_check("im-equivalence", 120) },
        Line { number: 6, title: "limit algebroids", result: suite_check("limit-algebroids", 1) },
        Line { number: 7, title: "nilpotent integration fibres", result: bch_and_group_laws() },
        Line { number: 8, title: "cleanness example", result: cleanness_example() },
        Line { number: 9, title: "wide-integration hypotheses", result: wide_hypotheses() },
        Line { number: 10, title: "CLI determinism", result: cli_determinism() },
    ];
    let mut unexpected = 0;
    for line in &lines {
        let deviation = DEVIATIONS.iter().find(|(n, _)| *n == line.number).map(|(_, why)| *why);
        match (&line.result, deviation) {
            (Ok(detail), None) => println!("criterion {:>2} {}: PASS (exact) {detail}", line.number, line.title),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("criterion {:>2} {}: PASS (exact, but listed as a deviation) {detail}", line.number, line.title);
            }
            (Err(detail), Some(why)) => {
                if strict {
                    unexpected += 1;
                }
                println!("criterion {:>2} {}: FAIL (exact; known deviation: {why}) {detail}", line.number, line.title);
            }
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {:>2} {}: FAIL (exact) {detail}", line.number, line.title);
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
