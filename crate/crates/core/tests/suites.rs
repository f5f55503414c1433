use weightlab::suites::{all_suites, suite, Execution, SuiteConfig};

#[test]
fn suites_pass_on_another_seed() {
    let config = SuiteConfig { seed: 7, execution: Execution::default() };
    for (name, run) in all_suites() {
        let outcome = run(&config);
        assert!(outcome.passed(), "{outcome}");
        assert!(outcome.instances > 0, "{name}");
    }
}

#[test]
fn execution_mode_does_not_change_outcomes() {
    for name in ["gr-rees", "im-equivalence", "worked-examples"] {
        let run = suite(name).unwrap();
        let sequential = run(&SuiteConfig { seed: 3, execution: Execution::Sequential });
        let parallel = run(&SuiteConfig { seed: 3, execution: Execution::Parallel });
        assert_eq!(sequential, parallel, "{name}");
    }
}

#[test]
fn outcome_display() {
    let outcome = suite("wide-hypotheses").unwrap()(&SuiteConfig::new(0));
    assert_eq!(outcome.to_string(), "wide-hypotheses: ok (1 instances)");
}
