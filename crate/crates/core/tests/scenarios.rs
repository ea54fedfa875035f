mod common;

use common::all_scenarios;
use vkplate::residual::{ProbeSet, Tolerances};

#[test]
fn every_scenario_meets_its_expectation() {
    let tol = Tolerances::default();
    let mut bad = vec![];
    for sc in all_scenarios() {
        let probes = ProbeSet::generate(&sc.bundle, 30, 8, 7);
        let t = std::time::Instant::now();
        let out = sc.evaluate(&probes, &tol).unwrap();
        println!("== {} ({:.2}s)", sc.id, t.elapsed().as_secs_f64());
        for o in &out {
            println!(
                "  {:24} rel {:9.2e} raw {:9.2e} passed {} matched {} worst {:?}",
                o.record.equation, o.record.max_relative, o.record.max_raw, o.passed, o.matched, o.record.worst
            );
            if !o.matched {
                bad.push(format!("{}: {}", sc.id, o.record.equation));
            }
        }
    }
    assert!(bad.is_empty(), "unmatched: {bad:?}");
}
