//! One PASS/FAIL line per acceptance criterion.

use std::time::{Duration, Instant};

use mwk::suites::run_suite;

const SEED: u64 = 42;

const CRITERIA: [(u32, &str, u64); 13] = [
    (1, "relations and elementary identities", 60),
    (2, "GW <-> K^MW_0 round trip", 120),
    (3, "residue goldens", 120),
    (4, "twisted residue uniformizer independence", 120),
    (5, "split exactness", 120),
    (6, "reciprocity", 120),
    (7, "Scharlau agreement", 120),
    (8, "complex property on P1", 120),
    (9, "mu_f goldens", 120),
    (10, "homotopy invariance on A1", 120),
    (11, "P1 slice: deg~ and Euler classes", 120),
    (12, "structure over finite fields", 120),
    (13, "graded commutativity and Leibniz", 120),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (n, label, limit) in CRITERIA {
        let start = Instant::now();
        let report = run_suite(&format!("acceptance-{n}"), SEED);
        let took = start.elapsed();
        let (ok, detail) = match &report {
            Ok(r) => (r.ok() && took <= Duration::from_secs(limit), r.to_string()),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "criterion {n:>2} {}: {label} ({:.2}s, limit {limit}s) {detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
