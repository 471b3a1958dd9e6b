use super::*;
use crate::polynomial::Monomial;

fn ctx() -> VerifyContext {
    VerifyContext::default()
}

#[test]
fn all_suites_pass_at_small_n() {
    let c = ctx();
    for r in run_suites(&c, &Suite::ALL, 5, false) {
        assert_eq!(r.status, Status::Pass, "{}", summary(std::slice::from_ref(&r)));
        assert!(r.wall_ms.is_none());
    }
}

#[test]
fn reports_are_deterministic_and_ordered() {
    let c = ctx();
    let suites = [Suite::Routes, Suite::Symmetry, Suite::Triangle];
    let a = run_suites(&c, &suites, 4, false);
    let b = run_suites(&VerifyContext::new(Execution::Sequential), &suites, 4, false);
    assert_eq!(a, b);
    let ids: Vec<&str> = a.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["routes", "symmetry", "triangle"]);
    let json = serde_json::to_string(&a).unwrap();
    let back: Vec<CheckReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}

#[test]
fn timings_only_on_request() {
    let r = run_suites(&ctx(), &[Suite::Symmetry], 2, true);
    assert!(r[0].wall_ms.is_some());
    assert!(serde_json::to_string(&r).unwrap().contains("wall_ms"));
}

#[test]
fn clamping_and_skipping() {
    let c = ctx();
    let r = run_suite(&c, Suite::Triangle, 9);
    assert_eq!(r.n_range, (1, 6));
    assert!(r.details.iter().any(|d| d.contains("clamped")));
    let r = run_suite(&c, Suite::Symmetry, 0);
    assert_eq!(r.status, Status::Skipped);
    assert_eq!(exit_code(&[r]), 0);
}

#[test]
fn suite_ids_parse() {
    for s in Suite::ALL {
        assert_eq!(s.id().parse::<Suite>().unwrap(), s);
    }
    assert!("nosuch".parse::<Suite>().is_err());
}

#[test]
fn printed_examples_in_details() {
    let c = ctx();
    let tri = run_suite(&c, Suite::Triangle, 5);
    assert!(tri.details.contains(&"  1 3 2".to_owned()));
    assert!(tri.details.contains(&"  . 10 50 86 36".to_owned()));
    let roots = run_suite(&c, Suite::RealRoots, 3);
    assert!(roots.details.iter().any(|d| d.contains("DD(z,1,1,1) = z^2 + 7 z + 5")));
    assert!(roots
        .details
        .iter()
        .any(|d| d.contains("n=2 DD(z,z,z,1) = 3 z, zero root multiplicity 1")));
    let dist = run_suite(&c, Suite::Distributions, 5);
    assert!(dist.details.iter().any(|d| d.contains("(i,j)=(k-1-r,c)")));
    assert!(dist.details.contains(&"n=5 (y,ybar), total 399:".to_owned()));
    let sync = run_suite(&c, Suite::Synchronous, 3);
    assert!(sync.details.contains(&"n=2: 2 synchronous intervals".to_owned()));
    let deg = run_suite(&c, Suite::Degrees, 3);
    assert!(deg.details.contains(&"n=3: 12 intervals of (x,y,ybar)-degree n-1".to_owned()));
    let conj = run_suite(&c, Suite::Conjectures, 3);
    assert!(conj.details.contains(&"n=2: Motzkin set of size 1".to_owned()));
}

/// Every single-coefficient corruption of `DD_n`, by changing an existing
/// coefficient or adding a new monomial, fails at least one suite.
#[test]
fn corruptions_are_caught() {
    let c = ctx();
    for n in 1..=4 {
        let dd = c.dd(n).clone();
        let mut variants = Vec::new();
        for (m, _) in dd.terms() {
            for delta in [-1, 1, 7] {
                let mut p = dd.clone();
                p.add_term(*m, delta.into());
                variants.push(p);
            }
        }
        let mut fresh = dd.clone();
        fresh.add_term(Monomial([n as u8, 0, 0, 0, 0, 0, 0, 0]), 1.into());
        variants.push(fresh);
        for p in variants {
            let bad = c.with_dd_override(n, p.clone());
            let reports = run_suites(&bad, &Suite::ALL, n, false);
            assert_eq!(exit_code(&reports), 1, "corruption {p} at n={n} not caught");
            let failed = reports.iter().find(|r| r.status == Status::Fail).unwrap();
            assert!(failed.witness.is_some());
        }
    }
}

#[test]
fn reference_sequences_agree_with_brute_force_counts() {
    let c = ctx();
    for n in 1..=6 {
        assert_eq!(c.records(n).len() as u64, ReferenceSequences::INTERVALS[n - 1]);
    }
}
