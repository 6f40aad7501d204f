//! Acceptance suite: every criterion runs at its pinned configuration with
//! exact (zero-tolerance) equality and prints one pass/fail line.
//!
//! The criteria:
//!   1. presentation soundness for n in {2,3,4}, both kinds
//!   2. Hopf axioms on generators and 100 seeded random elements, n in {2,3}
//!   3. pairing recursions vs expansion oracle up to height 4, n in {2,3}
//!   4. graded ranks equal partition counts up to height 5, n = 3
//!   5. double reconstruction for n in {2,3}, kinds gl and sl
//!   6. quasi-R-matrix commutation identities up to height 3, n in {2,3}
//!   7. braiding intertwines every generator on the pinned module pairs
//!   8. Yang-Baxter + hexagons, symbolically and at 3 specializations,
//!      with the standalone operator lemmas at height <= 2
//!   9. Casimir operator checks on the pinned modules
//!  10. weight-character injectivity for n in {2,3,4}, bound 3
//!  11. morphism checks: the rank-one family and the multiparameter
//!      transport for n in {2,3}
//!
//! (The twelfth criterion, byte-identical reruns of the command-line
//! interface, lives in the runner crate's own acceptance target.)

use std::sync::Arc;
use std::time::Instant;

use urs_core::algebra::{Algebra, Kind, Params};
use urs_core::checks;
use urs_core::pairing::Pairing;
use urs_core::report::CheckReport;
use urs_core::scalar::rat;
use urs_core::weight::Weight;

const SEED: u64 = 20010;

struct Criterion {
    label: &'static str,
    limit_secs: f64,
}

fn run_criterion(c: Criterion, f: impl FnOnce() -> Vec<CheckReport>) -> bool {
    let start = Instant::now();
    let reports = f();
    let elapsed = start.elapsed().as_secs_f64();
    let residuals: usize = reports.iter().map(|r| r.residual_count).sum();
    let pass = reports.iter().all(|r| r.pass);
    println!(
        "criterion {}: {} ({} residuals, {:.2}s, limit {}s)",
        c.label,
        if pass { "PASS" } else { "FAIL" },
        residuals,
        elapsed,
        c.limit_secs,
    );
    for r in &reports {
        for d in &r.details {
            println!("    {}: {}", r.command, d);
        }
    }
    assert!(
        elapsed < c.limit_secs,
        "criterion {} exceeded its time limit",
        c.label
    );
    pass
}

fn generic_ctx(n: usize, kind: Kind, cutoff: usize) -> Pairing {
    Pairing::new(Arc::new(Algebra::generic(n, kind).unwrap()), cutoff)
}

fn eps1(n: usize) -> Weight {
    Weight::eps_basis(n, 1)
}

fn two_eps1(n: usize) -> Weight {
    let mut v = vec![0i64; n];
    v[0] = 2;
    Weight::new(v)
}

#[test]
fn acceptance() {
    let mut all_pass = true;

    all_pass &= run_criterion(
        Criterion {
            label: "1 (presentation soundness)",
            limit_secs: 60.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3, 4] {
                for kind in [Kind::Gl, Kind::Sl] {
                    let alg = Arc::new(Algebra::generic(n, kind).unwrap());
                    let ctx = Pairing::new(alg.clone(), 4);
                    reports.push(checks::relations_check(&alg, &ctx).unwrap());
                }
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "2 (Hopf axioms)",
            limit_secs: 60.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3] {
                for kind in [Kind::Gl, Kind::Sl] {
                    let alg = Arc::new(Algebra::generic(n, kind).unwrap());
                    reports.push(checks::hopf_axioms_check(&alg, 100, 3, SEED).unwrap());
                }
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "3 (pairing consistency)",
            limit_secs: 120.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3] {
                let ctx = generic_ctx(n, Kind::Sl, 5);
                reports.push(
                    checks::pairing_consistency_check(&ctx, 4, 25, SEED).unwrap(),
                );
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "4 (dimension oracle)",
            limit_secs: 120.0,
        },
        || {
            let ctx = generic_ctx(3, Kind::Sl, 5);
            vec![checks::dimension_check(&ctx, 5).unwrap()]
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "5 (double reconstruction)",
            limit_secs: 60.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3] {
                for kind in [Kind::Gl, Kind::Sl] {
                    let ctx = generic_ctx(n, kind, 4);
                    reports.push(checks::double_check(&ctx, 8, SEED).unwrap());
                }
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "6 (quasi-R-matrix identities)",
            limit_secs: 60.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3] {
                let ctx = generic_ctx(n, Kind::Gl, 4);
                reports.push(checks::theta_check(&ctx, 3).unwrap());
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "7 (braiding intertwines)",
            limit_secs: 300.0,
        },
        || {
            let mut reports = Vec::new();
            let ctx2 = generic_ctx(2, Kind::Gl, 4);
            for lam in [eps1(2), two_eps1(2)] {
                for mu in [eps1(2), two_eps1(2)] {
                    let (rep, _) =
                        checks::rmatrix_check(&ctx2, &lam, &mu, 4, 2).unwrap();
                    reports.push(rep);
                }
            }
            let ctx3 = generic_ctx(3, Kind::Gl, 3);
            let (rep, _) = checks::rmatrix_check(&ctx3, &eps1(3), &eps1(3), 3, 1).unwrap();
            reports.push(rep);
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "8 (Yang-Baxter and hexagons)",
            limit_secs: 600.0,
        },
        || {
            let mut reports = Vec::new();
            let triples2 = [
                (eps1(2), eps1(2), eps1(2)),
                (eps1(2), two_eps1(2), eps1(2)),
                (two_eps1(2), eps1(2), two_eps1(2)),
                (two_eps1(2), two_eps1(2), two_eps1(2)),
            ];
            // symbolic parameters
            let ctx2 = generic_ctx(2, Kind::Gl, 4);
            for (la, mu, nu) in &triples2 {
                reports.push(checks::qybe_check(&ctx2, la, mu, nu, 4, 2).unwrap());
                reports.push(checks::hexagon_check(&ctx2, la, mu, nu, 4, 2).unwrap());
            }
            let ctx3 = generic_ctx(3, Kind::Gl, 3);
            let e1 = eps1(3);
            reports.push(checks::qybe_check(&ctx3, &e1, &e1, &e1, 3, 1).unwrap());
            reports.push(checks::hexagon_check(&ctx3, &e1, &e1, &e1, 3, 1).unwrap());
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "8s (specialized reruns)",
            limit_secs: 30.0,
        },
        || {
            let mut reports = Vec::new();
            for (u0, v0) in [rat(2, 1), rat(3, 1), rat(5, 2)]
                .into_iter()
                .zip([rat(3, 1), rat(5, 1), rat(7, 3)])
            {
                let params = Params::specialized(&u0, &v0).unwrap();
                let alg = Arc::new(Algebra::new(2, Kind::Gl, params).unwrap());
                let ctx = Pairing::new(alg, 4);
                let la = eps1(2);
                let mu = two_eps1(2);
                reports.push(checks::qybe_check(&ctx, &la, &mu, &la, 4, 2).unwrap());
                reports.push(checks::hexagon_check(&ctx, &la, &mu, &la, 4, 2).unwrap());
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "9 (Casimir operator)",
            limit_secs: 120.0,
        },
        || {
            let mut reports = Vec::new();
            let ctx2 = generic_ctx(2, Kind::Gl, 4);
            for lam in [eps1(2), two_eps1(2)] {
                reports.push(checks::casimir_check(&ctx2, &lam, 4, 2).unwrap());
            }
            let ctx3 = generic_ctx(3, Kind::Gl, 3);
            reports.push(checks::casimir_check(&ctx3, &eps1(3), 3, 1).unwrap());
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "10 (character injectivity)",
            limit_secs: 30.0,
        },
        || {
            let mut reports = Vec::new();
            for n in [2usize, 3, 4] {
                let alg = Algebra::generic(n, Kind::Sl).unwrap();
                reports.push(checks::prop35_check(&alg, 3).unwrap());
            }
            reports
        },
    );

    all_pass &= run_criterion(
        Criterion {
            label: "11 (morphisms)",
            limit_secs: 120.0,
        },
        || {
            let mut reports = vec![checks::iso_sl2_check(5, SEED).unwrap()];
            for n in [2usize, 3] {
                reports.push(checks::iso_chm_check(n).unwrap());
            }
            reports
        },
    );

    assert!(all_pass, "at least one acceptance criterion failed");
}
