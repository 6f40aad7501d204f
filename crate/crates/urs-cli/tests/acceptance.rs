//! Acceptance for the runner: every subcommand, rerun with the same seed,
//! must produce byte-identical JSON; a golden file pins the export schema.

use std::process::Command;

fn run(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_urs"))
        .args(args)
        .output()
        .expect("failed to spawn the runner");
    (out.stdout, out.status.code())
}

#[test]
fn determinism_of_every_subcommand() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["relations", "--n", "3", "--kind", "gl"],
        vec!["relations", "--n", "2", "--kind", "sl"],
        vec!["hopf-axioms", "--n", "2", "--kind", "sl", "--count", "25", "--seed", "7"],
        vec!["pairing-table", "--n", "2", "--kind", "sl", "--height", "3", "--seed", "7"],
        vec!["dual-basis", "--n", "3", "--kind", "sl", "--zeta", "2,1"],
        vec!["verify-double", "--n", "2", "--kind", "sl", "--words", "6", "--seed", "7"],
        vec!["verma", "--n", "2", "--kind", "gl", "--lambda", "2,0", "--depth", "3"],
        vec![
            "rmatrix", "--n", "2", "--kind", "gl", "--lambda", "1,0", "--mu", "2,0",
            "--depth", "4",
        ],
        vec![
            "qybe", "--n", "2", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,0",
            "--depth", "3",
        ],
        vec![
            "hexagon", "--n", "2", "--lambda", "1,0", "--mu", "1,0", "--nu", "1,0",
            "--depth", "3",
        ],
        vec!["casimir", "--n", "2", "--kind", "gl", "--lambda", "1,0", "--depth", "3"],
        vec!["theta-identities", "--n", "2", "--kind", "sl", "--height", "2"],
        vec!["iso-check", "--which", "sl2", "--count", "5", "--seed", "7"],
        vec!["iso-check", "--which", "chm", "--n", "2"],
        vec!["prop35", "--n", "3", "--bound", "3"],
        vec![
            "qybe", "--n", "2", "--lambda", "1,0", "--mu", "2,0", "--nu", "1,0",
            "--depth", "3", "--specialize", "2,3",
        ],
    ];
    let mut pass = true;
    for args in &cases {
        let (first, code1) = run(args);
        let (second, code2) = run(args);
        let ok = first == second && code1 == Some(0) && code2 == Some(0) && !first.is_empty();
        println!(
            "criterion 12 case `{}`: {}",
            args.join(" "),
            if ok { "PASS" } else { "FAIL" }
        );
        pass &= ok;
    }
    assert!(pass, "a subcommand was non-deterministic or failed");
}

#[test]
fn exit_codes() {
    // usage error: invalid kind
    let (_, code) = run(&["relations", "--n", "2", "--kind", "xx"]);
    assert_eq!(code, Some(2));
    // usage error: n out of range
    let (_, code) = run(&["relations", "--n", "1"]);
    assert_eq!(code, Some(2));
    // usage error: degenerate specialization
    let (_, code) = run(&["relations", "--n", "2", "--specialize", "2,-2"]);
    assert_eq!(code, Some(2));
    // pass
    let (_, code) = run(&["prop35", "--n", "2", "--bound", "2"]);
    assert_eq!(code, Some(0));
}

#[test]
fn golden_dual_basis_export() {
    let (bytes, code) = run(&["dual-basis", "--n", "2", "--kind", "sl", "--zeta", "1"]);
    assert_eq!(code, Some(0));
    let golden = include_bytes!("golden/dual_basis_n2_zeta1.json");
    assert_eq!(
        bytes,
        golden,
        "export drifted from the golden schema:\n{}",
        String::from_utf8_lossy(&bytes)
    );
}
