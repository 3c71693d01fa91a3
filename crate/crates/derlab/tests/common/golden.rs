//! Golden CLI corpus: pinned stdout bytes and exit codes per invocation.
//!
//! Run with `GOLDEN_REGEN=1` to rewrite the expected files from the current
//! binary output.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

pub struct GoldenCase {
    pub name: &'static str,
    pub session: &'static str,
    /// Command name followed by flags; the session path is inserted between.
    pub args: &'static [&'static str],
    pub expected_exit: i32,
    pub stderr_contains: Option<&'static str>,
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "parse_worked_text",
        session: "worked3.session",
        args: &["parse"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "parse_worked_json",
        session: "worked3.session",
        args: &["parse", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_worked_text",
        session: "worked3.session",
        args: &["simple", "--family", "D"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_worked_json",
        session: "worked3.session",
        args: &["simple", "--family", "D", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "classify_worked_text",
        session: "worked3.session",
        args: &["classify", "--family", "D"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "classify_worked_json",
        session: "worked3.session",
        args: &["classify", "--family", "D", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "slice_worked_text",
        session: "worked3.session",
        args: &["slice", "--der", "d3"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "slice_worked_json",
        session: "worked3.session",
        args: &["slice", "--der", "d3", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "nilpotent_der_worked_text",
        session: "worked3.session",
        args: &["nilpotent", "--der", "d3", "--budget", "6"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "nilpotent_family_worked_json",
        session: "worked3.session",
        args: &["nilpotent", "--family", "D", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "basis_worked_text",
        session: "worked3.session",
        args: &["basis", "--family", "D"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "divergence_worked_json",
        session: "worked3.session",
        args: &["divergence", "--der", "d3", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "bracket_worked_text",
        session: "worked3.session",
        args: &["bracket", "--der", "d1", "d3"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_notsimple_json",
        session: "notsimple2.session",
        args: &["simple", "--family", "E", "--format", "json"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_notsimple_text",
        session: "notsimple2.session",
        args: &["simple", "--family", "E"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_allzero_text",
        session: "allzero2.session",
        args: &["simple", "--family", "F"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "classify_allzero_json",
        session: "allzero2.session",
        args: &["classify", "--family", "F", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "upgrade_allzero_exit2",
        session: "allzero2.session",
        args: &["upgrade", "--family", "F"],
        expected_exit: 2,
        stderr_contains: Some("annihilates the last variable"),
    },
    GoldenCase {
        name: "basis_allzero_text",
        session: "allzero2.session",
        args: &["basis", "--family", "F"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_series_json",
        session: "series8.session",
        args: &["simple", "--family", "S", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_series_text",
        session: "series8.session",
        args: &["simple", "--family", "S"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "simple_polycontrast_json",
        session: "polycontrast2.session",
        args: &["simple", "--family", "S", "--format", "json"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "classify_noncommuting_text",
        session: "noncommuting3.session",
        args: &["classify", "--family", "N"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "commutes_noncommuting_json",
        session: "noncommuting3.session",
        args: &["commutes", "--der", "e", "d3", "--format", "json"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "commutes_commuting_text",
        session: "noncommuting3.session",
        args: &["commutes", "--der", "d1", "d2"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "counterexample_simple_exit2",
        session: "counterexample.session",
        args: &["simple", "--family", "C"],
        expected_exit: 2,
        stderr_contains: Some("must contain the coordinate partial dx1"),
    },
    GoldenCase {
        name: "counterexample_parse_text",
        session: "counterexample.session",
        args: &["parse"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "upgrade4_text",
        session: "upgrade4.session",
        args: &["upgrade", "--family", "U"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "upgrade4_json",
        session: "upgrade4.session",
        args: &["upgrade", "--family", "U", "--format", "json"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "slice_twovar_text",
        session: "twovar.session",
        args: &["slice", "--der", "d"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "nilpotent_family_twovar_text",
        session: "twovar.session",
        args: &["nilpotent", "--family", "T", "--budget", "4"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "nilpotent_eigen_text",
        session: "eigen2.session",
        args: &["nilpotent", "--der", "d", "--budget", "5"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "divergence_eigen_text",
        session: "eigen2.session",
        args: &["divergence", "--der", "d"],
        expected_exit: 1,
        stderr_contains: None,
    },
    GoldenCase {
        name: "mixedparse_parse_text",
        session: "mixedparse.session",
        args: &["parse"],
        expected_exit: 0,
        stderr_contains: None,
    },
    GoldenCase {
        name: "err_dx4_exit2",
        session: "errbad_dx4.session",
        args: &["parse"],
        expected_exit: 2,
        stderr_contains: Some("variable index out of range"),
    },
    GoldenCase {
        name: "err_dupring_exit2",
        session: "errdupring.session",
        args: &["parse"],
        expected_exit: 2,
        stderr_contains: Some("duplicate ring declaration"),
    },
    GoldenCase {
        name: "err_unknown_exit2",
        session: "errunknown.session",
        args: &["parse"],
        expected_exit: 2,
        stderr_contains: Some("unknown derivation name"),
    },
    GoldenCase {
        name: "usage_missing_family_exit2",
        session: "worked3.session",
        args: &["simple"],
        expected_exit: 2,
        stderr_contains: Some("--family"),
    },
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Run every case; returns (invocations, distinct session files).
pub fn run_all() -> (usize, usize) {
    let regen = std::env::var_os("GOLDEN_REGEN").is_some();
    for case in CASES {
        run_case(case, regen);
    }
    let sessions: BTreeSet<&str> = CASES.iter().map(|c| c.session).collect();
    (CASES.len(), sessions.len())
}

fn run_case(case: &GoldenCase, regen: bool) {
    let session = golden_dir().join(case.session);
    let output = Command::new(env!("CARGO_BIN_EXE_derlab"))
        .arg(case.args[0])
        .arg(&session)
        .args(&case.args[1..])
        .output()
        .unwrap_or_else(|e| panic!("case {}: cannot run binary: {e}", case.name));
    let exit = output.status.code().unwrap_or(-1);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(
        exit, case.expected_exit,
        "case {}: exit code (stderr: {stderr})",
        case.name
    );
    if let Some(needle) = case.stderr_contains {
        assert!(
            stderr.contains(needle),
            "case {}: stderr {stderr:?} should mention {needle:?}",
            case.name
        );
    }
    let expected_path = golden_dir().join("expected").join(format!("{}.out", case.name));
    if regen {
        std::fs::create_dir_all(expected_path.parent().unwrap()).expect("mkdir expected/");
        std::fs::write(&expected_path, &output.stdout)
            .unwrap_or_else(|e| panic!("case {}: cannot write golden file: {e}", case.name));
        return;
    }
    let expected = std::fs::read(&expected_path).unwrap_or_else(|_| {
        panic!(
            "case {}: missing golden file {expected_path:?}; regenerate with GOLDEN_REGEN=1",
            case.name
        )
    });
    assert_eq!(
        output.stdout,
        expected,
        "case {}: stdout drift\n--- actual ---\n{}--- expected ---\n{}",
        case.name,
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&expected)
    );
}
