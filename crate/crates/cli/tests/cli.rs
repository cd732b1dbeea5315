//! Subprocess tests for the gbrauer binary: exit codes, the one-RESULT-line
//! contract, sample-file round trips, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    run_in(None, args)
}

fn run_in(dir: Option<&Path>, args: &[&str]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gbrauer"));
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    let output = cmd.args(args).output().expect("failed to run gbrauer");
    let code = output.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&output.stdout).to_string();
    let stderr = String::from_utf8_lossy(&output.stderr).to_string();
    (code, stdout, stderr)
}

fn sample(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("samples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn final_line(stdout: &str) -> &str {
    stdout.lines().last().unwrap_or("")
}

/// Fresh scratch directory seeded with the small-group sample, so extension
/// files written there can say `groupoid: z2.g`.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gbrauer-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(sample("z2.g"), dir.join("z2.g")).unwrap();
    dir
}

#[test]
fn classify_reports_the_table_entry() {
    let (code, stdout, _) = run(&["classify", "--clifford", "0,2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("algebra: Cl(0,2) dim=4"));
    assert_eq!(final_line(&stdout), "RESULT: type=2 label=[0;1,+]");
}

#[test]
fn classify_handles_conjugates_and_powers() {
    let (code, stdout, _) = run(&["classify", "--clifford", "1,0", "--conjugate"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: type=7 label=[1;1,+]");

    let (code, stdout, _) = run(&["classify", "--clifford", "0,1", "--power", "4"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: type=4 label=[0;0,-]");
}

#[test]
fn classify_reads_an_algebra_file() {
    use graded_brauer::algebra::{algebra_to_text, make_clifford};
    let dir = scratch("alg");
    let path = dir.join("cl20.alg");
    std::fs::write(&path, algebra_to_text(&make_clifford(2, 0).unwrap())).unwrap();
    let (code, stdout, _) = run(&["classify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: type=6 label=[0;1,-]");
}

#[test]
fn type_add_wraps_mod_eight() {
    let (code, stdout, _) = run(&["type-add", "3", "7"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: type=2 label=[0;1,+]");

    let (code, _, stderr) = run(&["type-add", "3", "9"]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn verify_table_checks_fifteen_signatures() {
    let (code, stdout, _) = run(&["verify-table"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Cl(0,0):"));
    assert_eq!(final_line(&stdout), "RESULT: ok checked=15");
}

#[test]
fn verify_products_checks_all_pairs() {
    let (code, stdout, _) = run(&["verify-products"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().filter(|l| l.contains(" x ")).count(), 64);
    assert_eq!(final_line(&stdout), "RESULT: ok checked=64");
}

#[test]
fn point_groups_match_the_three_flavors() {
    let (code, stdout, _) =
        run(&["brauer", "--groupoid", &sample("point.g"), "--flavor", "brR", "--m", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("t part (degree 0): Z/8"));
    assert_eq!(final_line(&stdout), "RESULT: Z8");

    let (code, stdout, _) = run(&["brauer", "--point", "--flavor", "br"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: Z2");

    let (code, stdout, _) = run(&["brauer", "--point", "--flavor", "brO"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: Z8");
}

#[test]
fn brauer_table_report_is_a_closed_table() {
    let (code, stdout, _) = run(&["brauer", "--point", "--flavor", "br", "--report", "table"]);
    assert_eq!(code, 0);
    let adds: Vec<&str> = stdout.lines().filter(|l| l.starts_with("add ")).collect();
    assert_eq!(adds.len(), 2);
    for line in adds {
        let body = line.split(": ").nth(1).unwrap();
        let mut seen: Vec<&str> = body.split_whitespace().collect();
        seen.sort_unstable();
        assert_eq!(seen, ["0", "1"], "each row permutes the elements: {line}");
    }
}

#[test]
fn cohomology_matches_the_sample_files() {
    let z3z3 = sample("z3z3.g");
    let (code, stdout, _) =
        run(&["cohomology", "--groupoid", &z3z3, "--coeff", "mu:3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: Z/3 x Z/3 x Z/3");

    let (code, stdout, _) = run(&["cohomology", "--groupoid", &z3z3, "--coeff", "s1", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("tower: mu:6"));
    assert_eq!(final_line(&stdout), "RESULT: Z/3");
}

#[test]
fn cohomology_brute_crosscheck_agrees() {
    let (code, stdout, _) = run(&[
        "cohomology", "--group", "2", "--coeff", "mu:4", "--n", "2", "--real", "--brute",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("enumeration: Z/2"));
    assert_eq!(final_line(&stdout), "RESULT: Z/2");
}

#[test]
fn inflating_a_groupoid_preserves_cohomology() {
    let plain = run(&["cohomology", "--group", "2", "--coeff", "Z8", "--n", "1", "--real"]);
    let fat = run(&[
        "cohomology", "--group", "2", "--inflate", "3", "--coeff", "Z8", "--n", "1", "--real",
    ]);
    assert_eq!(plain.0, 0);
    assert_eq!(fat.0, 0);
    assert_eq!(final_line(&plain.1), final_line(&fat.1));
}

#[test]
fn extension_sample_is_nontrivial_of_order_four() {
    let ext = sample("z2-twisted.ext");
    let (code, stdout, _) = run(&["ext", "build", "--file", &ext]);
    assert_eq!(code, 0);
    assert!(stdout.contains("twist order: (g0,g0) (g0,g1) (g1,g0) (g1,g1)"));
    assert_eq!(final_line(&stdout), "RESULT: ok total-arrows=8");

    let (code, stdout, _) = run(&["ext", "dd", "--file", &ext]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: delta=[1] omega=[1]");

    let (code, stdout, _) = run(&["ext", "trivial", "--file", &ext]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: trivial=false");
}

#[test]
fn tensor_output_reloads_and_the_fourth_power_splits() {
    let dir = scratch("tensor");
    let twisted = sample("z2-twisted.ext");

    let (code, stdout, _) = run(&["ext", "tensor", "--file", &twisted, "--with", &twisted]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: delta=[0] omega=[1]");
    let square = dir.join("square.ext");
    std::fs::write(&square, &stdout).unwrap();

    let sq = square.to_str().unwrap();
    let (code, stdout, _) = run(&["ext", "dd", "--file", sq]);
    assert_eq!(code, 0, "tensor output parses back as an extension file");
    assert_eq!(final_line(&stdout), "RESULT: delta=[0] omega=[1]");

    let (code, stdout, _) = run(&["ext", "tensor", "--file", sq, "--with", sq]);
    assert_eq!(code, 0);
    let fourth = dir.join("fourth.ext");
    std::fs::write(&fourth, &stdout).unwrap();

    let (code, stdout, _) = run(&["ext", "trivial", "--file", fourth.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("theta:"), "a splitting comes with its cochain witness");
    assert!(stdout.contains("epsilon:"));
    assert_eq!(final_line(&stdout), "RESULT: trivial=true");
}

#[test]
fn bad_extension_data_fails_with_a_witness() {
    let dir = scratch("bad");
    let bad = dir.join("bad.ext");
    std::fs::write(&bad, "groupoid: z2.g\nm: 4\ndelta: 0 1\nomega: 0 0 0 1\n").unwrap();
    let (code, stdout, _) = run(&["ext", "build", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let last = final_line(&stdout);
    assert!(last.starts_with("RESULT: fail"), "got: {last}");
    assert!(last.contains("(g1, g1)"), "the failing pair is named: {last}");
}

#[test]
fn decompose_reports_the_odd_split() {
    let (code, stdout, _) = run(&["decompose", "--group", "3x3", "--double", "--m", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("odd split holds"));
    assert_eq!(final_line(&stdout), "RESULT: agree=true");
}

#[test]
fn report_probes_are_deterministic() {
    let a = run(&["report"]);
    let b = run(&["report"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b, "identical bytes across runs");
    assert_eq!(final_line(&a.1), "RESULT: probes=7");
}

#[test]
fn brauer_output_is_deterministic() {
    let args =
        ["brauer", "--group", "2", "--flavor", "brR", "--m", "4", "--report", "factors"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, b, "identical bytes across runs");
}

#[test]
fn json_lines_are_valid_json() {
    for args in [
        vec!["--json", "classify", "--clifford", "0,2"],
        vec!["--json", "brauer", "--point", "--flavor", "brR", "--m", "4"],
        vec!["--json", "ext", "dd", "--file", &sample("z2-twisted.ext")],
    ] {
        let (code, stdout, _) = run(&args);
        assert_eq!(code, 0);
        let line = stdout
            .lines()
            .find(|l| l.starts_with("JSON: "))
            .unwrap_or_else(|| panic!("no JSON line in {stdout}"));
        let value: serde_json::Value =
            serde_json::from_str(line.trim_start_matches("JSON: ")).unwrap();
        assert!(value.is_object());
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["classify", "--clifford", "0,2", "--algebra", "x.alg"],
        vec!["classify", "--clifford", "zero,two"],
        vec!["brauer", "--point", "--flavor", "brX"],
        vec!["brauer", "--point", "--report", "graph"],
        vec!["brauer", "--point", "--group", "2"],
        vec!["cohomology", "--groupoid", "no-such-file.g", "--n", "1"],
        vec!["ext", "build", "--file", "no-such-file.ext"],
        vec!["decompose", "--group", "2", "--rho-neg", "--double", "--product-s01"],
    ];
    for args in cases {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 2, "args {args:?} gave stdout {stdout} stderr {stderr}");
        assert!(!stderr.is_empty(), "usage errors land on stderr: {args:?}");
    }
}

#[test]
fn relative_groupoid_paths_resolve_from_the_extension_file() {
    let dir = scratch("rel");
    let ext = dir.join("flat.ext");
    std::fs::write(&ext, "groupoid: z2.g\nm: 2\ndelta: 0 0\nomega: 0 0 0 0\n").unwrap();
    // run from elsewhere: the `groupoid:` line must resolve next to flat.ext
    let (code, stdout, _) =
        run_in(Some(Path::new("/")), &["ext", "trivial", "--file", ext.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(final_line(&stdout), "RESULT: trivial=true");
}
