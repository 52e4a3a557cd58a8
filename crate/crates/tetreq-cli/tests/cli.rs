//! Binary-level tests: exit codes, output shape, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tetreq_cli::formats::{render_operator, TensorKind};
use tetreq_core::rng::SplitMix64;
use tetreq_core::tensor::CMatrix;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tetreq"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tetreq-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn bruhat_b42_reports_eight_classes() {
    let out = run(&["bruhat", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|C(4,2)| = 6"));
    assert!(text.contains("|A(4,2)| = 16"));
    assert!(text.contains("|B(4,2)| = 8"));
    assert!(text.contains("12.13.14.23.24.34"));
}

#[test]
fn bruhat_b31_reports_six_singletons() {
    let out = run(&["bruhat", "--n", "3", "--k", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|B(3,1)| = 6"));
}

#[test]
fn bruhat_guard_exits_2() {
    let out = run(&["bruhat", "--n", "9", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bruhat_domain_error_exits_2() {
    let out = run(&["bruhat", "--n", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_passes_golden_check() {
    let out = run(&["derive"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("1,6: S(12)(13)(23) S(12)(14)(24)"));
    assert!(text.contains("Q4 S4 S3 Q3 Q2 S2 S1 = S1 S2 Q2 Q3 S3 S4 Q4"));
    assert!(text.contains("classic form: S123 S145 S246 S356 = S356 S246 S145 S123"));
    assert!(text.contains("overall: pass"));
}

#[test]
fn derive_shorthand_flag() {
    let out = run(&["derive", "--shorthand"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1r,6r: Q4 S~4^-1 S~3^-1 Q3 Q2 S~2^-1 S~1^-1"));
    assert!(!text.contains("starting configurations"));
}

#[test]
fn derive_exhaustive_flag() {
    let out = run(&["derive", "--exhaustive", "--classic"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("exhaustive scan: 46080 words, 384 reversible, 8 groups"));
}

#[test]
fn verify_eight_identity_exits_0() {
    let s = fixture("s_identity_m2.tensor");
    let out = run(&["verify", "--which", "eight", "--s", s.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn verify_eight_random_s_with_random_stilde_exits_1() {
    let mut rng = SplitMix64::new(7);
    let s = write_temp(
        "random_s.tensor",
        &render_operator(TensorKind::S, 2, &CMatrix::random(8, &mut rng)),
    );
    let st = write_temp(
        "random_stilde.tensor",
        &render_operator(TensorKind::Stilde, 2, &CMatrix::random(8, &mut rng)),
    );
    let out = run(&[
        "verify",
        "--which",
        "eight",
        "--s",
        s.to_str().unwrap(),
        "--stilde",
        st.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_eight_random_s_exits_1_with_residuals() {
    // with S~ from unitarity the eight lines coincide but are generically
    // nonzero, so a random S is not a solution
    let mut rng = SplitMix64::new(8);
    let s = write_temp(
        "random_s_only.tensor",
        &render_operator(TensorKind::S, 2, &CMatrix::random(8, &mut rng)),
    );
    let out = run(&["verify", "--which", "eight", "--s", s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("residual"));
}

#[test]
fn verify_collapse_random_s_exits_0_and_flags_collapse() {
    let mut rng = SplitMix64::new(9);
    let s = write_temp(
        "collapse_s.tensor",
        &render_operator(TensorKind::S, 2, &CMatrix::random(8, &mut rng)),
    );
    let out = run(&["verify", "--which", "collapse", "--s", s.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("system collapses"));
}

#[test]
fn verify_lawrence_with_swap_q_exits_0() {
    let q = fixture("q_swap_m2.tensor");
    let out = run(&["verify", "--which", "lawrence", "--q", q.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_ybe_swap_r_exits_0() {
    let r = fixture("r_swap_d2.tensor");
    let out = run(&["verify", "--which", "ybe", "--r", r.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_unitarity_q_swap_exits_0() {
    let q = fixture("q_swap_m2.tensor");
    let out = run(&["verify", "--which", "unitarity", "--q", q.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_obstruction_identity_like_family() {
    // commuting diagonal family with identity obstruction coefficients
    let mfam = write_temp(
        "family.tensor",
        "tetreq-tensor 1\nkind M\nd 2\nn 2\n\
         entry 0,0 0 2 0\nentry 0,1 1 3 0\nentry 1,0 0 -1 1\nentry 1,1 1 0.5 0\n",
    );
    let r = write_temp(
        "r_identity.tensor",
        "tetreq-tensor 1\nkind R\nm 1\nn 2\n\
         entry 0,0,0,0 0,0 1 0\nentry 0,0,0,1 0,1 1 0\n\
         entry 0,0,1,0 1,0 1 0\nentry 0,0,1,1 1,1 1 0\n",
    );
    let out = run(&[
        "verify",
        "--which",
        "obstruction",
        "--mfam",
        mfam.to_str().unwrap(),
        "--r",
        r.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn verify_missing_operand_exits_2() {
    let out = run(&["verify", "--which", "eight"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_malformed_file_exits_2_without_panic() {
    let bad = write_temp("garbage.tensor", "not a tensor file\n");
    let out = run(&["verify", "--which", "eight", "--s", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));
}

#[test]
fn verify_dimension_flag_mismatch_exits_2() {
    let s = fixture("s_identity_m2.tensor");
    let out = run(&["verify", "--which", "eight", "--s", s.to_str().unwrap(), "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_reference_fixture_exits_0_with_eight_classes() {
    let arr = fixture("fig3.arr");
    let out = run(&["sweep", "--arrangement", arr.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("14 sectors, 8 distinct classes"));
}

#[test]
fn sweep_parallel_lines_exit_2() {
    let arr = write_temp(
        "parallel.arr",
        "tetreq-arrangement 1\nline 1 0 0\nline 1 0 1\nline 0 1 0\nline 1 1 1\n",
    );
    let out = run(&["sweep", "--arrangement", arr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_bad_labeling_exits_1() {
    // general position but mislabeled: some sweep chain is inadmissible
    let arr = write_temp(
        "mislabel.arr",
        "tetreq-arrangement 1\nline 1 0 0\nline 0 1 0\nline 1 1 1\nline 1 -1 3\n",
    );
    let out = run(&["sweep", "--arrangement", arr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selfcheck_passes_and_is_seed_deterministic() {
    let a = run(&["selfcheck", "--seed", "5"]);
    assert!(a.status.success(), "{}", stdout(&a));
    let b = run(&["selfcheck", "--seed", "5"]);
    let machine = |o: &Output| {
        stdout(o)
            .lines()
            .skip_while(|l| *l != "-- machine-readable --")
            .filter(|l| l.starts_with("result"))
            // drop the timing field; only the numeric content must repeat
            .map(|l| l.split(" seconds=").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(machine(&a), machine(&b));
    assert!(stdout(&a).contains("seed 5"));
}

#[test]
fn usage_error_exits_2() {
    let out = run(&["verify", "--which", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
