use std::process::ExitCode;

use pictopipe::cli::main_with;

const DEMO_TPA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/eval/demo_tpa.jsonl");
const GEC_PAIRS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/eval/gec_pairs.tsv");

fn run(args: &[&str]) -> (ExitCode, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(
        std::iter::once("pictopipe").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn translate_prints_json() {
    let (code, out, _) = run(&["translate", "He taked my toy!"]);
    assert_eq!(code, ExitCode::SUCCESS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["corrected"], "He took my toy!");
    assert_eq!(v["images"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["translate"],
        &["eval", "tpa"],
        &["eval", "tpa", "--corpus", DEMO_TPA, "--case", "9"],
        &["eval", "gec", "--corpus", GEC_PAIRS, "--metric", "rouge"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, ExitCode::from(2), "{args:?}");
        assert!(err.starts_with("error:"), "{args:?}: {err}");
    }
}

#[test]
fn eval_tpa_prints_case_matrix() {
    let (code, out, _) = run(&["eval", "tpa", "--corpus", DEMO_TPA]);
    assert_eq!(code, ExitCode::SUCCESS);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("case"));

    let (code, out, _) = run(&["eval", "tpa", "--corpus", DEMO_TPA, "--case", "1", "--penalty"]);
    assert_eq!(code, ExitCode::SUCCESS);
    assert!(out.starts_with("case 1 penalty true: TPA"));

    let (code, out, _) = run(&["--sequential", "eval", "tpa", "--corpus", DEMO_TPA, "--json"]);
    assert_eq!(code, ExitCode::SUCCESS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 8);
}

#[test]
fn eval_gec_scores_bundled_pairs() {
    let (code, out, _) = run(&["eval", "gec", "--corpus", GEC_PAIRS, "--metric", "both"]);
    assert_eq!(code, ExitCode::SUCCESS);
    assert_eq!(out, "BLEU 100.00\nGLEU 100.00\n");
    let (_, out, _) = run(&["eval", "gec", "--corpus", GEC_PAIRS, "--metric", "gleu"]);
    assert!(out.starts_with("GLEU") && !out.contains("BLEU"));
}

#[test]
fn data_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "dog\tdog.png\ncat\tcat.png\ndog\tother.png\n").unwrap();
    let (code, _, err) = run(&["lexicon", "validate", bad.to_str().unwrap()]);
    assert_eq!(code, ExitCode::from(1));
    assert!(err.contains("row 3"), "{err}");

    let good = dir.path().join("good.tsv");
    std::fs::write(&good, "dog\tdog.png\nhot dog\thotdog.png\n").unwrap();
    let (code, out, _) = run(&["lexicon", "validate", good.to_str().unwrap()]);
    assert_eq!(code, ExitCode::SUCCESS);
    assert!(out.contains("2 entries"));

    let missing = dir.path().join("missing.jsonl");
    let (code, _, _) = run(&["eval", "tpa", "--corpus", missing.to_str().unwrap()]);
    assert_eq!(code, ExitCode::from(1));

    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "tau = 3\n").unwrap();
    let (code, _, err) = run(&["--config", conf.to_str().unwrap(), "translate", "hi"]);
    assert_eq!(code, ExitCode::from(1));
    assert!(err.starts_with("error:"));
}
