use std::path::PathBuf;
use std::process::{Command, Output};

fn creepers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_creepers")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

/// Writes `text` to a temporary fixture and verifies it with `extra` arguments.
fn verify_text(text: &str, extra: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tsv");
    std::fs::write(&path, text).unwrap();
    let mut args = vec!["verify", "--fixture", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    creepers(&args)
}

#[test]
fn family_expand_matches_printed_row() {
    let o = creepers(&["family", "expand", "--name", "easy-kreeper-67", "--n", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 47);
    assert_eq!(rows[4], "4\t1718341045\t633208674978\t737\t11*67");
    assert!(text.contains("## period=46\n"));
}

#[test]
fn expand_golden_ratio() {
    let o = creepers(&["expand", "--disc", "5", "--mode", "order"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("## period=1\n"), "{text}");
    assert!(text.contains("## unit-norm=-1\n"));
    assert!(text.contains("## regulator=0.4812118250"), "{text}");
}

#[test]
fn verify_printed_fixture_by_name() {
    let f = fixture("lkreeper-43.n11.tsv");
    let o = creepers(&["verify", "--fixture", &f, "--name", "lkreeper-43", "--n", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("status=exact\n"));
}

#[test]
fn verify_infers_family_from_id() {
    for f in ["easy-kreeper-67.n6.tsv", "negl-131.n6.tsv", "sq-1319011-div15.n8.tsv", "ml-11.n15.tsv"] {
        let o = creepers(&["verify", "--fixture", &fixture(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn verify_polynomial_fixture() {
    let o = creepers(&[
        "verify",
        "--fixture",
        &fixture("sleeper-elkies.tsv"),
        "--poly",
        "X^6 - 2*X^5 - 4*X^4 + 2*X^3 + 37/4*X^2 - 15/2*X + 9/4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("status=prefix-exact\n"));
}

#[test]
fn expand_output_verifies_against_itself() {
    let cases: [(&[&str], Vec<&str>); 4] = [
        (&["expand", "--disc", "1021", "--mode", "raw", "--factors", "2,3,5"], vec!["--disc", "1021", "--mode", "raw"]),
        (&["expand", "--disc", "1020"], vec!["--disc", "1020"]),
        (&["expand", "--disc", "997", "--max-steps", "5"], vec!["--disc", "997"]),
        (&["family", "expand", "--name", "ml-2", "--n", "9"], vec![]),
    ];
    for (gen, check) in cases {
        let text = stdout(&creepers(gen));
        let o = verify_text(&text, &check);
        assert_eq!(o.status.code(), Some(0), "{gen:?}\n{}", stdout(&o));
    }
    let poly = "X^4 + X + 1";
    let text = stdout(&creepers(&["ff-expand", "--poly", poly, "--max-steps", "6"]));
    let o = verify_text(&text, &["--poly", poly]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn tampered_fixture_exits_3() {
    let text = std::fs::read_to_string(fixture("easy-kreeper-67.n6.tsv")).unwrap();
    let o = verify_text(&text.replace("\t737\t", "\t739\t"), &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("mismatch\t4\tQ\t739\t737"), "{}", stdout(&o));
}

#[test]
fn leprevost_from_the_command_line() {
    let o = creepers(&["ff-expand", "--poly", "4*X^6 - 4*X^5 + X^4 - 8*X^3 + 20*X^2 - 16*X + 4"]);
    let text = stdout(&o);
    assert!(text.contains("## period=22\n"), "{text}");
    assert_eq!(data_rows(&text)[0], "0\t2*X^3 - X^2 - 2\t0\t1");
}

#[test]
fn output_is_deterministic() {
    let args = ["family", "expand", "--name", "higher-3a", "--n", "5"];
    assert_eq!(creepers(&args).stdout, creepers(&args).stdout);
}

#[test]
fn scan_is_ordered_and_mode_independent() {
    let par = creepers(&["scan", "--name", "easy-kreeper-67", "--from", "1", "--to", "10"]);
    let seq = creepers(&["scan", "--name", "easy-kreeper-67", "--from", "1", "--to", "10", "--sequential"]);
    assert!(par.status.success());
    assert_eq!(par.stdout, seq.stdout);
    let ns: Vec<u32> = stdout(&par).lines().map(|l| l.split('\t').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns, (1..=10).collect::<Vec<_>>());
}

#[test]
fn family_gen_and_list() {
    let o = creepers(&["family", "gen", "--name", "ml-2", "--n", "5"]);
    // (32 - 31)^2 + 44 * 32
    assert_eq!(stdout(&o), "1409\n");
    let list = stdout(&creepers(&["family", "list"]));
    assert_eq!(list.lines().count(), 9);
    assert!(list.contains("sq-1319011\t"));
}

#[test]
fn exit_codes() {
    assert_eq!(creepers(&["expand", "--disc", "49", "--mode", "raw"]).status.code(), Some(4));
    assert_eq!(creepers(&["expand", "--disc", "3", "--mode", "order"]).status.code(), Some(4));
    assert_eq!(creepers(&["expand"]).status.code(), Some(2));
    assert_eq!(creepers(&["verify", "--fixture", "/nonexistent.tsv"]).status.code(), Some(2));
    assert_eq!(creepers(&["verify", "--fixture", &fixture("sleeper-leprevost.tsv")]).status.code(), Some(2));
    assert_eq!(creepers(&["family", "gen", "--name", "ml-11", "--n", "4"]).status.code(), Some(4));
    let o = creepers(&["expand", "--disc", "-5"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}
