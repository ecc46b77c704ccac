use std::path::PathBuf;
use std::process::{Command, Output};

use zptower_cli::report::{CommandResult, Envelope, ErrorEnvelope};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn zptower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zptower"))
        .args(args)
        .env_remove("ZPTOWER_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn envelope(args: &[&str]) -> Envelope {
    let o = zptower(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn temp(name: &str, body: &str) -> String {
    let mut p = std::env::temp_dir();
    p.push(format!("zptower-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn unit_root_genus_csv() {
    let o = zptower(&["genus", "--input", &data("unitroot_p2_d1.json"), "--nmax", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,u_inf,conductor_degree,g,bound,verdict,a,b,c,m");
    let g: Vec<&str> = lines.map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(g, ["0", "1", "7"]);
}

#[test]
fn symbol_example() {
    let env = envelope(&[
        "symbol",
        "--form",
        &data("form_p3.json"),
        "--unit",
        &data("unit_p3.json"),
        "--n",
        "1",
    ]);
    let CommandResult::Symbol(s) = env.result else { panic!("wrong kind") };
    assert_eq!((s.value, s.modulus, s.agreement, s.classical), (2, 3, true, Some(2)));
}

#[test]
fn conductor_formula_matches_search() {
    let env = envelope(&["conductor", "--form", &data("form_f9.json")]);
    let CommandResult::Conductor(c) = env.result else { panic!("wrong kind") };
    assert!(c.agreement);
    let u: Vec<u64> = c.levels.iter().map(|l| l.u).collect();
    // pole 5 at v = 0, pole 4 at v = 1
    assert_eq!(u, [6, 16, 46]);
}

#[test]
fn discrepancy_stream_is_flagged() {
    let env = envelope(&["stability", "--input", &data("profile_discrepancy.json")]);
    let CommandResult::Stability(s) = env.result else { panic!("wrong kind") };
    assert!(s.disagreement);
    assert_eq!(s.quadratic_fit.outcome, "holds");
    assert_eq!(s.max_attained.outcome, "fails");
    assert_eq!(s.verdict, "stable");
}

#[test]
fn oracle_seed_42_passes() {
    let env = envelope(&["oracle", "--seed", "42"]);
    let CommandResult::Oracle(o) = env.result else { panic!("wrong kind") };
    assert!(o.all_passed, "{:?}", o.suites);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_zptower"))
        .args(["ldegree", "--input", &data("profile_finite.json"), "--n", "3"])
        .env("ZPTOWER_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err: ErrorEnvelope = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err.error.pointer.as_deref(), Some("--precision"));
}

fn all_reports() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["reduce", "--input", &data("reduce_local.json")]),
        s(&["reduce", "--input", &data("reduce_global.json")]),
        s(&["symbol", "--form", &data("form_f9.json"), "--unit", &data("unit_p3.json"), "--n", "2"]),
        s(&["conductor", "--form", &data("form_f9.json"), "--nmax", "2"]),
        s(&["breaks", "--form", &data("form_f9.json"), "--rmax", "8"]),
        s(&["genus", "--input", &data("unitroot_p2_d1.json"), "--nmax", "6"]),
        s(&["genus", "--input", &data("profile_finite.json"), "--nmax", "5"]),
        s(&["genus", "--input", &data("profile_discrepancy.json"), "--nmax", "8"]),
        s(&["stability", "--input", &data("profile_discrepancy.json")]),
        s(&["ldegree", "--input", &data("profile_finite.json"), "--n", "4"]),
        s(&["frobenius", "--input", &data("frobenius_p2.json"), "--n", "3"]),
        s(&["oracle", "--seed", "7"]),
    ]
}

#[test]
fn reports_are_deterministic() {
    for args in all_reports() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        for fmt in ["json", "csv", "table"] {
            let mut a = args.clone();
            a.extend(["--format", fmt]);
            let first = zptower(&a);
            let second = zptower(&a);
            assert_eq!(first.status.code(), Some(0), "{a:?}: {}", String::from_utf8_lossy(&first.stderr));
            assert_eq!(first.stdout, second.stdout, "{a:?}");
        }
    }
}

#[test]
fn reports_round_trip() {
    for args in all_reports() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&zptower(&args));
        let env: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(env.schema, "zptower/1");
        assert_eq!(serde_json::to_string_pretty(&env).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn reduced_local_form_is_a_fixed_point() {
    let env = envelope(&["reduce", "--input", &data("reduce_local.json")]);
    let CommandResult::Reduce(r) = env.result else { panic!("wrong kind") };
    let form = serde_json::to_string(r.local.as_ref().unwrap()).unwrap();
    let path = temp("fixed.json", &form);
    // the form is itself a valid --form input
    let env = envelope(&["breaks", "--form", &path, "--rmax", "2"]);
    assert!(matches!(env.result, CommandResult::Breaks(_)));
}

#[test]
fn malformed_inputs_exit_2_with_pointer() {
    let unit = data("unit_p3.json");
    let form = data("form_p3.json");
    let cases: Vec<(&str, &str, &str, &str)> = vec![
        // (command, flag, body, expected pointer)
        ("symbol", "--form", "not json", ""),
        ("symbol", "--form", r#"{"field": {"p": 4}}"#, "/field"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "terms": {"3": [1]}}"#, "/terms/3"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "terms": {"x": [1]}}"#, "/terms/x"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "terms": {"1": [5]}}"#, "/terms/1/0"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "terms": {"1": [1, 1]}}"#, "/terms/1"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "c": [0, 3]}"#, "/c"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "alpha": 0}"#, "/alpha"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "bogus": 1}"#, "/bogus"),
        ("symbol", "--form", r#"{"field": {"p": 3, "f": 2, "modulus": [1, 1]}}"#, "/field/modulus"),
        ("symbol", "--form", r#"{"field": {"p": 3}, "precision": 0}"#, "/precision"),
        ("symbol", "--unit", r#"{"e": 0, "one_unit": {"tail": 0, "coeffs": [2]}}"#, "/one_unit"),
        ("symbol", "--unit", r#"{"e": 0, "one_unit": {"tail": "a", "coeffs": [1]}}"#, "/one_unit/tail"),
        ("symbol", "--unit", r#"{"field": {"p": 5}, "e": 0, "one_unit": {"tail": 0, "coeffs": [1]}}"#, "/field"),
        ("genus", "--input", r#"{"field": {"p": 3}, "places": [{"at": "zero", "coeffs": {"1": [1]}}]}"#, "/places/0/at"),
        (
            "genus",
            "--input",
            r#"{"field": {"p": 3}, "places": [{"at": 1, "coeffs": {"1": [1]}}, {"at": 1, "coeffs": {"2": [1]}}]}"#,
            "/places/1/at",
        ),
        ("genus", "--input", r#"{"p": 6, "places": []}"#, "/p"),
        ("genus", "--input", r#"{"p": 3, "places": [{"label": "P", "valuations": {"3": 0}}]}"#, "/places/0/valuations"),
        ("genus", "--input", r#"{"p": 3, "places": [{"label": "P"}]}"#, "/places/0"),
        (
            "genus",
            "--input",
            r#"{"p": 2, "places": [{"label": "P", "stream": {"stream": [[1, 0]], "sup": "1/2"}}]}"#,
            "/places/0/stream/sup_attained",
        ),
        (
            "genus",
            "--input",
            r#"{"p": 2, "places": [{"label": "P", "stream": {"stream": [[3, 0]], "sup_attained": true, "sup": 1}}]}"#,
            "/places/0/stream/stream",
        ),
        ("frobenius", "--input", r#"{"field": {"p": 2}, "witt": {"coords": [{"num": [1]}]}, "point": {"field": {"p": 2}, "z": 0}}"#, "/witt/coords"),
        (
            "frobenius",
            "--input",
            r#"{"field": {"p": 2}, "witt": {"coords": [{"num": [1]}, {"num": [1], "den": [0]}]}, "point": {"field": {"p": 2}, "z": 0}}"#,
            "/witt/coords/1/den",
        ),
    ];
    assert!(cases.len() >= 20);
    for (i, (cmd, flag, body, pointer)) in cases.iter().enumerate() {
        let path = temp(&format!("bad{i}.json"), body);
        let mut args = vec![*cmd, *flag, path.as_str()];
        match *cmd {
            "symbol" => {
                if *flag == "--form" {
                    args.extend(["--unit", &unit]);
                } else {
                    args.extend(["--form", &form]);
                }
                args.extend(["--n", "1"]);
            }
            "genus" => args.extend(["--nmax", "2"]),
            _ => args.extend(["--n", "2"]),
        }
        let o = zptower(&args);
        assert_eq!(o.status.code(), Some(2), "case {i}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "case {i}");
        let err: ErrorEnvelope = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err.error.kind, "malformed_input", "case {i}");
        assert_eq!(err.error.pointer.as_deref(), Some(*pointer), "case {i}: {}", err.error.message);
    }
}

#[test]
fn domain_errors_exit_1() {
    let nonnormal = temp("nonnormal.json", r#"{"field": {"p": 3}, "places": [{"at": "inf", "coeffs": {"1": [0, 1]}}]}"#);
    let short = temp("short.json", r#"{"p": 2, "places": [{"label": "P", "stream": {"stream": [[1, 0], [3, 1]]}}]}"#);
    for (args, kind) in [
        (vec!["genus", "--input", nonnormal.as_str(), "--nmax", "2"], "not_normalized"),
        (vec!["stability", "--input", short.as_str()], "horizon_too_small"),
        (vec!["genus", "--input", short.as_str(), "--nmax", "3"], "horizon_too_small"),
    ] {
        let o = zptower(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err: ErrorEnvelope = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err.error.kind, kind);
    }
}
