use std::process::{Command, Output};

use serde_json::Value;

fn infsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infsg"))
        .args(args)
        .env_remove("INFSG_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = infsg(args);
    assert!(o.status.success(), "{o:?}");
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_prints_values() {
    for (expr, want) in [
        ("a*b", "e\n"),
        ("b*a", "b a\n"),
        ("b^2 a^1 * w(b*a)", "b^2\n"),
        ("wrev(a) * w(b)", "O\n"),
        ("w(a)", "O\n"),
        ("a*a*z(a*b)*b*b", "e\n"),
        ("b^0 a^0", "e\n"),
    ] {
        let o = infsg(&["eval", expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}");
        assert_eq!(stdout(&o), want, "{expr}");
    }
}

#[test]
fn eval_trace_shows_subterms() {
    let o = infsg(&["eval", "b * w(a*b)", "--trace"]);
    let text = stdout(&o);
    assert!(text.starts_with("b  <=  b * w(a * b)\n"), "{text}");
    assert!(text.contains("  e  <=  w(a * b)\n"), "{text}");
    assert!(text.ends_with("= b\n"), "{text}");
}

#[test]
fn eval_json_schema() {
    let v = json(&["eval", "b^2 a^3 * z(b*a)", "--json"]);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["input"], "b^2 a^3 * z(b*a)");
    assert_eq!(
        v["value"],
        serde_json::json!({"kind": "normal", "n": 2, "m": 3})
    );
    assert!(v.get("trace").is_none());
    let v = json(&["eval", "O * a", "--json", "--trace"]);
    assert_eq!(v["value"], serde_json::json!({"kind": "absorb"}));
    assert_eq!(v["trace"]["children"].as_array().unwrap().len(), 2);
}

#[test]
fn json_is_deterministic_apart_from_wall_time() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let args = ["check", "axioms", "--seed", "9", "--cases", "200", "--json"];
    assert_eq!(strip(json(&args)), strip(json(&args)));
    let args = ["word", "families", "abab", "--json"];
    assert_eq!(strip(json(&args)), strip(json(&args)));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let o = infsg(&["eval", "a * c"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 4"));
    assert_eq!(infsg(&["eval", "a^4294967296"]).status.code(), Some(2));
    assert_eq!(infsg(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(infsg(&["word", "reduce", "abx"]).status.code(), Some(2));
    assert_eq!(
        infsg(&["check", "lemma", "--item", "zz"]).status.code(),
        Some(2)
    );
    assert_eq!(infsg(&["word", "degree", "ba"]).status.code(), Some(2));
    assert_eq!(infsg(&[]).status.code(), Some(2));
}

#[test]
fn length_limits_exit_4_and_echo_the_bound() {
    let o = infsg(&["word", "families", &"ab".repeat(7)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound 12"));
    let o = infsg(&["word", "degree", &"ab".repeat(9)]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(
        infsg(&["check", "lemma", "--max-len", "13"]).status.code(),
        Some(4)
    );
}

#[test]
fn word_commands() {
    assert_eq!(stdout(&infsg(&["word", "reduce", "aaababbabb"])), "e\n");
    assert_eq!(stdout(&infsg(&["word", "reduce", "bbaaa"])), "b^2 a^3\n");
    let p = stdout(&infsg(&["word", "pseudonull", "baab"]));
    assert!(
        p.starts_with("false\nreason: (p2) fails at prefix b\n"),
        "{p}"
    );
    assert!(stdout(&infsg(&["word", "pseudonull", "aaababbabb"])).starts_with("true\n"));
    assert_eq!(stdout(&infsg(&["word", "degree", "aabb"])), "2\n");
    assert_eq!(stdout(&infsg(&["word", "degree", ""])), "0\n");
    let f = stdout(&infsg(&["word", "families", "ba"]));
    assert_eq!(f, "{}  leaves ba  = b a\n1 families\n");
    let t = stdout(&infsg(&["word", "reduce", "baab", "--trace"]));
    assert!(t.starts_with("removed [2,4) ab\n"), "{t}");
    let v = json(&["word", "pseudonull", "baab", "--json"]);
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["result"]["reason"], "(p2) fails at prefix b");
}

#[test]
fn check_suites_pass() {
    for args in [
        &["check", "lemma", "--item", "f", "--max-len", "10"][..],
        &[
            "check", "axioms", "--seed", "1", "--cases", "1000", "--depth", "4",
        ],
        &["check", "oracle", "--max-block", "5"],
        &["check", "appendix", "--max-len", "8"],
    ] {
        let o = infsg(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).contains(" 0 failures"), "{}", stdout(&o));
    }
    let v = json(&[
        "check", "axioms", "--seed", "42", "--cases", "500", "--json",
    ]);
    assert_eq!(v["stats"]["failures"], 0);
    assert_eq!(v["stats"]["seed"], 42);
    assert_eq!(v["stats"]["options"]["harness"]["cases"], 500);
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("infsg.toml");
    std::fs::write(&path, "seed = 5\ncases = 50\nfamilies_max_len = 4\n").unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_infsg"))
            .args(args)
            .env("INFSG_CONFIG", &path)
            .output()
            .unwrap()
    };
    let o = run(&["check", "axioms", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stats"]["seed"], 5);
    assert_eq!(v["stats"]["options"]["harness"]["cases"], 50);
    let o = run(&["check", "axioms", "--seed", "6", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stats"]["seed"], 6);
    let o = run(&["word", "families", "ababab"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound 4"));

    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(run(&["eval", "a"]).status.code(), Some(2));
}
