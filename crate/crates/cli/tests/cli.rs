use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Out {
    code: i32,
    stdout: String,
    json: Value,
}

fn gwpt(args: &[&str], stdin: &str) -> Out {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gwpt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Out { code: out.status.code().unwrap(), stdout, json }
}

fn ok(args: &[&str], stdin: &str) -> Value {
    let out = gwpt(args, stdin);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stdout);
    assert_eq!(out.json["status"], "ok");
    out.json["payload"].clone()
}

fn trivalent() -> String {
    gwpt_cli::star_json(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([-1, -1, 0], 1)]).to_string()
}

fn four_valent(n: i64) -> String {
    gwpt_cli::star_json(&[([1, 0, 0], 1), ([0, 1, 0], 1), ([1, 0, n], 1), ([-2, -1, -n], 1)]).to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["series", "principal", "--side", "pt", "--mult", "1"], ""), json!("q + q^2"));
    let out = gwpt(&["star", "multiplicity"], &trivalent());
    assert_eq!(out.stdout.trim(), r#"{"status":"ok","payload":{"n":1,"m":1,"N":1},"diagnostics":[]}"#);
    let curves = ok(&["poset", "curves4v", "--n", "5", "--case", "II"], "");
    assert_eq!(curves.as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes_follow_status() {
    for (args, stdin) in [
        (vec!["series", "bogus"], ""),
        (vec!["star", "balance"], "{not json"),
        (vec!["star", "multiplicity"], r#"{"rays":[{"dir":[1,1,0],"weight":1},{"dir":[1,-1,0],"weight":1},{"dir":[-1,0,0],"weight":4}]}"#),
        (vec!["poset", "degenerations", "--vertex-bound", "7"], &four_valent(1)),
        (vec!["series", "check", "--d", "3", "--sigma", "0", "--order", "2"], r#"{"pt":"q + q^2","gw":"1 * u^-2 + O(u^24)"}"#),
    ] {
        let out = gwpt(&args, stdin);
        assert_eq!(out.code, 1, "{args:?}");
        assert_eq!(out.json["status"], "error");
        assert!(!out.json["diagnostics"][0].as_str().unwrap().is_empty());
    }
    let out = gwpt(&["series", "check", "--d", "3", "--sigma", "0", "--order", "2"], r#"{"pt":"q + q^2","gw":"1 * u^-2 + O(u^24)"}"#);
    assert!(out.json["diagnostics"][0].as_str().unwrap().contains("insufficient truncation"));
    let out = gwpt(&["star", "multiplicity"], r#"{"rays":[{"dir":[1,1,0],"weight":1},{"dir":[1,-1,0],"weight":1},{"dir":[-1,0,0],"weight":4}]}"#);
    assert!(out.json["diagnostics"][0].as_str().unwrap().contains("not balanced"));
    assert_eq!(gwpt(&["--help"], "").code, 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["poset", "smaller", "--depth", "2", "--seed", "9"];
    let a = gwpt(&args, &four_valent(3)).stdout;
    let b = gwpt(&args, &four_valent(3)).stdout;
    assert_eq!(a, b);
    let args = ["star", "multiplicity", "--verify", "25", "--seed", "4"];
    assert_eq!(gwpt(&args, &trivalent()).stdout, gwpt(&args, &trivalent()).stdout);
}

#[test]
fn reads_a_file_argument() {
    let dir = std::env::temp_dir().join(format!("gwpt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("star.json");
    std::fs::write(&path, trivalent()).unwrap();
    assert_eq!(ok(&["star", "balance", path.to_str().unwrap()], ""), json!({"balanced": true}));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn producers_feed_consumers() {
    let catalog = ok(&["poset", "degenerations", "--vertex-bound", "3"], &four_valent(2));
    let n = catalog["complexes"].as_array().unwrap().len();
    assert!(n > 0);
    let text = catalog.to_string();
    let visible = ok(&["complex", "visible"], &text);
    assert_eq!(visible.as_array().unwrap().len(), n);
    assert!(visible.as_array().unwrap().iter().all(|v| v["visible"] == true));
    let stabilized = ok(&["complex", "stabilize"], &text);
    assert_eq!(stabilized, catalog["complexes"]);
    let stars = ok(&["complex", "asymptotic-star"], &text);
    let balanced = ok(&["star", "balance"], &stars.to_string());
    assert!(balanced.as_array().unwrap().iter().all(|v| v["balanced"] == true));
    assert_eq!(ok(&["star", "balance"], &catalog["source"].to_string()), json!({"balanced": true}));

    let curves = ok(&["poset", "curves4v", "--n", "4", "--case", "I"], "");
    assert_eq!(ok(&["complex", "stabilize"], &curves.to_string()), curves);
    let one = curves[0].to_string();
    assert_eq!(ok(&["complex", "visible"], &one), json!({"visible": true}));

    let smaller = ok(&["poset", "smaller", "--depth", "1"], &four_valent(1));
    let mults = ok(&["star", "multiplicity"], &smaller.to_string());
    assert!(mults.as_array().unwrap().iter().any(|m| m == &json!({"n": 1, "m": 1, "N": 1})));

    let star = r#"{"rays":[{"dir":[1,2,3],"weight":2},{"dir":[0,1,1],"weight":6},{"dir":[-1,-5,-6],"weight":2}]}"#;
    let normal = ok(&["star", "normalize"], star);
    assert_eq!(ok(&["star", "multiplicity"], &normal.to_string()), ok(&["star", "multiplicity"], star));
}

#[test]
fn series_round_trip() {
    for n in 1..=4 {
        let n = n.to_string();
        let pt = ok(&["series", "principal", "--side", "pt", "--mult", &n], "");
        let gw = ok(&["series", "principal", "--side", "gw", "--mult", &n, "--order", "24"], "");
        let pair = json!({ "pt": pt, "gw": gw }).to_string();
        let fit = ok(&["series", "fit"], &pair);
        let (d, sigma) = (fit["d"].to_string(), fit["sigma"].to_string());
        assert_eq!(fit["unit"], "1");
        let check = ok(&["series", "check", "--d", &d, "--sigma", &sigma, "--order", "24"], &pair);
        assert_eq!(check, json!({"pass": true, "first_mismatch_exponent": null}));
        assert_eq!(ok(&["series", "is-laurent-poly"], &pt.to_string())["laurent_polynomial"], true);
    }
    for side in ["gw", "pt"] {
        let a = ok(&["series", "linear", "--side", side, "--d", "3", "--ell", "1"], "");
        let glued = ok(&["series", "glue", "--side", side, "--mu", "((3))"], &json!([a, a]).to_string());
        assert_eq!(glued, a);
    }
    assert_eq!(ok(&["series", "linear", "--side", "pt", "--d", "2", "--ell", "2"], ""), json!("0"));
    let displayed = ok(&["series", "principal", "--side", "pt", "--mult", "2", "--displayed"], "");
    assert_eq!(displayed, json!("q + 2 q^2 + q^3"));
    let pair = json!({ "pt": displayed, "gw": ok(&["series", "principal", "--side", "gw", "--mult", "2", "--order", "24"], "") });
    assert_eq!(ok(&["series", "fit"], &pair.to_string()), Value::Null);
    let f = ok(&["series", "is-laurent-poly"], r#""1 / (1-(-q)^1)""#);
    assert_eq!(f["laurent_polynomial"], false);
}
