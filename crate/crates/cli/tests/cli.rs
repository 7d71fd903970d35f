use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tropgrass::affine::GammaPolyhedron;
use tropgrass::curve::TropPlaneCurve;
use tropgrass::phylo::PhyloTree;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tropgrass"));
    c.env_remove("TROPGRASS_SEED");
    c
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

/// `(input file stem, subcommand, expected exit code)`.
const GOLDEN: &[(&str, &str, i32)] = &[
    ("balance_check_cubic", "balance-check", 0),
    ("block_eval", "block-eval", 0),
    ("pluecker_check_cherry", "pluecker-check", 0),
    ("pluecker_check_outside", "pluecker-check", 0),
    ("section_eval_cherry", "section-eval", 0),
    ("section_verify_caterpillar", "section-verify", 0),
    ("slope_check_line", "slope-check", 0),
    ("tree_from_pluecker_cherry", "tree-from-pluecker", 0),
    ("trop_curve_conic", "trop-curve", 0),
    ("trop_curve_weierstrass_a", "trop-curve", 0),
    ("trop_curve_weierstrass_b", "trop-curve", 0),
    ("unimodular_check_triangle", "unimodular-check", 0),
];

/// Byte-exact comparison against `<stem>.out`. Set `UPDATE_GOLDEN=1` to
/// rewrite the expected files.
#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for &(stem, cmd, code) in GOLDEN {
        let input = golden_dir().join(format!("{stem}.json"));
        let o = run(&[cmd, "--input-file", input.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{stem}: {}", String::from_utf8_lossy(&o.stderr));
        let expected = golden_dir().join(format!("{stem}.out"));
        if update {
            std::fs::write(&expected, &o.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&expected).unwrap_or_else(|_| panic!("missing {}", expected.display()));
        assert_eq!(String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&want), "{stem}");
    }
}

#[test]
fn outputs_are_deterministic() {
    for &(stem, cmd, _) in GOLDEN {
        let input = std::fs::read_to_string(golden_dir().join(format!("{stem}.json"))).unwrap();
        let a = run(&[cmd, input.trim()]);
        let b = run(&[cmd, input.trim()]);
        assert_eq!(a.stdout, b.stdout, "{stem}");
    }
}

#[test]
fn outputs_reparse_under_their_schemas() {
    let file = |s: &str| golden_dir().join(format!("{s}.json")).to_str().unwrap().to_string();
    for stem in ["trop_curve_conic", "trop_curve_weierstrass_a", "trop_curve_weierstrass_b"] {
        let v = stdout_json(&run(&["trop-curve", &file(stem)]));
        let c: TropPlaneCurve = serde_json::from_value(v["curve"].clone()).unwrap();
        // and the curve document feeds straight back into balance-check
        let text = serde_json::to_string(&c).unwrap();
        let again = stdout_json(&run(&["balance-check", &text]));
        assert_eq!(again["balanced"], Value::Bool(true));
    }
    let v = stdout_json(&run(&["tree-from-pluecker", &file("tree_from_pluecker_cherry")]));
    let t: PhyloTree = serde_json::from_value(v["tree"].clone()).unwrap();
    assert_eq!(t.n(), 4);
    let v = stdout_json(&run(&["unimodular-check", &file("unimodular_check_triangle")]));
    let p: GammaPolyhedron = serde_json::from_value(v["image"].clone()).unwrap();
    assert_eq!(p.dim(), 2);
}

#[test]
fn documented_examples() {
    let cherry = r#"{"n":4,"x":{"12":"2","13":"3","14":"3","23":"3","24":"3","34":"2"}}"#;
    let v = stdout_json(&run(&["pluecker-check", cherry]));
    assert_eq!(v["member"], Value::Bool(true));
    assert!(v["tree"].is_object());

    let six = golden_dir().join("section_verify_caterpillar.json");
    let v = stdout_json(&run(&["section-verify", six.to_str().unwrap()]));
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["pairs_checked"], Value::from(14));

    let v = stdout_json(&run(&["trop-curve", r#"{"weierstrass":{"va":"2","vb":"3"}}"#]));
    assert_eq!(v["case"], Value::from("A"));
    assert_eq!(v["tree"], Value::Bool(true));
    assert_eq!(v["curve"]["vertices"], serde_json::json!([["1", "3/2"]]));
    let v = stdout_json(&run(&["trop-curve", r#"{"weierstrass":{"va":"0","vb":"1"}}"#]));
    assert_eq!(v["case"], Value::from("B"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command", "{}"]).status.code(), Some(64));
    assert_eq!(run(&["balance-check", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["balance-check", r#"{"vertices":[]}"#]).status.code(), Some(2));
    // a ray direction that is not primitive fails validation
    let bad = r#"{"vertices":[["0","0"]],"edges":[],"rays":[{"base":0,"dir":[2,0],"weight":1}]}"#;
    assert_eq!(run(&["balance-check", bad]).status.code(), Some(2));

    let outside = r#"{"n":4,"x":{"12":"3","13":"2","14":"2","23":"2","24":"2","34":"3"}}"#;
    let o = run(&["tree-from-pluecker", outside]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["error"]["kind"], Value::from("domain"));
    assert_eq!(v["error"]["reason"], Value::from("not_member"));

    let o = run(&["trop-curve", r#"[{"exponents":[1,2],"coeff":[{"gamma":"0","r":"1"}]}]"#]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["error"]["reason"], Value::from("monomial"));

    let o = run(&["block-eval", r#"{"block":{"d":1,"r":1,"s":0,"vpi":"1"},"v":["2"],"f":[]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["error"]["reason"], Value::from("outside_skeleton"));
}

#[test]
fn convention_flag() {
    let input = std::fs::read_to_string(golden_dir().join("section_eval_cherry.json")).unwrap();
    let log = stdout_json(&run(&["section-eval", input.trim()]));
    let val = stdout_json(&run(&["section-eval", input.trim(), "--convention", "val"]));
    assert_eq!((log["value"].as_str(), log["convention"].as_str()), (Some("1"), Some("log")));
    assert_eq!((val["value"].as_str(), val["convention"].as_str()), (Some("-1"), Some("val")));

    let input = std::fs::read_to_string(golden_dir().join("block_eval.json")).unwrap();
    let val = stdout_json(&run(&["block-eval", input.trim()]));
    let log = stdout_json(&run(&["block-eval", input.trim(), "--convention", "log"]));
    assert_eq!(val["value"].as_str(), Some("1"));
    assert_eq!(log["value"].as_str(), Some("-1"));
}

#[test]
fn seed_controls_the_sampled_panel() {
    let six = golden_dir().join("section_verify_caterpillar.json");
    let with = |seed: &str| {
        let o = bin().args(["section-verify", six.to_str().unwrap()]).env("TROPGRASS_SEED", seed).output().unwrap();
        stdout_json(&o)
    };
    assert_eq!(with("5"), with("5"));
    assert_eq!(with("5")["well_defined"]["seed"], Value::from(5));
    let bad = bin().args(["section-verify", six.to_str().unwrap()]).env("TROPGRASS_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn files_svg_and_batch() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let svg = dir.path().join("curve.svg");
    let input = r#"{"weierstrass":{"va":"0","vb":"1"}}"#;
    let o = run(&["trop-curve", input, "-o", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["case"], Value::from("B"));
    let drawing = std::fs::read_to_string(&svg).unwrap();
    assert!(drawing.starts_with("<svg") && drawing.trim_end().ends_with("</svg>"));
    // one path per edge and per ray
    assert_eq!(drawing.matches("<path").count(), 5);
    let direct = run(&["trop-curve", input, "--format", "svg"]);
    assert_eq!(String::from_utf8(direct.stdout).unwrap(), drawing);

    let batch = r#"[{"weierstrass":{"va":"2","vb":"3"}}, {"weierstrass":{"va":"0","vb":"1"}}, []]"#;
    let o = run(&["trop-curve", "--batch", batch]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[0]["case"], Value::from("A"));
    assert_eq!(items[1]["case"], Value::from("B"));
    assert_eq!(items[2]["error"]["reason"], Value::from("zero_polynomial"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["block-eval"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let input = std::fs::read(golden_dir().join("block_eval.json")).unwrap();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["v0"], Value::from("1"));
}
