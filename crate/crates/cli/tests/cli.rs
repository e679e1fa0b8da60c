use std::path::PathBuf;
use std::process::{Command, Output};

use tmln::kbformat::parse;
use tmln::network::ground;
use tmln::report::GroundReport;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn tmln(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmln")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_kb(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tmln-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn oresme() -> String {
    data("oresme.tmln").display().to_string()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(tmln(&["validate", &oresme()]).status.code(), Some(0));

    let bad = temp_kb("bad.tmln", "sort S\ntimeline 0 9\nconst A : S\npred P(S)\nfact P(A, 1, 2) : 1.5\n");
    let o = tmln(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().filter(|l| l.contains("error:")).count(), 1, "{err}");
    assert!(err.starts_with(&format!("{}:5:", bad.display())), "{err}");

    let o = tmln(&["validate", "/nonexistent/kb.tmln"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tmln(&["map", &oresme()]).status.code(), Some(2));
    assert_eq!(tmln(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ground_lists_rule_weights() {
    let o = tmln(&["ground", &oresme()]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rules: Vec<&str> = out.lines().filter(|l| l.starts_with('{')).collect();
    assert_eq!(rules.len(), 3, "{out}");
    for w in [": 0.4  [R1]", ": 0.5  [R1]", ": 0.8  [R2]"] {
        assert!(rules.iter().any(|l| l.ends_with(w)), "missing {w} in {out}");
    }
}

#[test]
fn ground_json_round_trips() {
    let o = tmln(&["ground", "--json", &oresme()]);
    assert!(o.status.success());
    let r: GroundReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.schema_version, 1);
    let m = parse(&std::fs::read_to_string(data("oresme.tmln")).unwrap()).unwrap();
    let mi = ground(&m).unwrap().instantiation;
    assert_eq!(r.formulae.len(), mi.len());
    for rec in &r.formulae {
        assert_eq!(mi.weight(&rec.item.formula), Some(rec.item.weight), "{}", rec.text);
    }
}

#[test]
fn map_concludes_against_peasant_origin() {
    let o = tmln(&["map", &oresme(), "--delta", "tCon", "--query", "PeasantFamily(*,*,*)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("conclusion (!PeasantFamily(NO,TMIN,TMAX), 0.8)"), "{out}");
}

#[test]
fn map_on_an_empty_kb() {
    let empty = temp_kb("empty.tmln", "timeline 0 5\n");
    let o = tmln(&["map", empty.to_str().unwrap(), "--delta", "pInc", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["strength"], "0");
    assert_eq!(v["maps"].as_array().unwrap().len(), 1);
    assert!(v["maps"][0]["formulae"].as_array().unwrap().is_empty());
}

#[test]
fn pruned_and_exhaustive_agree() {
    let args = |extra: &[&'static str]| {
        let mut a = vec!["map".to_string(), oresme(), "--delta".into(), "pCon".into(), "--sigma".into(), "rule".into(), "--full".into()];
        a.extend(extra.iter().map(|s| s.to_string()));
        a
    };
    let run = |a: Vec<String>| stdout(&tmln(&a.iter().map(String::as_str).collect::<Vec<_>>()));
    assert_eq!(run(args(&[])), run(args(&["--pruned"])));
}

#[test]
fn sweep_matches_golden_output() {
    let o = tmln(&["sweep", &oresme(), data("oresme.sweep").to_str().unwrap(), "--query", "PeasantFamily(*,*,*)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let golden = std::fs::read_to_string(data("oresme_sweep.golden")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn single_config_sweep_is_a_map() {
    let sweep = temp_kb("one.sweep", "delta=tInc sigma=thresh:0.3 theta=psum\n");
    let s = tmln(&["sweep", &oresme(), sweep.to_str().unwrap(), "--json"]);
    let m = tmln(&["map", &oresme(), "--delta", "tInc", "--sigma", "thresh:0.3", "--theta", "psum", "--json"]);
    let s: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    let m: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(s["rows"][0], m);
}

#[test]
fn bad_sweep_line_is_named() {
    let sweep = temp_kb("bad.sweep", "delta=tCon sigma=id theta=sum\ndelta=tCon sigma=all theta=sum\n");
    let o = tmln(&["sweep", &oresme(), sweep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn check_is_reproducible() {
    let args = ["check", "--seed", "11", "--trials", "30", "--kb-trials", "8"];
    let a = tmln(&args);
    let b = tmln(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).lines().skip(1).all(|l| l.starts_with("PASS")));
}

#[test]
fn planted_mutant_is_caught() {
    let o = tmln(&["check", "--seed", "5", "--trials", "50", "--mutant", "theta-b"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL"), "{out}");
    assert!(out.contains("theta-(b)"), "{out}");
}

#[test]
fn unknown_mutant_label() {
    assert_eq!(tmln(&["check", "--mutant", "omega-z"]).status.code(), Some(2));
}

#[test]
fn oracle_compare_matches() {
    let o = tmln(&["oracle-compare", &oresme()]);
    assert!(o.status.success(), "{}", stdout(&o));

    let empty = temp_kb("empty-oracle.tmln", "timeline 0 5\n");
    assert!(tmln(&["oracle-compare", empty.to_str().unwrap()]).status.success());

    let o = tmln(&["oracle-compare", "--random", "5", "--seed", "9", "--delta", "pInc", "--theta", "psum", "--json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["matched"] == true));
}

#[test]
fn oracle_compare_needs_an_input() {
    assert_eq!(tmln(&["oracle-compare"]).status.code(), Some(2));
}
