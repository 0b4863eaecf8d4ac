use cover_census::cli::run;
use serde_json::Value;

fn report(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["cover-census"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn lens_example() {
    let (code, r) = report(&["lens", "7", "1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["homeomorphic"], false);
    let (_, r) = report(&["lens", "5", "2", "3"]);
    assert_eq!(r["results"]["homeomorphic"], true);
}

#[test]
fn fuchsian_example() {
    let (code, r) = report(&["fuchsian", "sig:0,1;2,3", "en", "-n", "2", "--lattice"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["e_n"], 1);
    assert_eq!(r["results"]["lattice"]["count"], 1);
}

#[test]
fn verdict_examples() {
    let (code, r) = report(&["verdict", "S1xS2 # S1xS2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["verdict"], "Exceptional");
    let (_, r) = report(&["--verify", "verdict", "2*S1xS2 # L(5,1)"]);
    assert_eq!(r["results"]["verdict"], "NotExceptional");
    assert_eq!(r["witness"]["verified"], true);
    let (_, r) = report(&["--verify", "verdict", "sph:P48"]);
    assert_eq!(r["witness"]["kind"], "Group");
    assert_eq!(r["witness"]["verified"], true);
}

#[test]
fn counts() {
    let (_, r) = report(&["count", "sn", "free:2", "-n", "3"]);
    assert_eq!(r["results"]["s_n"], 13);
    let (_, r) = report(&["count", "sn", "abelian:2", "-n", "6"]);
    assert_eq!(r["results"]["s_n"], 12);
    let (_, r) = report(&["count", "en", "sig:0,1;2,3", "-n", "6"]);
    assert_eq!(r["results"]["e_n"], 4);
    let (code, _) = report(&["count", "en", "free:2", "-n", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn presentation_file() {
    let dir = std::env::temp_dir().join(format!("cover-census-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.txt");
    std::fs::write(&path, "gens: x y\nrel: x^2\nrel: y^3\nrel: (xy)^2\n").unwrap();
    let (code, r) = report(&["subgroups", path.to_str().unwrap(), "-n", "3", "--classes", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["count"], 3);
    assert_eq!(r["results"]["classes"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witnesses_verify() {
    for args in [
        vec!["--verify", "bundle", "1", "-1", "witness", "-d", "4"],
        vec!["--verify", "sol", "2", "1", "1", "1", "witness", "-d", "3"],
        vec!["--verify", "crystal", "fixture:screw3", "witness"],
        vec!["--verify", "spherical", "Q8n:2", "report"],
    ] {
        let (code, r) = report(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(r["witness"]["verified"], true, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(report(&["--max-cells", "50", "count", "sn", "free:2", "-n", "6"]).0, 2);
    assert_eq!(report(&["--max-order", "100", "spherical", "P120", "report"]).0, 2);
    assert_eq!(report(&["lens", "6", "2", "1"]).0, 1);
    assert_eq!(report(&["verdict", "S1x~S2 # S1xS2"]).0, 1);
    assert_eq!(report(&["nonsense"]).0, 1);
    assert_eq!(report(&["count", "sn", "/no/such/file", "-n", "2"]).0, 1);
}

#[test]
fn reports_are_deterministic() {
    let args = ["spherical", "D:2,1", "report"];
    let a = without_timing(report(&args).1);
    let b = without_timing(report(&args).1);
    assert_eq!(a, b);
    assert_eq!(a["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(a["command"], "spherical");
}

#[test]
fn text_format() {
    let out = run(["cover-census", "--format", "text", "lens", "7", "1", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("not homeomorphic"));
}
