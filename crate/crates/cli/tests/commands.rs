mod common;

use common::*;
use frobsub_cli::{EXIT_CEILING, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn verify_b3() {
    let run = cli(&["verify", "b3.toml"]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    let r = &run.report.unwrap()["result"];
    assert_eq!(r["d"], "4/3");
    assert_eq!(r["passed"], true);
    assert_eq!(r["expected_d_matches"], true);
    assert!(run.stdout.contains("result: all checks pass"));
}

#[test]
fn solve_family_reports_confirmation_blocks() {
    let run = cli(&["solve-family", "b3_family.toml"]);
    assert_eq!(run.code, EXIT_OK);
    let r = &run.report.unwrap()["result"];
    let confirmed = r["solution"]["confirmed"].as_array().unwrap();
    assert_eq!(confirmed.len(), 3);
    for block in confirmed {
        assert_eq!(block["verdict"], "natural");
        assert_eq!(block["oracle_passed"], true);
    }
    assert!(r["generators"].as_array().unwrap().iter().all(|g| g["provenance"].is_array()));
}

#[test]
fn strict_non_root_exits_ten() {
    let run = cli(&["submanifold-check", "b3_family.toml", "--set", "k2=1", "--strict"]);
    assert_eq!(run.code, EXIT_NEGATIVE);
    assert_eq!(run.report.unwrap()["result"]["criterion"]["verdict"], "not-natural");
    let lenient = cli(&["submanifold-check", "b3_family.toml", "--set", "k2=1"]);
    assert_eq!(lenient.code, EXIT_OK);
}

#[test]
fn strict_passes_for_a_root() {
    let run = cli(&["--strict", "submanifold-check", "b3_family.toml", "--set", "k2=3/2"]);
    assert_eq!(run.code, EXIT_OK);
}

#[test]
fn classify_requires_a_hypersurface() {
    let run = cli(&["classify", "b3_times_line_codim2.toml"]);
    assert_eq!(run.code, EXIT_INPUT);
    assert!(run.stderr.contains("codimension 2"), "{}", run.stderr);
    let run = cli(&["classify", "b3_family.toml", "--set", "k2=-1/2"]);
    assert_eq!(run.code, EXIT_OK);
    let c = &run.report.unwrap()["result"]["classification"];
    assert_eq!(c["case"], "unit-tangent");
    assert_eq!(c["via"], "euler-tangent");
}

#[test]
fn missing_submanifold_section() {
    let run = cli(&["submanifold-check", "b3.toml"]);
    assert_eq!(run.code, EXIT_INPUT);
    assert!(run.stderr.contains("[submanifold]"));
}

#[test]
fn bad_settings() {
    for set in ["k3=1", "k2", "k2=x"] {
        let run = cli(&["submanifold-check", "b3_family.toml", "--set", set]);
        assert_eq!(run.code, EXIT_INPUT, "{set}");
        assert!(run.stderr.starts_with("error: "), "{}", run.stderr);
    }
}

#[test]
fn validation_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("frobsub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("asym.toml");
    std::fs::write(
        &path,
        "[manifold]\ncoordinates = [\"a\", \"b\"]\nprepotential = \"a^3\"\nmetric = [[1, 2], [0, 1]]\nunit = \"d_a\"\n",
    )
    .unwrap();
    let run = cli(&["verify", path.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_INPUT);
    assert!(run.stderr.contains("manifold.metric: metric not symmetric"), "{}", run.stderr);
    let run = cli(&["verify", dir.join("missing.toml").to_str().unwrap()]);
    assert_eq!(run.code, EXIT_INPUT);
}

#[test]
fn term_ceiling_exits_three() {
    let run = cli(&["verify", "b3.toml", "--term-ceiling", "2"]);
    assert_eq!(run.code, EXIT_CEILING);
    assert!(run.stderr.contains("ceiling"), "{}", run.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(cli(&[]).code, EXIT_INPUT);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn json_reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("frobsub-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for (out, path) in [(&a, "a"), (&b, "b")] {
        let run = cli(&["solve-family", "b3_family.toml", "--json", out.to_str().unwrap()]);
        assert_eq!(run.code, EXIT_OK, "{path}");
    }
    let read = |p: &std::path::Path| -> Value {
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    let (ja, jb) = (read(&a), read(&b));
    assert!(ja["timing"]["elapsed_ms"].is_u64());
    let (ja, jb) = (without_timing(ja), without_timing(jb));
    assert_eq!(
        serde_json::to_string_pretty(&ja).unwrap(),
        serde_json::to_string_pretty(&jb).unwrap()
    );
    assert_eq!(ja["manifest"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn construct_product_round_trips_through_a_manifest() {
    let dir = std::env::temp_dir().join(format!("frobsub-product-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("product.toml");
    let run = cli(&["construct-product", "one_dim.toml", "--emit", out.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_OK);
    let again = cli(&["verify", out.to_str().unwrap(), "--strict"]);
    assert_eq!(again.code, EXIT_OK, "{}", again.stdout);
    assert_eq!(again.report.unwrap()["result"]["d"], "2");
}

#[test]
fn product_of_b3_is_reported_as_failing() {
    let run = cli(&["construct-product", "b3.toml", "--strict"]);
    assert_eq!(run.code, EXIT_NEGATIVE);
    let r = &run.report.unwrap()["result"];
    assert_eq!(r["axioms"]["euler_product"]["passed"], false);
    assert_eq!(r["axioms"]["associativity"]["passed"], true);
}
