use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("klr").chain(args.iter().copied());
    let code = klr::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn decompose_example() {
    let (code, v) = run_json(&[
        "decompose", "--type", "B", "--rank", "3", "--lambda", "1,1,3", "--string", "3,3,3,0,4,3,5,2,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["eta"], 9);
    assert_eq!(v["bound"], 21);
    let pairs = |k: usize| -> Vec<(i64, i64)> {
        v["blocks"][k]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| (f["a"].as_i64().unwrap(), f["b"].as_i64().unwrap()))
            .collect()
    };
    assert_eq!(pairs(0), [(-3, 0), (-3, 3)]);
    assert_eq!(pairs(1), [(-2, -3), (-2, 0), (-2, 3)]);
    assert_eq!(pairs(2), [(-1, -2), (-1, 0), (-1, 2), (-1, 1)]);
    assert_eq!(v["theta"][2], serde_json::json!([1, 0, 1, 0, 1, 1]));
}

#[test]
fn w0_g2() {
    let (code, v) = run_json(&["w0", "--type", "G", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["word"], serde_json::json!([1, 2, 1, 2, 1, 2]));
    assert_eq!(v["length"], 6);
    assert_eq!(v["verified"], true);
}

#[test]
fn enumerate_a1() {
    let (code, v) = run_json(&["enumerate", "--type", "A", "--rank", "1", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([[0], [1], [2]]));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["decompose", "--type", "B", "--rank", "3", "--string", "9,9,9,9,9,9,9,9,9"]);
    assert_eq!(code, 1);
    assert!(err.contains("cone"));
    assert_eq!(run(&["w0", "--type", "Q", "--rank", "2"]).0, 2);
    assert_eq!(run(&["w0", "--type", "D", "--rank", "2"]).0, 2);
    assert_eq!(run(&["decompose", "--type", "B", "--rank", "3", "--string", "1,2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["w0", "--type", "A", "--rank", "2", "--format", "dot"]).0, 2);
    assert_eq!(run(&["crystal", "--type", "A", "--rank", "2", "--lambda", "9,9", "--cap", "10"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn crystal_formats() {
    let args = ["crystal", "--type", "B", "--rank", "2", "--lambda", "1,0", "--format", "dot"];
    let (code, dot, _) = run(&args);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph crystal {"));
    assert_eq!(dot.matches(" [label=\"(").count(), 5);
    assert_eq!(run(&args).1, dot);
    let (_, v) = run_json(&["crystal", "--type", "B", "--rank", "2", "--lambda", "1,0"]);
    assert_eq!(v["size"], 5);
}

#[test]
fn klr_check_and_control() {
    let (code, v) = run_json(&["klr-check", "--type", "D", "--rank", "4"]);
    assert_eq!(code, 0);
    assert!(v.as_array().unwrap().iter().any(|m| m["dimension"] == 2));
    let (code, v) = run_json(&["klr-check", "--type", "B", "--rank", "3", "--a", "-1", "--b", "1", "--corrupt"]);
    assert_eq!(code, 1);
    let failures = v[0]["failures"].as_array().unwrap();
    assert!(failures.iter().all(|f| f["status"] == "fail"));
    assert!(failures.iter().any(|f| f["relation"] == "dot-crossing" && !f["basis_element"].is_null()));
    assert_eq!(run(&["klr-check", "--type", "B", "--rank", "3", "--a", "7", "--b", "1"]).0, 2);
}

#[test]
fn character_and_serre() {
    let (code, v) = run_json(&["character", "--type", "A", "--rank", "2", "--lambda", "1,1", "--string", "1,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["serre"]["passed"], true);
    let dim: u64 = v["terms"].as_array().unwrap().iter().map(|t| t["coefficient"].as_u64().unwrap()).sum();
    assert_eq!(v["dimension"].as_u64().unwrap(), dim);
}

#[test]
fn example_and_verify() {
    let (code, v) = run_json(&["example-b3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (code, v) = run_json(&["verify", "--criterion", "3,8"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(run(&["verify", "--criterion", "9"]).0, 2);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("klr-cli-test-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["w0", "--type", "E", "--rank", "8", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("length 120 / positive roots 120"));
    std::fs::remove_file(path).unwrap();
}
