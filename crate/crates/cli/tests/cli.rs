use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cbasis-{}-{test}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn cbasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn implication_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| l.contains("->")).collect()
}

fn save(path: &Path, out: &Output) {
    assert_eq!(out.status.code(), Some(0), "{}", stderr(out));
    fs::write(path, &out.stdout).unwrap();
}

#[test]
fn d_basis_of_ten_sets_and_a_single_sweep() {
    let dir = scratch("ten");
    let out = cbasis(&["basis", "--kind", "d", "--from", &data("ten-sets.fam")]);
    let text = stdout(&out);
    let lines = implication_lines(&text);
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"5 -> 4") && lines.contains(&"1 2 3 -> 5"));

    let imp = dir.join("ten.imp");
    save(&imp, &out);
    let closed = cbasis(&[
        "closure", "--basis", imp.to_str().unwrap(), "--set", "1 5", "--algorithm", "ordered",
    ]);
    assert_eq!(closed.status.code(), Some(0));
    assert_eq!(stdout(&closed).trim(), "1 2 3 4 5");

    for algorithm in ["folklore", "forward", "wild"] {
        let out = cbasis(&["closure", "--basis", imp.to_str().unwrap(), "--set", "1 5", "--algorithm", algorithm]);
        assert_eq!(stdout(&out).trim(), "1 2 3 4 5", "{algorithm}");
    }
    let phi = cbasis(&["closure", "--system", &data("ten-sets.fam"), "--set", "1 5"]);
    assert_eq!(stdout(&phi).trim(), "1 2 3 4 5");
}

#[test]
fn built_bases_verify_as_ordered_direct() {
    let dir = scratch("round");
    let cases = [
        ("ten-sets.fam", "d", "unit", "none"),
        ("ten-sets.fam", "d", "aggregated", "none"),
        ("ten-sets.fam", "delta", "unit", "binary-first"),
        ("lower-bounded.fam", "d", "unit", "none"),
        ("lower-bounded.fam", "d-plus", "unit", "none"),
        ("lower-bounded.fam", "e", "unit", "rank"),
        ("lower-bounded.fam", "e", "aggregated", "none"),
        ("unorderable.fam", "d", "unit", "none"),
        ("five-points.fam", "d", "aggregated", "rank"),
    ];
    for (i, (system, kind, form, order)) in cases.into_iter().enumerate() {
        let out = cbasis(&[
            "basis", "--kind", kind, "--form", form, "--order", order, "--from", &data(system),
        ]);
        let imp = dir.join(format!("{i}.imp"));
        save(&imp, &out);
        let verified = cbasis(&["verify", "--ordered-direct", imp.to_str().unwrap(), "--system", &data(system)]);
        assert_eq!(verified.status.code(), Some(0), "{system} {kind} {form} {order}: {}", stdout(&verified));
    }
}

#[test]
fn canonical_basis_of_the_unorderable_system_fails_with_a_witness() {
    let out = cbasis(&[
        "verify",
        "--ordered-direct",
        &data("aggregated-unorderable-canonical.imp"),
        "--system",
        &data("aggregated-unorderable.fam"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("witness: 1 2 3"), "{text}");

    let searched = cbasis(&[
        "order",
        "--search",
        &data("aggregated-unorderable-canonical.imp"),
        "--system",
        &data("aggregated-unorderable.fam"),
    ]);
    assert_eq!(searched.status.code(), Some(1));
}

#[test]
fn order_search_repairs_a_shuffled_d_basis() {
    let dir = scratch("order");
    let out = cbasis(&["basis", "--kind", "d", "--from", &data("ten-sets.fam")]);
    let mut lines: Vec<String> = implication_lines(&stdout(&out)).into_iter().map(String::from).collect();
    lines.reverse();
    let shuffled = dir.join("reversed.imp");
    fs::write(&shuffled, lines.join("\n")).unwrap();
    let bad = cbasis(&["verify", "--ordered-direct", shuffled.to_str().unwrap(), "--system", &data("ten-sets.fam")]);
    assert_eq!(bad.status.code(), Some(1));

    let found = cbasis(&["order", "--search", shuffled.to_str().unwrap(), "--system", &data("ten-sets.fam")]);
    let repaired = dir.join("repaired.imp");
    save(&repaired, &found);
    let good = cbasis(&["verify", "--ordered-direct", repaired.to_str().unwrap(), "--system", &data("ten-sets.fam")]);
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn exit_codes_for_usage_parse_and_precondition_errors() {
    let dir = scratch("codes");
    let missing_seed = cbasis(&["generate", "--domain", "5", "--count", "2", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(missing_seed.status.code(), Some(2));
    let missing_seed = cbasis(&["bench", "--domains", "5", "--trials", "10"]);
    assert_eq!(missing_seed.status.code(), Some(2));

    let bad = dir.join("bad.imp");
    fs::write(&bad, "1 -> 2\n1 2 3\n").unwrap();
    let out = cbasis(&["closure", "--basis", bad.to_str().unwrap(), "--set", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 2") && err.contains("1 2 3"), "{err}");

    let unknown = cbasis(&["basis", "--kind", "d", "--from", dir.join("x.txt").to_str().unwrap()]);
    assert_eq!(unknown.status.code(), Some(2));

    // φ(∅) = {1}
    let not_reduced = dir.join("nr.fam");
    fs::write(&not_reduced, "1\n1 2\n1 3\n1 2 3\n").unwrap();
    let out = cbasis(&["basis", "--kind", "d", "--from", not_reduced.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("reduce"));

    let cycle = cbasis(&["basis", "--kind", "e", "--from", &data("d-cycle.imp")]);
    assert_eq!(cycle.status.code(), Some(1));
}

#[test]
fn reduce_writes_family_and_map() {
    let dir = scratch("reduce");
    let fam = dir.join("in.fam");
    fs::write(&fam, "a\na b c\na b c d\n").unwrap();
    let out_path = dir.join("out.fam");
    let out = cbasis(&["reduce", fam.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let family = fs::read_to_string(&out_path).unwrap();
    let map = fs::read_to_string(dir.join("out.map")).unwrap();
    assert!(family.starts_with("universe: b d"), "{family}");
    assert!(map.contains("c -> b") && map.contains("a -> {}"), "{map}");

    let analyzed = cbasis(&["analyze", out_path.to_str().unwrap(), "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&analyzed.stdout).unwrap();
    assert_eq!(doc["reduced"], true);
    assert_eq!(doc["closed_sets"], 3);
}

#[test]
fn analyze_reports_sizes_and_cycles() {
    let out = cbasis(&["analyze", &data("unorderable.fam"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["basis_sizes"]["d"], 18);
    assert_eq!(doc["basis_sizes"]["d-aggregated"], 15);
    assert_eq!(doc["basis_sizes"]["dg"], 9);

    let cyc = cbasis(&["analyze", &data("d-cycle.imp"), "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&cyc.stdout).unwrap();
    assert!(doc["d_cycle"].is_array());
    assert!(doc.get("d_ranks").is_none());

    let text = stdout(&cbasis(&["analyze", &data("ten-sets.fam")]));
    assert!(text.contains("closed sets: 10") && text.contains("M*(2): {3 4}"), "{text}");
}

#[test]
fn json_outputs_parse() {
    let out = cbasis(&["basis", "--kind", "dg", "--from", &data("lower-bounded.fam"), "--json", "--report-redundant"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["implications"].as_array().unwrap().len(), 8);
    assert_eq!(doc["redundant"].as_array().unwrap().len(), 0);

    let d = cbasis(&["basis", "--kind", "d", "--from", &data("lower-bounded.fam"), "--report-redundant"]);
    assert!(stderr(&d).contains("redundant: 6 -> 1"));

    let run = cbasis(&["closure", "--basis", &data("lower-bounded-d.imp"), "--set", "2 4", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert!(doc["passes"].as_u64().unwrap() >= 2);
}

#[test]
fn generate_and_bench_are_reproducible() {
    let dir = scratch("gen");
    let args = |sub: &str| {
        vec![
            "generate".to_string(),
            "--domain".into(),
            "6".into(),
            "--count".into(),
            "3".into(),
            "--seed".into(),
            "11".into(),
            "--out-dir".into(),
            dir.join(sub).to_str().unwrap().to_string(),
        ]
    };
    for sub in ["a", "b"] {
        let a: Vec<String> = args(sub);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(cbasis(&refs).status.code(), Some(0));
    }
    let names: Vec<_> = fs::read_dir(dir.join("a")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 3);
    for name in names {
        assert_eq!(fs::read(dir.join("a").join(&name)).unwrap(), fs::read(dir.join("b").join(&name)).unwrap());
    }

    let csv = dir.join("bench.csv");
    let out = cbasis(&["bench", "--domains", "5..6", "--trials", "100", "--seed", "4", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("domain,closed_sets_bucket,basis,metric,mean,stddev,trials,seed\n"));
    assert!(text.lines().skip(1).any(|l| l.starts_with("6,")));
    let again = cbasis(&["bench", "--domains", "5..6", "--trials", "100", "--seed", "4"]);
    assert_eq!(stdout(&again), text);
}
