use std::collections::HashSet;
use std::process::{Command, Output};

use serde_json::Value;

fn mediant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mediant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mediant(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).expect("valid json")
}

/// Minimal check of the DOT subset we emit: a single digraph whose body is
/// node statements, `"a" [label="..."];` and `"a" -> "b";` with an optional
/// label. Returns (node ids, edges).
fn parse_dot(text: &str) -> (Vec<String>, Vec<(String, String)>) {
    fn quoted(s: &str) -> (String, &str) {
        let s = s.strip_prefix('"').expect("opening quote");
        let mut id = String::new();
        let mut chars = s.char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => id.push(chars.next().expect("escape").1),
                '"' => return (id, &s[i + 1..]),
                _ => id.push(c),
            }
        }
        panic!("unterminated string in {s}");
    }
    fn attrs(rest: &str) {
        let rest = rest.trim();
        if rest == ";" {
            return;
        }
        let inner = rest
            .strip_prefix("[label=")
            .and_then(|r| r.strip_suffix("];"))
            .unwrap_or_else(|| panic!("bad attributes {rest:?}"));
        let (_, tail) = quoted(inner);
        assert!(tail.is_empty(), "trailing {tail:?}");
    }

    let mut lines = text.lines();
    let header = lines.next().expect("header");
    assert!(header.starts_with("digraph ") && header.ends_with(" {"), "{header}");
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut closed = false;
    for line in lines {
        let line = line.trim();
        assert!(!closed, "content after closing brace: {line}");
        if line == "}" {
            closed = true;
        } else if line.starts_with("node ") {
            assert!(line.ends_with(';'));
        } else {
            let (from, rest) = quoted(line);
            if let Some(rest) = rest.trim_start().strip_prefix("->") {
                let (to, rest) = quoted(rest.trim_start());
                attrs(rest);
                edges.push((from, to));
            } else {
                attrs(rest);
                nodes.push(from);
            }
        }
    }
    assert!(closed, "missing closing brace");
    (nodes, edges)
}

#[test]
fn tree_text_levels() {
    assert_eq!(
        stdout(&["tree", "--kind", "cw", "--depth", "2"]),
        "1/1\n1/2 2/1\n1/3 3/2 2/3 3/1\n"
    );
    assert_eq!(
        stdout(&["tree", "--kind", "sb", "--depth", "2"]),
        "1/1\n1/2 2/1\n1/3 2/3 3/2 3/1\n"
    );
}

#[test]
fn dot_output_is_a_well_formed_tree() {
    for kind in ["cw", "sb", "matrix", "topograph"] {
        for depth in [0usize, 1, 4] {
            let d = depth.to_string();
            let text = stdout(&["tree", "--kind", kind, "--depth", &d, "--format", "dot"]);
            let (nodes, edges) = parse_dot(&text);
            assert_eq!(nodes.len(), (1 << (depth + 1)) - 1, "{kind} {depth}");
            assert_eq!(edges.len(), (1 << (depth + 1)) - 2, "{kind} {depth}");
            let ids: HashSet<&String> = nodes.iter().collect();
            assert_eq!(ids.len(), nodes.len());
            let mut targets = HashSet::new();
            for (from, to) in &edges {
                assert!(ids.contains(from) && ids.contains(to));
                assert!(targets.insert(to), "{to} has two parents");
            }
            assert!(!targets.contains(&"root".to_string()));
        }
    }
}

#[test]
fn topograph_subcommand_matches_tree_kind() {
    let a = stdout(&["topograph", "--depth", "3", "--format", "dot"]);
    let b = stdout(&["tree", "--kind", "topograph", "--depth", "3", "--format", "dot"]);
    assert_eq!(a, b);
    let frames = json(&["topograph", "--depth", "1", "--format", "json"]);
    assert_eq!(frames[0]["left"], "0/1");
    assert_eq!(frames[0]["right"], "1/0");
    assert_eq!(frames[0]["forward"], "1/1");
    assert_eq!(frames[2]["path"], "R");
    assert_eq!(frames[2]["forward"], "2/1");
}

#[test]
fn json_tree_round_trips() {
    let v = json(&["tree", "--kind", "matrix", "--depth", "3", "--format", "json"]);
    let items = v.as_array().expect("array");
    assert_eq!(items.len(), 15);
    assert_eq!(items[10]["value"], "[[3,2],[1,1]]");
    assert_eq!(items[10]["path"], "LRR");
    let again = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
}

#[test]
fn locate_reports_path_and_index() {
    let v = json(&["locate", "--tree", "cw", "4/3"]);
    assert_eq!(v["path"], "LLR");
    assert_eq!(v["bfs_index"], 8);
    let v = json(&["locate", "--tree", "sb", "3/5"]);
    assert_eq!(v["path"], "LRL");
}

#[test]
fn sequences() {
    assert_eq!(stdout(&["stern", "--count", "10"]), "0\n1\n1\n2\n1\n3\n2\n3\n1\n4\n");
    assert_eq!(stdout(&["fusc", "8"]), "4\n");
    assert_eq!(stdout(&["fusc", "0"]), "1\n");
}

#[test]
fn farey_and_approx() {
    let v = json(&["farey", "--max-den", "3"]);
    assert_eq!(v, serde_json::json!(["0/1", "1/3", "1/2", "2/3", "1/1"]));
    let v = json(&["approx", "--target", "3.14159", "--max-den", "10"]);
    assert_eq!(v["value"], "22/7");
    let v = json(&["approx", "--target", "355/113", "--max-den", "200"]);
    assert_eq!(v["value"], "355/113");
    assert_eq!(v["error"], "0/1");
}

#[test]
fn verify_succeeds_with_any_job_count() {
    let base = mediant(&["verify", "--depth", "8"]);
    assert_eq!(base.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&base.stdout).unwrap();
    assert_eq!(report["theorem"]["nodes"], 511);
    assert_eq!(report["theorem"]["cw_failures"], 0);
    assert_eq!(report["topograph"]["nodes"], 511);
    assert!(report["theorem"].get("first_failure_path").is_none());
    for jobs in ["2", "4"] {
        let out = mediant(&["verify", "--depth", "8", "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(out.stdout, base.stdout, "report differs with {jobs} jobs");
    }
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["tree", "--kind", "nope", "--depth", "2"],
        &["tree", "--kind", "cw", "--depth", "21"],
        &["tree", "--kind", "cw", "--depth", "5", "--max-depth-cap", "4"],
        &["verify", "--depth", "30"],
        &["locate", "--tree", "cw", "0/1"],
        &["locate", "--tree", "cw", "-3/4"],
        &["locate", "--tree", "matrix", "1/2"],
        &["locate", "--tree", "cw", "1/0"],
        &["approx", "--target", "1/0", "--max-den", "3"],
        &["approx", "--target", "pi", "--max-den", "3"],
        &["approx", "--target", "1/2", "--max-den", "0"],
        &["farey", "--max-den", "0"],
        &["fusc"],
        &["bogus"],
    ];
    for args in cases {
        let out = mediant(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
        assert!(!out.stderr.is_empty(), "{args:?} gave no message");
    }
}

#[test]
fn depth_cap_is_configurable() {
    let out = stdout(&["--max-depth-cap", "3", "tree", "--kind", "sb", "--depth", "3"]);
    assert_eq!(out.lines().count(), 4);
    let out = mediant(&["--max-depth-cap", "3", "topograph", "--depth", "4"]);
    assert_eq!(out.status.code(), Some(2));
}
