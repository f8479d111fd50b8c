//! End-to-end tests of the command-line surface: output formats, exit
//! codes, and round-tripping of emitted JSON.

use std::process::{Command, Output};

use stallings::jsonio::{ForestDto, GraphDto, ProblemDto};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stallings"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn core_emits_canonical_graph_json() {
    let out = run(&["core", "--subgroup", "b,abA"]);
    assert!(out.status.success());
    let dto: GraphDto = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dto.vertices.len(), 2);
    assert_eq!(dto.edges.len(), 3);
    // emitted JSON re-parses to an identical canonical form
    let graph = dto.to_graph().unwrap();
    let again =
        serde_json::to_string(&GraphDto::from_graph(&graph.canonical_form().unwrap().0)).unwrap();
    let first = serde_json::to_string(&dto).unwrap();
    assert_eq!(first, again);
}

#[test]
fn core_dot_output() {
    let out = run(&["core", "--subgroup", "b,abA", "--dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("doublecircle"));
}

#[test]
fn apply_maps_words() {
    let out = run(&["apply", "--images", "a=~u,b=uv", "--word", "bbabA"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "uvuvvu");
}

#[test]
fn whitehead_json_lists_pairs() {
    let out = run(&["whitehead", "--word", "bbabA", "--json"]);
    assert!(out.status.success());
    let pairs: Vec<[String; 2]> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(pairs.len(), 5);
}

#[test]
fn decompose_emits_steps_and_residual() {
    let out = run(&["decompose", "--images", "x=ab,y=b"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["steps"].as_array().is_some());
    assert!(v["residual"]["images"].as_object().is_some());
}

#[test]
fn verify_counterexample_is_positive_with_exit_zero() {
    let dir = std::env::temp_dir().join("stallings-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let json_path = dir.join("forest.json");
    let out = run(&[
        "verify-counterexample",
        "--picker",
        "paper",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("verdict: Positive"));
    let dto: ForestDto =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(dto.verdict, "positive");
    assert!(dto.nodes.iter().any(|n| n.label == "5.2.2"));
}

#[test]
fn solve_reads_problem_json_and_reports() {
    // ⟨bbaba⁻¹⟩ → ⟨b, aba⁻¹⟩ over ({a,b}, ∅) is ambiguous and, without the
    // coordinate change, quickly exceeds a small budget: exit 2
    let gamma =
        stallings::graph::LabeledGraph::subgroup(
            &[stallings::words::Word::parse("bbabA").unwrap()],
        )
        .unwrap();
    let delta = stallings::graph::LabeledGraph::subgroup(&[
        stallings::words::Word::parse("b").unwrap(),
        stallings::words::Word::parse("abA").unwrap(),
    ])
    .unwrap();
    let object = stallings::fgr::FgrObject::unrestricted(vec![
        stallings::words::Gen::new("a"),
        stallings::words::Gen::new("b"),
    ]);
    let problem = stallings::solver::SurjectivityProblem::new(gamma, delta, object).unwrap();
    let dir = std::env::temp_dir().join("stallings-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("problem.json");
    std::fs::write(
        &path,
        serde_json::to_string(&ProblemDto::from_problem(&problem)).unwrap(),
    )
    .unwrap();
    let out = run(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--budget",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("verdict: Inconclusive"));

    // a negative problem exits 1
    let neg = stallings::solver::SurjectivityProblem::new(
        stallings::graph::LabeledGraph::subgroup(&[stallings::words::Word::parse("a").unwrap()])
            .unwrap(),
        stallings::graph::LabeledGraph::subgroup(&[
            stallings::words::Word::parse("a").unwrap(),
            stallings::words::Word::parse("b").unwrap(),
        ])
        .unwrap(),
        stallings::fgr::FgrObject::unrestricted(vec![
            stallings::words::Gen::new("a"),
            stallings::words::Gen::new("b"),
        ]),
    )
    .unwrap();
    let neg_path = dir.join("negative.json");
    std::fs::write(
        &neg_path,
        serde_json::to_string(&ProblemDto::from_problem(&neg)).unwrap(),
    )
    .unwrap();
    let out = run(&["solve", "--problem", neg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: Negative"));
}

#[test]
fn primitive_exit_codes() {
    let yes = run(&["primitive", "--word", "ααβ"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = run(&["primitive", "--word", "aabb"]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn rewrite_prints_expression_or_misses() {
    let hit = run(&["rewrite", "--word", "bbabA", "--subgroup", "b,abA"]);
    assert_eq!(hit.status.code(), Some(0));
    assert_eq!(stdout(&hit).trim(), "ααβ");
    let miss = run(&["rewrite", "--word", "a", "--subgroup", "b,abA"]);
    assert_eq!(miss.status.code(), Some(1));
}

#[test]
fn stencil_classes_via_coc() {
    let out = run(&[
        "stencil-classes",
        "--via-coc",
        "--picker",
        "paper",
        "--json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["closed"], serde_json::json!(true));
    assert_eq!(v["maximal"].as_array().unwrap().len(), 5);
}

#[test]
fn usage_and_domain_error_codes() {
    let usage = run(&["solve"]);
    assert_eq!(usage.status.code(), Some(64));
    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(64));
    let domain = run(&["core", "--subgroup", "1"]);
    assert_eq!(domain.status.code(), Some(65));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}
