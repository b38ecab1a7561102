use std::process::Command;

use derangetree_core::{derangements, CycleDecomposition, MarkedTree};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_derangetree"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("derangetree").chain(args.iter().copied());
    let code = derangetree_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn map_worked_example() {
    let (code, out, _) = bin(&["map", "--size", "6", "(0 5 3)(1 4 2)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "size=6;parents=0,1,0,1,0;mark=0");
}

#[test]
fn unmap_base_case() {
    let (code, out, _) = bin(&["unmap", "size=2;parents=0;mark=0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(0 1)");
}

#[test]
fn map_then_unmap() {
    let (code, tree, _) = bin(&["map", "--size", "4", "(0 1)(2 3)"]);
    assert_eq!(code, 0);
    let (code, back, _) = bin(&["unmap", tree.trim()]);
    assert_eq!(code, 0);
    assert_eq!(back.trim(), "(0 1)(2 3)");
}

#[test]
fn unmap_inverts_map_up_to_eight() {
    for n in 2..=8 {
        for p in derangements(n) {
            let text = p.to_string();
            let size = n.to_string();
            let (code, tree, err) = run(&["map", "--size", &size, &text]);
            assert_eq!(code, 0, "{text}: {err}");
            let mt: MarkedTree = tree.trim().parse().unwrap();
            assert_eq!(mt.size(), n);
            let (code, back, err) = run(&["unmap", tree.trim()]);
            assert_eq!(code, 0, "{tree}: {err}");
            let q: CycleDecomposition = back.trim().parse().unwrap();
            assert_eq!(q, p);
        }
    }
}

#[test]
fn dot_has_every_vertex_and_edge() {
    let (code, tree, _) = run(&["map", "--size", "8", "(0 7 5 1 6)(2 3 4)"]);
    assert_eq!(code, 0);
    let (code, dot, _) = bin(&["render", tree.trim(), "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 8);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 7);
    assert_eq!(dot.matches("fillcolor=red").count(), 1);
}

#[test]
fn walk_round_trip() {
    let (code, word, _) = bin(&["tree2perm", "size=8;parents=0,0,1,0,4,2,4"]);
    assert_eq!(code, 0);
    assert_eq!(word.trim(), "4 7 5 2 6 1 3");
    let (code, tree, _) = bin(&["perm2tree", word.trim()]);
    assert_eq!(code, 0);
    assert_eq!(tree.trim(), "size=8;parents=0,0,1,0,4,2,4");
}

#[test]
fn enumerate_counts() {
    let lines = |args: &[&str]| run(args).1.lines().count();
    assert_eq!(lines(&["enumerate", "trees", "--size", "5"]), 24);
    assert_eq!(lines(&["enumerate", "derangements", "--size", "5"]), 44);
    assert_eq!(lines(&["enumerate", "marked", "--size", "5"]), 44);
}

#[test]
fn verify_passes_and_refuses_large_sizes() {
    let (code, out, _) = run(&["verify", "--max-size", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.ends_with("status=ok")));
    let (code, out, _) = run(&["verify", "--max-size", "4", "--json"]);
    assert_eq!(code, 0);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
    }
    let (code, _, err) = run(&["verify", "--max-size", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("limit"), "{err}");
    let (code, _, _) = run(&["verify", "--max-size", "10", "--extended"]);
    assert_eq!(code, 2);
}

#[test]
fn stats_tables() {
    let (code, out, _) = run(&["stats", "recurrence", "--max-size", "6"]);
    assert_eq!(code, 0);
    let last: Vec<&str> = out.lines().last().unwrap().split('\t').collect();
    assert_eq!(last, ["6", "265", "0", "-53"]);
    let (code, out, _) = run(&["stats", "cases", "--size", "6", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["total"], 265);
    let (code, out, _) = run(&["stats", "rank-counts", "--max-size", "5", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "5\t1\t44");
    let (code, _, _) = run(&["stats", "cases", "--size", "12"]);
    assert_eq!(code, 2);
}

#[test]
fn invalid_input_exit_codes() {
    let cases: &[(&[&str], &str)] = &[
        (&["map", "--size", "3", "(0)(1 2)"], "fixed point: 0"),
        (&["map", "--size", "5", "(0 1)(3 4)"], "2"),
        (&["map", "--size", "3", "(0 1)(2 3)"], "3"),
        (&["map", "(0 1"], "column"),
        (&["map", "(0 1)(1 2)"], "1"),
        (&["unmap", "size=3;parents=0,1;mark=0"], "rank"),
        (&["unmap", "size=3;parents=0,2;mark=1"], "2"),
        (&["perm2tree", "1 1"], "1"),
        (&["render", "size=3;parents=0"], ""),
    ];
    for (args, needle) in cases {
        let (code, out, err) = bin(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: ") && err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bin(&["bogus"]).0, 1);
    assert_eq!(bin(&["map"]).0, 1);
    assert_eq!(bin(&["map", "--size", "x", "(0 1)"]).0, 1);
    assert_eq!(bin(&["render", "size=2;parents=0", "--format", "png"]).0, 1);
    assert_eq!(bin(&["--help"]).0, 0);
}
