//! Acceptance suite: one test per release criterion, each printing a
//! `criterion N: ...` verdict line (visible with `-- --nocapture`).
//!
//! The quantitative expectations are pinned from independently verified
//! closed forms; where a classical statement fails on degenerate small
//! cases (paths below six vertices, the three-cycle), the suite asserts
//! the brute-force-verified value and prints the delta explicitly
//! rather than encoding a false equality.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ttrans::families::FamilySpec;
use ttrans::graph::Graph;
use ttrans::oracle;
use ttrans::partition::{self, PartitionKind};
use ttrans::reduction;
use ttrans::splitgraph;
use ttrans::tree;

const CEILING: usize = 16;

fn total_value(g: &Graph) -> usize {
    oracle::exact_value(g, PartitionKind::Total, CEILING).unwrap().0
}

// ---------------------------------------------------------------------
// Criterion 1: closed-form conformance on the named families.
// ---------------------------------------------------------------------

#[test]
fn criterion_1_closed_forms() {
    let mut checked = 0usize;
    for n in 2..=12 {
        let spec = FamilySpec::Complete { n };
        let g = spec.generate().unwrap().graph;
        assert_eq!(total_value(&g), spec.closed_form().unwrap(), "complete n={n}");
        checked += 1;
    }
    for n in 2..=14 {
        let spec = FamilySpec::Path { n };
        let g = spec.generate().unwrap().graph;
        let expect = spec.closed_form().unwrap();
        assert_eq!(total_value(&g), expect, "path n={n} (oracle)");
        assert_eq!(tree::solve(&g).unwrap().value, expect, "path n={n} (tree)");
        checked += 1;
    }
    for n in 3..=14 {
        let spec = FamilySpec::Cycle { n };
        let g = spec.generate().unwrap().graph;
        assert_eq!(total_value(&g), spec.closed_form().unwrap(), "cycle n={n}");
        checked += 1;
    }
    for m in 1..=7 {
        for n in m..=(14 - m) {
            let spec = FamilySpec::CompleteBipartite { m, n };
            let g = spec.generate().unwrap().graph;
            assert_eq!(total_value(&g), m, "complete bipartite ({m},{n})");
            checked += 1;
        }
    }
    println!(
        "criterion 1: PASS — {checked} family instances match their closed forms exactly"
    );
    println!(
        "criterion 1: note — the classical path/cycle value 2 holds from n = 6 (paths) and \
         n = 4 (cycles); P_3, P_4, P_5 and C_3 have verified value 1 (P_3 = K_{{1,2}} and \
         C_3 = K_3 force this), and the suite asserts the verified values"
    );
}

// ---------------------------------------------------------------------
// Criterion 2: broadcast-tree gadgets attain their order.
// ---------------------------------------------------------------------

#[test]
fn criterion_2_gadget_trees() {
    for k in 1..=3 {
        let g = FamilySpec::Tcmbt { k }.generate().unwrap().graph;
        assert_eq!(tree::solve(&g).unwrap().value, k, "tcmbt k={k} total");
    }
    for k in 1..=2 {
        let g = FamilySpec::Tcmbt { k }.generate().unwrap().graph;
        let (v, _) = oracle::exact_value(&g, PartitionKind::Transitive, CEILING).unwrap();
        assert_eq!(v, k + 1, "tcmbt k={k} transitive");
    }
    println!(
        "criterion 2: PASS — Tr_t(tcmbt_k) = k for k in 1..=3 and transitive value k+1 \
         for k in 1..=2 (order 3 is above the oracle ceiling and not checked)"
    );
}

// ---------------------------------------------------------------------
// Criterion 3: tree algorithm equals the oracle everywhere it runs.
// ---------------------------------------------------------------------

fn ahu_encoding(g: &Graph, v: usize, parent: usize) -> String {
    let mut subs: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu_encoding(g, w, v))
        .collect();
    subs.sort();
    format!("({})", subs.concat())
}

fn canonical_form(g: &Graph) -> String {
    let n = g.vertex_count();
    if n == 1 {
        return "()".into();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in g.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    match centers[..] {
        [c] => ahu_encoding(g, c, usize::MAX),
        [a, b] => {
            let mut halves = [ahu_encoding(g, a, b), ahu_encoding(g, b, a)];
            halves.sort();
            format!("({}{})", halves[0], halves[1])
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

/// All free trees on `n` vertices, one representative per isomorphism
/// class, grown by leaf attachment with canonical-form deduplication.
fn all_free_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 2);
    let mut current = vec![Graph::from_edges(2, &[(0, 1)]).unwrap()];
    for size in 3..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &current {
            let edges = t.edges();
            for attach in 0..size - 1 {
                let mut e2 = edges.clone();
                e2.push((attach, size - 1));
                let g = Graph::from_edges(size, &e2).unwrap();
                if seen.insert(canonical_form(&g)) {
                    next.push(g);
                }
            }
        }
        current = next;
    }
    current
}

#[test]
fn criterion_3_tree_algorithm_vs_oracle() {
    // Exhaustive over isomorphism classes up to ten vertices; the class
    // counts double-check the enumerator against the known sequence.
    let expected_counts = [1, 1, 2, 3, 6, 11, 23, 47, 106];
    let mut exhaustive = 0usize;
    for n in 2..=10 {
        let trees = all_free_trees(n);
        assert_eq!(
            trees.len(),
            expected_counts[n - 2],
            "free tree count for n={n}"
        );
        for g in &trees {
            let res = tree::solve(g).unwrap();
            let sol = oracle::solve(g, PartitionKind::Total, CEILING).unwrap();
            assert_eq!(res.value, sol.value, "value on {}", g.to_edge_list());
            assert_eq!(
                res.per_vertex, sol.per_vertex,
                "vertex numbers on {}",
                g.to_edge_list()
            );
            assert!(
                partition::validate(g, &res.certificate).unwrap().is_valid(),
                "certificate on {}",
                g.to_edge_list()
            );
            assert_eq!(res.certificate.len(), res.value);
            exhaustive += 1;
        }
    }

    let mut randomized = 0usize;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize) % 13;
        let g = FamilySpec::RandomTree { n, seed }.generate().unwrap().graph;
        let res = tree::solve(&g).unwrap();
        let sol = oracle::solve(&g, PartitionKind::Total, CEILING).unwrap();
        assert_eq!(res.value, sol.value, "seed {seed}");
        assert_eq!(res.per_vertex, sol.per_vertex, "seed {seed}");
        assert!(partition::validate(&g, &res.certificate).unwrap().is_valid());
        randomized += 1;
    }
    println!(
        "criterion 3: PASS — tree solver matches the oracle on all {exhaustive} free trees \
         with 2..=10 vertices and {randomized} random trees with up to 14; \
         all certificates re-validate"
    );
}

// ---------------------------------------------------------------------
// Criterion 4: split-graph characterizations against the oracle.
// ---------------------------------------------------------------------

fn split_corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 2000 {
        let q = 2 + (seed as usize) % 5;
        let s = (seed as usize / 5) % (9 - q + 1);
        let p_edge = 0.3 + 0.1 * ((seed % 4) as f64);
        let gen = FamilySpec::RandomSplit { q, s, p_edge, seed }
            .generate()
            .unwrap();
        if gen.graph.is_connected() {
            out.push(gen.graph);
        }
        seed += 1;
    }
    for q in 2..=6 {
        out.push(FamilySpec::PendantSplit { q }.generate().unwrap().graph);
    }
    out
}

#[test]
fn criterion_4_split_graph_theorems() {
    let corpus = split_corpus();
    let total = corpus.len();
    let mut value_hist: std::collections::BTreeMap<usize, usize> = Default::default();
    let (mut v1_true, mut top_true) = (0usize, 0usize);
    for (idx, g) in corpus.iter().enumerate() {
        let d = splitgraph::decompose(g).unwrap_or_else(|e| {
            panic!("corpus graph {idx} should be split: {e}");
        });
        let (value, cert) = oracle::exact_value(g, PartitionKind::Total, CEILING).unwrap();
        *value_hist.entry(value).or_insert(0) += 1;

        let v1 = splitgraph::check_ttr_eq_1(g, &d);
        assert_eq!(
            v1,
            value == 1,
            "value-1 characterization, graph {idx}:\n{}",
            g.to_edge_list()
        );
        v1_true += usize::from(v1);
        let top = splitgraph::check_ttr_eq_omega_minus_1(g, &d).unwrap();
        assert_eq!(
            top,
            value == d.omega() - 1,
            "top-value characterization, graph {idx} (omega {}):\n{}",
            d.omega(),
            g.to_edge_list()
        );
        top_true += usize::from(top);
        let verdict = splitgraph::check_necessary(g, &d, value).unwrap();
        assert!(
            verdict.passes,
            "necessary conditions, graph {idx}, value {value}: {}",
            verdict.reason
        );

        let norm = splitgraph::normalize_certificate(g, &d, &cert).unwrap();
        let problems = splitgraph::observation_report(g, &d, &norm);
        assert!(
            problems.is_empty(),
            "observation invariants, graph {idx}: {problems:?}\n{}",
            g.to_edge_list()
        );
    }
    // Both directions of each equivalence must actually occur.
    assert!(v1_true > 100 && v1_true < total - 100);
    assert!(top_true > 100 && top_true < total - 100);
    println!(
        "criterion 4: PASS — both characterizations, the necessary conditions and all four \
         observation invariants hold on {total} connected split graphs (2000 random + the \
         pendant family); value histogram {value_hist:?}, value-1 true on {v1_true}, \
         top-value true on {top_true}"
    );
}

// ---------------------------------------------------------------------
// Criterion 5: the pendant split instance with clique size five.
// ---------------------------------------------------------------------

#[test]
fn criterion_5_pendant_split_instance() {
    let g = FamilySpec::PendantSplit { q: 5 }.generate().unwrap().graph;
    let total = total_value(&g);
    let (transitive, _) = oracle::exact_value(&g, PartitionKind::Transitive, CEILING).unwrap();
    assert_eq!(total, 1);
    assert_eq!(transitive, 6);
    println!(
        "criterion 5: PASS — pendant split with q = 5 has total transitivity 1 and \
         transitivity 6 = omega + 1"
    );
}

// ---------------------------------------------------------------------
// Criterion 6: reduction soundness on the 3-colorable corpus.
// ---------------------------------------------------------------------

fn petersen() -> Graph {
    let edges = [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    ];
    Graph::from_edges(10, &edges).unwrap()
}

#[test]
fn criterion_6_reduction_soundness() {
    let path = |n: usize| FamilySpec::Path { n }.generate().unwrap().graph;
    let cycle = |n: usize| FamilySpec::Cycle { n }.generate().unwrap().graph;
    let triangle = FamilySpec::Complete { n: 3 }.generate().unwrap().graph;
    let corpus: Vec<(&str, Graph)> = vec![
        ("P_2", path(2)),
        ("P_3", path(3)),
        ("C_4", cycle(4)),
        ("C_5", cycle(5)),
        ("K_3", triangle),
        ("Petersen", petersen()),
    ];

    for (name, g) in &corpus {
        let r = reduction::build(g).unwrap();
        assert!(r.gprime.bipartition().is_some(), "{name}: instance not bipartite");
        assert_eq!(r.k, g.edge_count() + 4, "{name}: k != m + 4");

        let coloring = reduction::first_proper_3_coloring(g)
            .unwrap_or_else(|| panic!("{name} should be 3-colorable"));
        let p = reduction::coloring_to_partition(&r, &coloring).unwrap();
        assert_eq!(p.len(), r.k, "{name}: witness size");
        assert!(
            partition::validate(&r.gprime, &p).unwrap().is_valid(),
            "{name}: witness does not validate"
        );
        let back = reduction::partition_to_coloring(&r, &p).unwrap();
        for (u, v) in g.edges() {
            assert_ne!(back[u], back[v], "{name}: extracted coloring not proper");
        }
    }

    // Affine size formulas on five instances, with the historically
    // reported totals printed for comparison.
    for (name, g) in corpus.iter().take(5) {
        let r = reduction::build(g).unwrap();
        let c = r.counts;
        assert_eq!(c.nprime, c.affine_nprime, "{name}: vertex formula");
        assert_eq!(c.mprime, c.affine_mprime, "{name}: edge formula");
        println!(
            "criterion 6: {name}: measured (n', m') = ({}, {}); affine 36n+38m+110 / \
             m^2+34n+42m+109 agree; reference totals 38n+40m+116 / m^2+34n+42m+104 \
             give ({}, {}), delta ({}, {})",
            c.nprime,
            c.mprime,
            c.reference_nprime,
            c.reference_mprime,
            c.reference_nprime as i64 - c.nprime as i64,
            c.reference_mprime as i64 - c.mprime as i64,
        );
    }
    println!(
        "criterion 6: PASS — bipartite instances with k = m + 4; forward witnesses \
         validate at size k and round-trip to proper colorings on all six corpus graphs"
    );
}

// ---------------------------------------------------------------------
// Criterion 7: structural propositions on random connected graphs.
// ---------------------------------------------------------------------

fn random_connected_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(4..=12);
        let p: f64 = rng.random_range(0.2..0.6);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() && !g.has_isolated_vertex() {
            return g;
        }
    }
}

#[test]
fn criterion_7_structural_propositions() {
    for seed in 0..500u64 {
        let g = random_connected_graph(seed);
        let (value, cert) = oracle::exact_value(&g, PartitionKind::Total, CEILING).unwrap();
        let bound = partition::upper_bound(&g).unwrap();
        assert!(value <= bound, "seed {seed}: value {value} above bound {bound}");

        // Interpolation by merging: every order below the optimum is
        // attainable and valid.
        let mut p = cert.clone();
        while p.len() > 1 {
            p = partition::merge(&p, 1, 2).unwrap();
            assert!(
                partition::validate(&g, &p).unwrap().is_valid(),
                "seed {seed}: merge to {} parts broke validity",
                p.len()
            );
        }

        if value >= 2 {
            let norm = partition::normalize_tail(&g, &cert).unwrap();
            assert_eq!(norm.len(), value, "seed {seed}: normalization changed the order");
            let k = norm.len();
            assert_eq!(norm.part(k).len(), 2, "seed {seed}: |V_k| != 2");
            for i in 1..=k.saturating_sub(2) {
                assert!(
                    norm.part(k - i).len() <= 1 << (i + 1),
                    "seed {seed}: |V_(k-{i})| = {} above 2^{}",
                    norm.part(k - i).len(),
                    i + 1
                );
            }
            assert!(partition::validate(&g, &norm).unwrap().is_valid());
        }
    }
    println!(
        "criterion 7: PASS — degree/size bound, merge interpolation and tail \
         normalization bounds hold on 500 random connected graphs"
    );
}

// ---------------------------------------------------------------------
// Criterion 8: byte-identical reruns of every command.
// ---------------------------------------------------------------------

fn run_cli(args: &[&str], dir: &Path) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ttrans"))
        .args(args)
        .current_dir(dir)
        .env_remove("TTRANS_CEILING")
        .output()
        .expect("binary runs");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout not JSON for {args:?}: {e}\nstderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (report, out.status.code().unwrap_or(-1))
}

/// The digest-checked region: the report without its timing field.
fn stable_region(mut report: Value) -> Value {
    report.as_object_mut().unwrap().remove("elapsed_ms");
    report
}

#[test]
fn criterion_8_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path();

    // Seed files the command list below consumes.
    std::fs::write(base.join("k3.edges"), "3 3\n0 1\n0 2\n1 2\n").unwrap();
    let (gen_t3, _) = run_cli(
        &["gen", "--family", "tcmbt", "--k", "3", "--out", "t3.edges"],
        base,
    );
    assert_eq!(gen_t3["result"]["n"], 18);
    let (solve_t3, _) = run_cli(&["solve", "--in", "t3.edges"], base);
    std::fs::write(
        base.join("t3.cert.json"),
        solve_t3["result"]["certificate"].to_string(),
    )
    .unwrap();
    run_cli(
        &["gen", "--family", "pendant-split", "--q", "5", "--out", "ps5.edges"],
        base,
    );
    run_cli(
        &["witness", "forward", "--in", "k3.edges", "--out", "w.json"],
        base,
    );

    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "--family", "tcmbt", "--k", "2", "--out", "t2.edges"],
        vec![
            "gen", "--family", "random-split", "--q", "4", "--s", "3",
            "--p-edge", "0.5", "--seed", "11", "--out", "rs.edges",
        ],
        vec!["solve", "--in", "t3.edges"],
        vec!["solve", "--in", "t3.edges", "--engine", "oracle", "--ceiling", "18"],
        vec!["solve", "--in", "t2.edges", "--mode", "transitive"],
        vec!["validate", "--in", "t3.edges", "--partition", "t3.cert.json"],
        vec!["split-check", "--in", "ps5.edges", "--p", "1"],
        vec!["reduce", "--in", "k3.edges", "--out", "k3.red.edges", "--map", "k3.map.json"],
        vec!["witness", "forward", "--in", "k3.edges", "--out", "w.json"],
        vec!["witness", "backward", "--in", "k3.edges", "--partition", "w.json"],
    ];

    for args in &commands {
        let (first, code1) = run_cli(args, base);
        let files_first: Vec<(String, Vec<u8>)> = output_files(args, base);
        let (second, code2) = run_cli(args, base);
        let files_second: Vec<(String, Vec<u8>)> = output_files(args, base);
        assert_eq!(code1, code2, "{args:?}: exit codes differ");
        assert_eq!(
            stable_region(first),
            stable_region(second),
            "{args:?}: reports differ"
        );
        assert_eq!(files_first, files_second, "{args:?}: output files differ");
    }
    println!(
        "criterion 8: PASS — {} commands rerun byte-identically outside the timing field",
        commands.len()
    );
}

fn output_files(args: &[&str], base: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for (i, a) in args.iter().enumerate() {
        if *a == "--out" || *a == "--map" {
            let name = args[i + 1];
            let bytes = std::fs::read(base.join(name)).unwrap_or_default();
            out.push((name.to_string(), bytes));
            let meta = base.join(format!("{name}.meta.json"));
            if meta.exists() {
                out.push((format!("{name}.meta.json"), std::fs::read(meta).unwrap()));
            }
        }
    }
    out
}
