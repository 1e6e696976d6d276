//! Command line front end: generation, solving, validation, split-graph
//! checks and the 3-coloring reduction, all with JSON reports on
//! stdout.
//!
//! Exit codes: 0 success (for `validate`, a valid partition), 1 invalid
//! partition, 2 bad input or flags, 3 infeasible instance (isolated
//! vertex in total mode), 4 oracle ceiling exceeded.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ttrans::families::FamilySpec;
use ttrans::graph::Graph;
use ttrans::oracle::{self, OracleError};
use ttrans::partition::{self, PartitionKind, Verdict, VertexPartition};
use ttrans::reduction;
use ttrans::splitgraph;
use ttrans::tree;

const SCHEMA_VERSION: u32 = 1;
const CEILING_ENV: &str = "TTRANS_CEILING";

#[derive(Parser)]
#[command(
    name = "ttrans",
    version,
    about = "Total transitivity solver toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Oracle,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Total,
    Modified,
    Transitive,
}

impl From<ModeArg> for PartitionKind {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Total => PartitionKind::Total,
            ModeArg::Modified => PartitionKind::ModifiedTotal,
            ModeArg::Transitive => PartitionKind::Transitive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Total,
    Modified,
    Transitive,
}

impl From<KindArg> for PartitionKind {
    fn from(m: KindArg) -> Self {
        match m {
            KindArg::Total => PartitionKind::Total,
            KindArg::Modified => PartitionKind::ModifiedTotal,
            KindArg::Transitive => PartitionKind::Transitive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Complete,
    Path,
    Cycle,
    CompleteBipartite,
    Star,
    Tcmbt,
    PendantSplit,
    RandomTree,
    RandomSplit,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the maximum partition order of a graph
    Solve {
        /// Edge-list input file
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "total")]
        mode: ModeArg,
        /// Oracle vertex-count ceiling (default 16, or TTRANS_CEILING)
        #[arg(long)]
        ceiling: Option<usize>,
        /// Worker threads for the per-root tree passes
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check a partition against a graph
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Partition JSON file
        #[arg(long)]
        partition: PathBuf,
        /// Kind to check under (overrides the kind stored in the file)
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Generate a named family graph
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex count (complete, path, cycle, random-tree); side size n
        /// for complete-bipartite
        #[arg(long)]
        n: Option<usize>,
        /// Side size m for complete-bipartite
        #[arg(long)]
        m: Option<usize>,
        /// Order of the broadcast-tree gadget
        #[arg(long)]
        k: Option<usize>,
        /// Clique size (pendant-split, random-split)
        #[arg(long)]
        q: Option<usize>,
        /// Independent-side size (random-split)
        #[arg(long)]
        s: Option<usize>,
        /// Leaf count (star)
        #[arg(long)]
        leaves: Option<usize>,
        /// Clique-to-independent edge probability (random-split)
        #[arg(long)]
        p_edge: Option<f64>,
        /// Seed for random families (required there, rejected elsewhere)
        #[arg(long)]
        seed: Option<u64>,
        /// Output edge-list file; a `<out>.meta.json` sidecar is written
        #[arg(long)]
        out: PathBuf,
    },
    /// Split-graph decomposition and structural checks
    SplitCheck {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also evaluate the necessary conditions for this value
        #[arg(long)]
        p: Option<usize>,
    },
    /// Build the 3-coloring reduction instance
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output edge-list file for the instance
        #[arg(long)]
        out: PathBuf,
        /// Output JSON sidecar with roles and counts
        #[arg(long)]
        map: PathBuf,
    },
    /// Witness mappings for the reduction
    Witness {
        #[command(subcommand)]
        direction: WitnessDirection,
    },
}

#[derive(Subcommand)]
enum WitnessDirection {
    /// Coloring of the source graph -> partition of the instance
    Forward {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON array of colors in 1..=3, one per source vertex; when
        /// omitted, the lexicographically first proper coloring is used
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Write the partition JSON here (also embedded in the report)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition of the instance -> coloring of the source graph
    Backward {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn new(code: i32, msg: impl Into<String>) -> Self {
        Failure {
            code,
            msg: msg.into(),
        }
    }
}

type CmdResult = Result<(Value, Option<&'static str>, i32), Failure>;

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    command: String,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    engine: Option<&'static str>,
    elapsed_ms: u128,
    result: Value,
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let command_name = command_name(&cli.command);
    let digest = input_digest(&cli.command);

    let outcome = match digest {
        Ok(digest) => run(cli.command).map(|(result, engine, code)| (digest, result, engine, code)),
        Err(f) => Err(f),
    };

    match outcome {
        Ok((input_digest, result, engine, code)) => {
            let report = RunReport {
                schema: SCHEMA_VERSION,
                command: command_name,
                input_digest,
                engine,
                elapsed_ms: started.elapsed().as_millis(),
                result,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            std::process::exit(code);
        }
        Err(f) => {
            eprintln!("ttrans: {}", f.msg);
            std::process::exit(f.code);
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Solve { .. } => "solve",
        Command::Validate { .. } => "validate",
        Command::Gen { .. } => "gen",
        Command::SplitCheck { .. } => "split-check",
        Command::Reduce { .. } => "reduce",
        Command::Witness {
            direction: WitnessDirection::Forward { .. },
        } => "witness-forward",
        Command::Witness {
            direction: WitnessDirection::Backward { .. },
        } => "witness-backward",
    }
    .to_string()
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn input_digest(c: &Command) -> Result<String, Failure> {
    let path = match c {
        Command::Solve { input, .. }
        | Command::Validate { input, .. }
        | Command::SplitCheck { input, .. }
        | Command::Reduce { input, .. }
        | Command::Witness {
            direction: WitnessDirection::Forward { input, .. },
        }
        | Command::Witness {
            direction: WitnessDirection::Backward { input, .. },
        } => Some(input.clone()),
        Command::Gen { .. } => None,
    };
    match path {
        Some(p) => Ok(sha256_hex(&read_bytes(&p)?)),
        None => {
            // No input file: hash the canonical family description.
            if let Command::Gen { .. } = c {
                let spec = gen_family_spec(c)?;
                let canon = serde_json::to_string(&spec).expect("family spec serializes");
                Ok(sha256_hex(canon.as_bytes()))
            } else {
                unreachable!("every non-gen command has an input file")
            }
        }
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::new(2, format!("{} is not UTF-8", path.display())))?;
    Graph::parse_edge_list(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn gen_family_spec(c: &Command) -> Result<FamilySpec, Failure> {
    let Command::Gen {
        family,
        n,
        m,
        k,
        q,
        s,
        leaves,
        p_edge,
        seed,
        ..
    } = c
    else {
        unreachable!()
    };
    let want = |name: &str, v: Option<usize>| {
        v.ok_or_else(|| Failure::new(2, format!("--{name} is required for this family")))
    };
    let no_seed = |family: &str| {
        if seed.is_some() {
            Err(Failure::new(
                2,
                format!("--seed applies only to random families, not {family}"),
            ))
        } else {
            Ok(())
        }
    };
    let spec = match family {
        FamilyArg::Complete => {
            no_seed("complete")?;
            FamilySpec::Complete { n: want("n", *n)? }
        }
        FamilyArg::Path => {
            no_seed("path")?;
            FamilySpec::Path { n: want("n", *n)? }
        }
        FamilyArg::Cycle => {
            no_seed("cycle")?;
            FamilySpec::Cycle { n: want("n", *n)? }
        }
        FamilyArg::CompleteBipartite => {
            no_seed("complete-bipartite")?;
            FamilySpec::CompleteBipartite {
                m: want("m", *m)?,
                n: want("n", *n)?,
            }
        }
        FamilyArg::Star => {
            no_seed("star")?;
            FamilySpec::Star {
                leaves: want("leaves", *leaves)?,
            }
        }
        FamilyArg::Tcmbt => {
            no_seed("tcmbt")?;
            FamilySpec::Tcmbt { k: want("k", *k)? }
        }
        FamilyArg::PendantSplit => {
            no_seed("pendant-split")?;
            FamilySpec::PendantSplit { q: want("q", *q)? }
        }
        FamilyArg::RandomTree => FamilySpec::RandomTree {
            n: want("n", *n)?,
            seed: seed.ok_or_else(|| Failure::new(2, "--seed is required for random families"))?,
        },
        FamilyArg::RandomSplit => FamilySpec::RandomSplit {
            q: want("q", *q)?,
            s: want("s", *s)?,
            p_edge: p_edge
                .ok_or_else(|| Failure::new(2, "--p-edge is required for random-split"))?,
            seed: seed.ok_or_else(|| Failure::new(2, "--seed is required for random families"))?,
        },
    };
    Ok(spec)
}

fn resolve_ceiling(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(CEILING_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(oracle::DEFAULT_CEILING)
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Solve {
            ref input,
            engine,
            mode,
            ceiling,
            jobs,
        } => cmd_solve(input, engine, mode.into(), resolve_ceiling(ceiling), jobs),
        Command::Validate {
            ref input,
            ref partition,
            kind,
        } => cmd_validate(input, partition, kind),
        ref c @ Command::Gen { .. } => {
            let spec = gen_family_spec(c)?;
            let Command::Gen { ref out, .. } = *c else {
                unreachable!()
            };
            cmd_gen(&spec, out)
        }
        Command::SplitCheck { ref input, p } => cmd_split_check(input, p),
        Command::Reduce {
            ref input,
            ref out,
            ref map,
        } => cmd_reduce(input, out, map),
        Command::Witness { direction } => match direction {
            WitnessDirection::Forward {
                ref input,
                ref coloring,
                ref out,
            } => cmd_witness_forward(input, coloring.as_deref(), out.as_deref()),
            WitnessDirection::Backward {
                ref input,
                ref partition,
                ref out,
            } => cmd_witness_backward(input, partition, out.as_deref()),
        },
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    let code = match e {
        OracleError::IsolatedVertex => 3,
        OracleError::CeilingExceeded { .. } => 4,
        OracleError::EmptyGraph => 2,
    };
    Failure::new(code, e.to_string())
}

fn cmd_solve(
    input: &Path,
    engine: EngineArg,
    mode: PartitionKind,
    ceiling: usize,
    jobs: Option<usize>,
) -> CmdResult {
    let g = read_graph(input)?;
    let use_tree = match engine {
        EngineArg::Tree => true,
        EngineArg::Oracle => false,
        EngineArg::Auto => {
            mode == PartitionKind::Total && g.is_tree() && g.vertex_count() >= 2
        }
    };
    if use_tree {
        if mode != PartitionKind::Total {
            return Err(Failure::new(2, "the tree engine solves total mode only"));
        }
        let solve = || tree::solve(&g);
        let res = match jobs {
            #[cfg(feature = "parallel")]
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Failure::new(2, e.to_string()))?
                .install(solve),
            #[cfg(not(feature = "parallel"))]
            Some(_) => {
                eprintln!("ttrans: built without thread support; --jobs ignored");
                solve()
            }
            None => solve(),
        }
        .map_err(|e| Failure::new(2, e.to_string()))?;
        let payload = json!({
            "mode": mode.to_string(),
            "value": res.value,
            "best_root": res.best_root,
            "per_vertex": res.per_vertex,
            "certificate": res.certificate,
        });
        Ok((payload, Some("tree"), 0))
    } else {
        let sol = oracle::solve(&g, mode, ceiling).map_err(oracle_failure)?;
        let payload = json!({
            "mode": mode.to_string(),
            "value": sol.value,
            "best_root": Value::Null,
            "per_vertex": sol.per_vertex,
            "certificate": sol.certificate,
        });
        Ok((payload, Some("oracle"), 0))
    }
}

fn cmd_validate(input: &Path, partition_path: &Path, kind: Option<KindArg>) -> CmdResult {
    let g = read_graph(input)?;
    let bytes = read_bytes(partition_path)?;
    let mut p: VertexPartition = serde_json::from_slice(&bytes).map_err(|e| {
        Failure::new(2, format!("{}: {e}", partition_path.display()))
    })?;
    if let Some(k) = kind {
        p.kind = k.into();
    }
    let verdict = partition::validate(&g, &p)
        .map_err(|e| Failure::new(2, format!("partition does not fit the graph: {e}")))?;
    let (valid, violation) = match verdict {
        Verdict::Valid => (true, Value::Null),
        Verdict::Violation(v) => (
            false,
            json!({"i": v.i, "j": v.j, "vertex": v.vertex}),
        ),
    };
    let payload = json!({
        "kind": p.kind.to_string(),
        "parts": p.len(),
        "valid": valid,
        "violation": violation,
    });
    Ok((payload, None, i32::from(!valid)))
}

fn cmd_gen(spec: &FamilySpec, out: &Path) -> CmdResult {
    let generated = spec
        .generate()
        .map_err(|e| Failure::new(2, e.to_string()))?;
    let g = &generated.graph;
    std::fs::write(out, g.to_edge_list())
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", out.display())))?;
    let meta_path = sidecar_path(out, "meta.json");
    let meta = json!({
        "schema": SCHEMA_VERSION,
        "family": spec,
        "root": generated.metadata.root,
        "clique": generated.metadata.clique,
        "independent": generated.metadata.independent,
        "closed_form": spec.closed_form(),
    });
    std::fs::write(
        &meta_path,
        format!("{}\n", serde_json::to_string_pretty(&meta).unwrap()),
    )
    .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", meta_path.display())))?;
    let payload = json!({
        "family": spec,
        "n": g.vertex_count(),
        "m": g.edge_count(),
        "closed_form": spec.closed_form(),
        "out": out.display().to_string(),
        "meta": meta_path.display().to_string(),
    });
    Ok((payload, None, 0))
}

fn sidecar_path(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_owned()).unwrap_or_default();
    name.push(".");
    name.push(suffix);
    out.with_file_name(name)
}

fn cmd_split_check(input: &Path, p: Option<usize>) -> CmdResult {
    let g = read_graph(input)?;
    let d = match splitgraph::decompose(&g) {
        Ok(d) => d,
        Err(splitgraph::SplitError::NotSplit(witness)) => {
            let payload = json!({"split": false, "witness": witness});
            return Ok((payload, None, 0));
        }
        Err(e) => return Err(Failure::new(2, e.to_string())),
    };
    let dom = splitgraph::dom_k_s(&g, &d);
    let value_1 = splitgraph::explain_ttr_eq_1(&g, &d);
    let top_value = splitgraph::explain_ttr_eq_omega_minus_1(&g, &d)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    let necessary = match p {
        Some(p) => {
            let v = splitgraph::check_necessary(&g, &d, p)
                .map_err(|e| Failure::new(2, e.to_string()))?;
            json!({"p": p, "passes": v.passes, "reason": v.reason})
        }
        None => Value::Null,
    };
    let (lo, hi) = splitgraph::bounds(&d);
    let payload = json!({
        "split": true,
        "decomposition": {
            "clique": d.clique(),
            "independent": d.independent(),
            "omega": d.omega(),
        },
        "bounds": [lo, hi],
        "dom_k_s": dom,
        "checks": {
            "value_eq_1": value_1,
            "value_eq_omega_minus_1": top_value,
            "necessary": necessary,
        },
    });
    Ok((payload, None, 0))
}

fn cmd_reduce(input: &Path, out: &Path, map: &Path) -> CmdResult {
    let g = read_graph(input)?;
    let r = reduction::build(&g).map_err(|e| Failure::new(2, e.to_string()))?;
    std::fs::write(out, r.gprime.to_edge_list())
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", out.display())))?;
    let map_json = json!({
        "schema": SCHEMA_VERSION,
        "k": r.k,
        "counts": r.counts,
        "roles": r.roles,
        "side_a": r.side_a(),
        "side_b": r.side_b(),
        "vertex_roots": (0..g.vertex_count()).map(|i| r.vertex_root(i)).collect::<Vec<_>>(),
    });
    std::fs::write(
        map,
        format!("{}\n", serde_json::to_string_pretty(&map_json).unwrap()),
    )
    .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", map.display())))?;
    let payload = json!({
        "k": r.k,
        "counts": r.counts,
        "bipartite": r.gprime.bipartition().is_some(),
        "out": out.display().to_string(),
        "map": map.display().to_string(),
    });
    Ok((payload, None, 0))
}

fn cmd_witness_forward(
    input: &Path,
    coloring_path: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let g = read_graph(input)?;
    let r = reduction::build(&g).map_err(|e| Failure::new(2, e.to_string()))?;
    let coloring: Vec<usize> = match coloring_path {
        Some(path) => serde_json::from_slice(&read_bytes(path)?)
            .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?,
        None => reduction::first_proper_3_coloring(&g)
            .ok_or_else(|| Failure::new(3, "the graph has no proper 3-coloring"))?,
    };
    let partition = reduction::coloring_to_partition(&r, &coloring)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    if let Some(path) = out {
        std::fs::write(
            path,
            format!("{}\n", serde_json::to_string_pretty(&partition).unwrap()),
        )
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
    }
    let payload = json!({
        "k": r.k,
        "coloring": coloring,
        "size": partition.len(),
        "out": out.map(|p| p.display().to_string()),
        "partition": if out.is_some() { Value::Null } else { serde_json::to_value(&partition).unwrap() },
    });
    Ok((payload, None, 0))
}

fn cmd_witness_backward(input: &Path, partition_path: &Path, out: Option<&Path>) -> CmdResult {
    let g = read_graph(input)?;
    let r = reduction::build(&g).map_err(|e| Failure::new(2, e.to_string()))?;
    let partition: VertexPartition = serde_json::from_slice(&read_bytes(partition_path)?)
        .map_err(|e| Failure::new(2, format!("{}: {e}", partition_path.display())))?;
    let coloring = reduction::partition_to_coloring(&r, &partition)
        .map_err(|e| Failure::new(2, e.to_string()))?;
    if let Some(path) = out {
        std::fs::write(
            path,
            format!("{}\n", serde_json::to_string(&coloring).unwrap()),
        )
        .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
    }
    let payload = json!({
        "k": r.k,
        "coloring": coloring,
        "proper": true,
        "out": out.map(|p| p.display().to_string()),
    });
    Ok((payload, None, 0))
}
