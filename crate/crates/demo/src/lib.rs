//! Browser playground: three interactive operations over the solver
//! toolkit, exported through wasm-bindgen. Every export takes and
//! returns strings (JSON in, JSON-with-SVG out), so the whole surface
//! also runs natively for tests.

mod render;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ttrans::families::FamilySpec;
use ttrans::graph::Graph;
use ttrans::oracle;
use ttrans::partition::PartitionKind;
use ttrans::splitgraph;
use ttrans::tree;

/// Oracle work beyond this many vertices is too slow for a page.
const DEMO_CEILING: usize = 14;

fn err(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn family_from_args(family: &str, a: usize, b: usize, seed: u64) -> Result<FamilySpec, String> {
    let spec = match family {
        "complete" => FamilySpec::Complete { n: a },
        "path" => FamilySpec::Path { n: a },
        "cycle" => FamilySpec::Cycle { n: a },
        "complete_bipartite" => FamilySpec::CompleteBipartite { m: a, n: b },
        "star" => FamilySpec::Star { leaves: a },
        "tcmbt" => FamilySpec::Tcmbt { k: a },
        "pendant_split" => FamilySpec::PendantSplit { q: a },
        "random_tree" => FamilySpec::RandomTree { n: a, seed },
        other => return Err(format!("unknown family `{other}`")),
    };
    Ok(spec)
}

fn mode_from_str(mode: &str) -> Result<PartitionKind, String> {
    match mode {
        "total" => Ok(PartitionKind::Total),
        "modified" => Ok(PartitionKind::ModifiedTotal),
        "transitive" => Ok(PartitionKind::Transitive),
        other => Err(format!("unknown mode `{other}`")),
    }
}

fn solve_and_render(g: &Graph, mode: PartitionKind, root_hint: Option<usize>) -> Result<Value, String> {
    let n = g.vertex_count();
    let (value, certificate, engine, best_root) =
        if mode == PartitionKind::Total && g.is_tree() && n >= 2 {
            let res = tree::solve(g).map_err(|e| e.to_string())?;
            (res.value, res.certificate, "tree", Some(res.best_root))
        } else {
            if n > DEMO_CEILING {
                return Err(format!(
                    "exact solving in the browser is limited to {DEMO_CEILING} vertices \
                     (got {n}); trees in total mode have no limit"
                ));
            }
            let sol = oracle::solve(g, mode, DEMO_CEILING).map_err(|e| e.to_string())?;
            (sol.value, sol.certificate, "oracle", None)
        };
    let layout = if g.is_tree() && n >= 2 {
        render::tree_layout(g, root_hint.or(best_root).unwrap_or(0))
    } else {
        render::circular_layout(n)
    };
    let parts = render::membership(&certificate, n);
    let svg = render::render_svg(g, &layout, &parts);
    Ok(json!({
        "value": value,
        "engine": engine,
        "n": n,
        "m": g.edge_count(),
        "best_root": best_root,
        "certificate": certificate,
        "svg": svg,
    }))
}

/// Generate a named family graph and solve it; parameters `a` and `b`
/// are family-specific (see the page).
#[wasm_bindgen]
pub fn solve_family(family: &str, a: usize, b: usize, seed: u64, mode: &str) -> String {
    let inner = || -> Result<Value, String> {
        let spec = family_from_args(family, a, b, seed)?;
        let generated = spec.generate().map_err(|e| e.to_string())?;
        let mut out = solve_and_render(
            &generated.graph,
            mode_from_str(mode)?,
            generated.metadata.root,
        )?;
        out["closed_form"] = json!(spec.closed_form());
        Ok(out)
    };
    match inner() {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}

/// Parse an edge-list text (`n m` header then `u v` lines) and solve.
#[wasm_bindgen]
pub fn solve_edge_list(text: &str, mode: &str) -> String {
    let inner = || -> Result<Value, String> {
        let g = Graph::parse_edge_list(text).map_err(|e| e.to_string())?;
        solve_and_render(&g, mode_from_str(mode)?, None)
    };
    match inner() {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}

/// Sample a random split graph, solve it exactly and evaluate the
/// structural characterizations; `p_percent` is the clique-to-pendant
/// edge probability in percent.
#[wasm_bindgen]
pub fn split_check_random(q: usize, s: usize, p_percent: usize, seed: u64) -> String {
    let inner = || -> Result<Value, String> {
        if q + s > DEMO_CEILING {
            return Err(format!(
                "q + s is limited to {DEMO_CEILING} in the browser"
            ));
        }
        let spec = FamilySpec::RandomSplit {
            q,
            s,
            p_edge: (p_percent.min(100)) as f64 / 100.0,
            seed,
        };
        let g = spec.generate().map_err(|e| e.to_string())?.graph;
        let d = splitgraph::decompose(&g).map_err(|e| e.to_string())?;
        let sol = oracle::solve(&g, PartitionKind::Total, DEMO_CEILING)
            .map_err(|e| e.to_string())?;
        let value_1 = splitgraph::check_ttr_eq_1(&g, &d);
        let top = splitgraph::check_ttr_eq_omega_minus_1(&g, &d).map_err(|e| e.to_string())?;
        let (lo, hi) = splitgraph::bounds(&d);
        let layout = render::split_layout(g.vertex_count(), d.clique());
        let parts = render::membership(&sol.certificate, g.vertex_count());
        let svg = render::render_svg(&g, &layout, &parts);
        Ok(json!({
            "value": sol.value,
            "omega": d.omega(),
            "bounds": [lo, hi],
            "clique": d.clique(),
            "independent": d.independent(),
            "dom_k_s": splitgraph::dom_k_s(&g, &d),
            "value_eq_1": value_1,
            "value_eq_omega_minus_1": top,
            "certificate": sol.certificate,
            "svg": svg,
        }))
    };
    match inner() {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}
