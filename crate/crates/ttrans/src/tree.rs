//! Polynomial solver for trees.
//!
//! For every choice of root the tree is processed bottom-up in reverse
//! BFS order. Each vertex receives one of two tagged numbers for its
//! subtree: `ttr` (the largest part index the vertex can occupy in a
//! total transitive partition of the subtree) or `mttr` (the
//! modified-total variant, which lets the vertex sit alone on top with
//! its own top-level coverage deferred to the parent). Leaves get
//! `(mttr, 1)`, vertices with a leaf child get `(ttr, 1)`, and every
//! other vertex combines its children:
//!
//! - each child contributes `l' = value` when tagged `ttr` and
//!   `l' = value - 1` when tagged `mttr` (the index the child can fill
//!   with all of its needs covered inside its own subtree);
//! - `z` is the longest chain `l'_{i_1} <= ... <= l'_{i_z}` with
//!   `l'_{i_p} >= p`, found by a greedy scan of the sorted values;
//! - if some unused child is tagged `mttr` with value at least `z + 1`
//!   it can share the top part with the vertex: result `(ttr, z + 1)`;
//!   otherwise the vertex sits on top alone: `(mttr, z + 1)`.
//!
//! The answer for the whole tree is the maximum over roots of the
//! root's number (`value` for `ttr`, `value - 1` for `mttr`), and a
//! certificate is rebuilt from the stored chain and partner choices.

use thiserror::Error;

use crate::graph::{root_tree, Graph, RootedView};
use crate::partition::{PartitionKind, VertexPartition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree solver requires at least two vertices")]
    TooSmall,
    #[error("cannot combine an empty child list")]
    NoChildren,
    #[error("vertex {vertex} cannot reach part {target} (capability {capability})")]
    TargetTooLarge {
        vertex: usize,
        target: usize,
        capability: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DpTag {
    Ttr,
    Mttr,
}

/// Tagged subtree number of a vertex under some rooting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpValue {
    pub tag: DpTag,
    pub value: usize,
}

impl DpValue {
    fn usable_index(&self) -> usize {
        match self.tag {
            DpTag::Ttr => self.value,
            DpTag::Mttr => self.value - 1,
        }
    }
}

/// Result over all rootings.
#[derive(Debug, Clone)]
pub struct TreeResult {
    pub value: usize,
    pub best_root: usize,
    pub per_vertex: Vec<usize>,
    pub certificate: VertexPartition,
}

/// Chain and partner picked when a vertex combined its children; used
/// for certificate reconstruction.
#[derive(Debug, Clone, Default)]
struct Choice {
    /// Children filling parts `1..=chain.len()`, in part order.
    chain: Vec<usize>,
    /// Child sharing the top part, when one was available.
    partner: Option<usize>,
}

struct RootedDp {
    val: Vec<Option<DpValue>>,
    choice: Vec<Choice>,
}

/// The child-combination step on bare values (children are identified
/// by their position). Values need not be pre-sorted.
pub fn combine_children(values: &[DpValue]) -> Result<DpValue, TreeError> {
    if values.is_empty() {
        return Err(TreeError::NoChildren);
    }
    let indexed: Vec<(usize, DpValue)> = values.iter().copied().enumerate().collect();
    Ok(combine(&indexed).0)
}

fn sorted_lp(children: &[(usize, DpValue)]) -> Vec<(usize, usize, DpValue)> {
    let mut v: Vec<(usize, usize, DpValue)> = children
        .iter()
        .map(|&(id, dv)| (dv.usable_index(), id, dv))
        .collect();
    v.sort_unstable_by_key(|&(lp, id, _)| (lp, id));
    v
}

fn greedy_chain(sorted: &[(usize, usize, DpValue)], exclude: Option<usize>) -> Vec<usize> {
    let mut chain = Vec::new();
    for &(lp, id, _) in sorted {
        if Some(id) == exclude {
            continue;
        }
        if lp > chain.len() {
            chain.push(id);
        }
    }
    chain
}

fn combine(children: &[(usize, DpValue)]) -> (DpValue, Choice) {
    let sorted = sorted_lp(children);
    let z = greedy_chain(&sorted, None).len();

    // A partner must be tagged mttr with value >= z + 1 and must not be
    // needed by the chain itself; candidates best value first.
    let mut candidates: Vec<(usize, DpValue)> = children
        .iter()
        .copied()
        .filter(|(_, dv)| dv.tag == DpTag::Mttr && dv.value > z)
        .collect();
    candidates.sort_unstable_by(|a, b| b.1.value.cmp(&a.1.value).then(a.0.cmp(&b.0)));

    for (id, _) in candidates {
        let chain = greedy_chain(&sorted, Some(id));
        if chain.len() >= z {
            return (
                DpValue {
                    tag: DpTag::Ttr,
                    value: z + 1,
                },
                Choice {
                    chain,
                    partner: Some(id),
                },
            );
        }
    }
    (
        DpValue {
            tag: DpTag::Mttr,
            value: z + 1,
        },
        Choice {
            chain: greedy_chain(&sorted, None),
            partner: None,
        },
    )
}

fn run_dp(view: &RootedView) -> RootedDp {
    let n = view.order().len();
    let mut dp = RootedDp {
        val: vec![None; n],
        choice: vec![Choice::default(); n],
    };
    for &v in view.order() {
        if view.is_leaf(v) {
            dp.val[v] = Some(DpValue {
                tag: DpTag::Mttr,
                value: 1,
            });
        } else if view.children(v).iter().any(|&c| view.is_leaf(c)) {
            // Support vertex: a pendant child pins it to part 1.
            dp.val[v] = Some(DpValue {
                tag: DpTag::Ttr,
                value: 1,
            });
        } else {
            let children: Vec<(usize, DpValue)> = view
                .children(v)
                .iter()
                .map(|&c| (c, dp.val[c].expect("children processed first")))
                .collect();
            let (val, choice) = combine(&children);
            dp.val[v] = Some(val);
            dp.choice[v] = choice;
        }
    }
    dp
}

/// Bottom-up pass for one rooting; returns the root's tagged number.
pub fn solve_rooted(view: &RootedView) -> Result<DpValue, TreeError> {
    if view.order().len() < 2 {
        return Err(TreeError::TooSmall);
    }
    let dp = run_dp(view);
    Ok(dp.val[view.root()].expect("root is processed last"))
}

fn ttr_of_root(val: DpValue) -> usize {
    val.usable_index()
}

/// Full solve: per-vertex numbers, the optimum, and a certificate whose
/// top part contains the best root.
pub fn solve(g: &Graph) -> Result<TreeResult, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(TreeError::TooSmall);
    }

    let root_value = |u: usize| {
        let view = root_tree(g, u).expect("checked tree");
        let dp = run_dp(&view);
        ttr_of_root(dp.val[u].expect("root processed"))
    };

    #[cfg(feature = "parallel")]
    let per_vertex: Vec<usize> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(root_value).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_vertex: Vec<usize> = (0..n).map(root_value).collect();

    let value = *per_vertex.iter().max().expect("n >= 2");
    let best_root = per_vertex.iter().position(|&v| v == value).expect("max exists");

    let view = root_tree(g, best_root).expect("checked tree");
    let dp = run_dp(&view);
    let certificate = reconstruct(&view, &dp, value)?;

    Ok(TreeResult {
        value,
        best_root,
        per_vertex,
        certificate,
    })
}

/// Total transitive partition of the tree placing `root` in part
/// `target`; `target` must not exceed the root's subtree number.
pub fn certificate_with_root_at(
    g: &Graph,
    root: usize,
    target: usize,
) -> Result<VertexPartition, TreeError> {
    if !g.is_tree() {
        return Err(TreeError::NotATree);
    }
    if g.vertex_count() < 2 {
        return Err(TreeError::TooSmall);
    }
    let view = root_tree(g, root).map_err(|_| TreeError::NotATree)?;
    let dp = run_dp(&view);
    let val = dp.val[root].expect("root processed");
    let capability = val.usable_index();
    if target == 0 || target > capability {
        return Err(TreeError::TargetTooLarge {
            vertex: root,
            target,
            capability,
        });
    }
    let mut parts = vec![0usize; g.vertex_count()];
    place_total(&view, &dp, root, target, &mut parts);
    Ok(collect_parts(&parts))
}

fn reconstruct(view: &RootedView, dp: &RootedDp, value: usize) -> Result<VertexPartition, TreeError> {
    let root = view.root();
    let val = dp.val[root].expect("root processed");
    let n = view.order().len();
    let mut parts = vec![0usize; n];
    match val.tag {
        DpTag::Ttr => place_total(view, dp, root, value, &mut parts),
        DpTag::Mttr => {
            // The root sits alone on top of the modified layout; folding
            // it one part down yields a total partition, with the chain
            // child of that part covering the root.
            place_modified_top(view, dp, root, val.value, &mut parts);
            parts[root] = val.value - 1;
        }
    }
    Ok(collect_parts(&parts))
}

fn collect_parts(parts: &[usize]) -> VertexPartition {
    let k = parts.iter().copied().max().expect("non-empty");
    let mut sets = vec![Vec::new(); k];
    for (v, &p) in parts.iter().enumerate() {
        debug_assert!(p >= 1, "every vertex must be placed");
        sets[p - 1].push(v);
    }
    VertexPartition::new(PartitionKind::Total, sets).expect("no part is empty")
}

fn assign_subtree(view: &RootedView, v: usize, part: usize, parts: &mut [usize]) {
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        parts[u] = part;
        stack.extend_from_slice(view.children(u));
    }
}

/// Writes a total transitive layout of the subtree of `v` with `v` in
/// part `target`; every vertex of the subtree gets all its coverage
/// inside the subtree.
fn place_total(view: &RootedView, dp: &RootedDp, v: usize, target: usize, parts: &mut [usize]) {
    if target == 1 {
        assign_subtree(view, v, 1, parts);
        return;
    }
    let val = dp.val[v].expect("dp computed");
    debug_assert!(val.usable_index() >= target);
    match val.tag {
        DpTag::Ttr => {
            let choice = &dp.choice[v];
            let partner = choice.partner.expect("ttr from combine has a partner");
            let mut used = vec![partner];
            for (pos, &c) in choice.chain.iter().enumerate() {
                let part = pos + 1;
                if part < target {
                    place_total(view, dp, c, part, parts);
                    used.push(c);
                }
            }
            place_modified_top(view, dp, partner, target, parts);
            for &c in view.children(v) {
                if !used.contains(&c) {
                    assign_subtree(view, c, 1, parts);
                }
            }
            parts[v] = target;
        }
        DpTag::Mttr => {
            // value - 1 >= target: lay out the modified shape one part
            // higher and fold v down; the chain child of `target` covers
            // it.
            place_modified_top(view, dp, v, target + 1, parts);
            parts[v] = target;
        }
    }
}

/// Writes a modified-total layout of the subtree of `v`: `v` alone in
/// part `top`, chain children filling parts `1..top`, everything else
/// in part 1. Only `v`'s own part-`top` coverage is left to the caller.
fn place_modified_top(view: &RootedView, dp: &RootedDp, v: usize, top: usize, parts: &mut [usize]) {
    if top == 1 {
        assign_subtree(view, v, 1, parts);
        return;
    }
    let choice = &dp.choice[v];
    let mut used = Vec::new();
    for (pos, &c) in choice.chain.iter().enumerate() {
        let part = pos + 1;
        if part < top {
            place_total(view, dp, c, part, parts);
            used.push(c);
        }
    }
    debug_assert!(used.len() == top - 1, "chain shorter than the top part needs");
    for &c in view.children(v) {
        if !used.contains(&c) {
            assign_subtree(view, c, 1, parts);
        }
    }
    parts[v] = top;
}
