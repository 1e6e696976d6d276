//! Generators for named graph families and their known closed-form
//! total transitivity values.
//!
//! All constructions are deterministic; the random families draw from a
//! seeded ChaCha stream, so an identical seed reproduces the graph
//! bit-exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {msg}")]
    InvalidParams { family: &'static str, msg: String },
    #[error("could not sample an isolate-free split graph in {0} attempts")]
    SamplingExhausted(usize),
}

/// A named family together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Star { leaves: usize },
    /// Total complete minimum broadcast tree of order `k`: the smallest
    /// tree with total transitivity `k`, used as a gadget in the
    /// 3-coloring reduction.
    Tcmbt { k: usize },
    /// Split graph where each clique vertex carries exactly one private
    /// pendant; total transitivity 1, plain transitivity `q + 1`.
    PendantSplit { q: usize },
    RandomTree { n: usize, seed: u64 },
    RandomSplit { q: usize, s: usize, p_edge: f64, seed: u64 },
}

/// Generator output: the graph plus structural labels downstream tools
/// care about (designated root, split-side labelling).
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub metadata: FamilyMetadata,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independent: Option<Vec<usize>>,
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Tcmbt { .. } => "tcmbt",
            FamilySpec::PendantSplit { .. } => "pendant_split",
            FamilySpec::RandomTree { .. } => "random_tree",
            FamilySpec::RandomSplit { .. } => "random_split",
        }
    }

    pub fn generate(&self) -> Result<Generated, FamilyError> {
        match *self {
            FamilySpec::Complete { n } => {
                require(n >= 1, "complete", "n >= 1")?;
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        edges.push((u, v));
                    }
                }
                plain(n, edges)
            }
            FamilySpec::Path { n } => {
                require(n >= 1, "path", "n >= 1")?;
                plain(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect())
            }
            FamilySpec::Cycle { n } => {
                require(n >= 3, "cycle", "n >= 3")?;
                let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
                edges.push((n - 1, 0));
                plain(n, edges)
            }
            FamilySpec::CompleteBipartite { m, n } => {
                require(m >= 1 && n >= 1, "complete_bipartite", "m, n >= 1")?;
                let mut edges = Vec::new();
                for u in 0..m {
                    for v in 0..n {
                        edges.push((u, m + v));
                    }
                }
                plain(m + n, edges)
            }
            FamilySpec::Star { leaves } => {
                require(leaves >= 1, "star", "leaves >= 1")?;
                plain(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
            }
            FamilySpec::Tcmbt { k } => {
                require((1..=8).contains(&k), "tcmbt", "1 <= k <= 8")?;
                let mut edges = Vec::new();
                let mut next = 0usize;
                let root = attach_tcmbt(k, &mut next, &mut edges);
                let graph = Graph::from_edges(next, &edges).expect("construction is simple");
                Ok(Generated {
                    graph,
                    metadata: FamilyMetadata {
                        root: Some(root),
                        ..Default::default()
                    },
                })
            }
            FamilySpec::PendantSplit { q } => {
                require(q >= 2, "pendant_split", "q >= 2")?;
                let mut edges = Vec::new();
                for u in 0..q {
                    for v in u + 1..q {
                        edges.push((u, v));
                    }
                }
                for i in 0..q {
                    edges.push((i, q + i));
                }
                let graph = Graph::from_edges(2 * q, &edges).expect("construction is simple");
                Ok(Generated {
                    graph,
                    metadata: FamilyMetadata {
                        clique: Some((0..q).collect()),
                        independent: Some((q..2 * q).collect()),
                        ..Default::default()
                    },
                })
            }
            FamilySpec::RandomTree { n, seed } => {
                require(n >= 2, "random_tree", "n >= 2")?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let prufer: Vec<usize> =
                    (0..n.saturating_sub(2)).map(|_| rng.random_range(0..n)).collect();
                plain(n, prufer_decode(n, &prufer))
            }
            FamilySpec::RandomSplit { q, s, p_edge, seed } => {
                require(q >= 1, "random_split", "q >= 1")?;
                require(
                    (0.0..=1.0).contains(&p_edge),
                    "random_split",
                    "0 <= p_edge <= 1",
                )?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut clique_edges = Vec::new();
                for u in 0..q {
                    for v in u + 1..q {
                        clique_edges.push((u, v));
                    }
                }
                const ATTEMPTS: usize = 10_000;
                for _ in 0..ATTEMPTS {
                    let mut edges = clique_edges.clone();
                    for sv in 0..s {
                        for kv in 0..q {
                            if rng.random_bool(p_edge) {
                                edges.push((kv, q + sv));
                            }
                        }
                    }
                    let graph = Graph::from_edges(q + s, &edges).expect("construction is simple");
                    if !graph.has_isolated_vertex() {
                        return Ok(Generated {
                            graph,
                            metadata: FamilyMetadata {
                                clique: Some((0..q).collect()),
                                independent: Some((q..q + s).collect()),
                                ..Default::default()
                            },
                        });
                    }
                }
                Err(FamilyError::SamplingExhausted(ATTEMPTS))
            }
        }
    }

    /// Known exact value of the family, when one exists. The random
    /// families have none, and so do degenerate parameters for which the
    /// invariant is undefined (graphs with isolated vertices).
    pub fn closed_form(&self) -> Option<usize> {
        match *self {
            FamilySpec::Complete { n } if n >= 2 => Some(n / 2),
            FamilySpec::Path { n } if (2..=5).contains(&n) => Some(1),
            FamilySpec::Path { n } if n >= 6 => Some(2),
            FamilySpec::Cycle { n: 3 } => Some(1),
            FamilySpec::Cycle { n } if n >= 4 => Some(2),
            FamilySpec::CompleteBipartite { m, n } if m >= 1 && n >= 1 => Some(m.min(n)),
            FamilySpec::Star { leaves } if leaves >= 1 => Some(1),
            FamilySpec::Tcmbt { k } if k >= 1 => Some(k),
            FamilySpec::PendantSplit { q } if q >= 2 => Some(1),
            _ => None,
        }
    }
}

/// Vertex count of the order-`k` broadcast tree: `N(1) = 2` and
/// `N(k) = 2 + 2 * sum of N(i) for i < k`.
pub fn tcmbt_vertex_count(k: usize) -> usize {
    let mut counts = vec![0usize; k + 1];
    for i in 1..=k {
        counts[i] = 2 + 2 * counts[1..i].iter().sum::<usize>();
    }
    counts[k]
}

fn attach_tcmbt(k: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> usize {
    let root = *next;
    *next += 1;
    if k == 1 {
        let leaf = *next;
        *next += 1;
        edges.push((root, leaf));
        return root;
    }
    for i in 1..k {
        let vi = attach_tcmbt(i, next, edges);
        edges.push((root, vi));
    }
    let vk = *next;
    *next += 1;
    edges.push((root, vk));
    for i in 1..k {
        let ui = attach_tcmbt(i, next, edges);
        edges.push((vk, ui));
    }
    root
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n.saturating_sub(2));
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut degree = vec![1usize; n];
    for &p in seq {
        degree[p] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &p in seq {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, p));
        degree[leaf] -= 1;
        degree[p] -= 1;
        if degree[p] == 1 {
            leaves.push(std::cmp::Reverse(p));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

fn plain(n: usize, edges: Vec<(usize, usize)>) -> Result<Generated, FamilyError> {
    let graph = Graph::from_edges(n, &edges).expect("construction is simple");
    Ok(Generated {
        graph,
        metadata: FamilyMetadata::default(),
    })
}

fn require(ok: bool, family: &'static str, msg: &str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::InvalidParams {
            family,
            msg: msg.into(),
        })
    }
}
