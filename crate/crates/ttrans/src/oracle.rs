//! Exact exponential-time reference solver.
//!
//! The solver walks the lattice of "remaining vertex set" states: a peel
//! removes a set `D` from the current remaining set `R`, and the peel is
//! legal when `D` satisfies the domination rule of the chosen partition
//! kind against everything still present. `depth[R]` is the longest
//! chain of legal peels that leaves exactly `R`, so the answer is the
//! best `depth[R] + 1` over states `R` that may serve as the final part.
//!
//! Observed peel rules per kind:
//! - total and modified-total: every vertex of `R` (including `D`) needs
//!   a neighbour in `D`; the kinds differ only in which final parts are
//!   admissible (total demands the final part self-dominate, modified
//!   allows any non-empty set);
//! - transitive: only the vertices of `R \ D` need a neighbour in `D`.
//!
//! Complexity is `O(3^n)` over all (state, subset) pairs, with an
//! `O(2^n)` neighbourhood-union table making each transition O(1).

use thiserror::Error;

use crate::graph::Graph;
use crate::partition::{PartitionKind, VertexPartition};

/// Hard cap on the subset DP; beyond this the tables no longer fit in
/// reasonable memory (and `3^n` is hopeless anyway).
pub const MAX_ORACLE_N: usize = 22;

/// Default vertex-count ceiling; override per call or via the CLI.
pub const DEFAULT_CEILING: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error("total transitivity is undefined: the graph has an isolated vertex")]
    IsolatedVertex,
    #[error("empty graph")]
    EmptyGraph,
}

/// Longest-chain table over remaining-set states, with the peel that
/// attained each state for certificate reconstruction.
pub struct PeelDp {
    mode: PartitionKind,
    n: usize,
    depth: Vec<i8>,
    pred: Vec<u32>,
}

impl PeelDp {
    /// Runs the subset DP. `ceiling` bounds the accepted vertex count.
    pub fn build(g: &Graph, mode: PartitionKind, ceiling: usize) -> Result<PeelDp, OracleError> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(OracleError::EmptyGraph);
        }
        let ceiling = ceiling.min(MAX_ORACLE_N);
        if n > ceiling {
            return Err(OracleError::CeilingExceeded { n, ceiling });
        }
        if mode == PartitionKind::Total && g.has_isolated_vertex() {
            return Err(OracleError::IsolatedVertex);
        }

        let adj: Vec<u32> = (0..n).map(|v| g.adj_mask(v) as u32).collect();
        let size = 1usize << n;
        let full = (size - 1) as u32;

        // Neighbourhood union of every subset, built incrementally.
        let mut nhood = vec![0u32; size];
        for m in 1..size {
            let low = m.trailing_zeros() as usize;
            nhood[m] = nhood[m & (m - 1)] | adj[low];
        }

        let mut depth = vec![-1i8; size];
        let mut pred = vec![u32::MAX; size];
        depth[full as usize] = 0;

        for r_prev in (1..=full).rev() {
            let cur = depth[r_prev as usize];
            if cur < 0 {
                continue;
            }
            let mut d = r_prev;
            loop {
                let legal = match mode {
                    PartitionKind::Total | PartitionKind::ModifiedTotal => {
                        r_prev & !nhood[d as usize] == 0
                    }
                    PartitionKind::Transitive => (r_prev & !d) & !nhood[d as usize] == 0,
                };
                if legal {
                    let r = (r_prev & !d) as usize;
                    let next = cur + 1;
                    if next > depth[r] || (next == depth[r] && d < pred[r]) {
                        depth[r] = next;
                        pred[r] = d;
                    }
                }
                d = (d - 1) & r_prev;
                if d == 0 {
                    break;
                }
            }
        }

        Ok(PeelDp {
            mode,
            n,
            depth,
            pred,
        })
    }

    pub fn mode(&self) -> PartitionKind {
        self.mode
    }

    /// Maximum number of peels that can precede the state where exactly
    /// `mask` remains; `None` when unreachable.
    pub fn depth_of(&self, mask: u32) -> Option<usize> {
        let d = self.depth[mask as usize];
        (d >= 0).then_some(d as usize)
    }

    /// May `mask` serve as the final part of a partition of this kind?
    fn legal_last(&self, adj: &[u32], mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        match self.mode {
            PartitionKind::Total => {
                let mut m = mask;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    if adj[v] & mask == 0 {
                        return false;
                    }
                    m &= m - 1;
                }
                true
            }
            PartitionKind::ModifiedTotal | PartitionKind::Transitive => true,
        }
    }

    /// Peels `V_1..V_d` leading to state `mask`, reconstructed from the
    /// stored predecessor choices.
    fn chain_to(&self, mask: u32) -> Vec<u32> {
        let mut cur = mask;
        let full = ((1usize << self.n) - 1) as u32;
        let mut rev = Vec::new();
        while cur != full {
            let d = self.pred[cur as usize];
            debug_assert_ne!(d, u32::MAX, "state has no predecessor");
            rev.push(d);
            cur |= d;
        }
        rev.reverse();
        rev
    }
}

/// Exact solution on a small graph: the optimum value, one certificate
/// attaining it, and the largest part index each vertex can occupy.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub value: usize,
    pub certificate: VertexPartition,
    pub per_vertex: Vec<usize>,
}

/// Runs the full oracle: value, certificate and per-vertex numbers.
pub fn solve(
    g: &Graph,
    mode: PartitionKind,
    ceiling: usize,
) -> Result<OracleSolution, OracleError> {
    let dp = PeelDp::build(g, mode, ceiling)?;
    let n = g.vertex_count();
    let adj: Vec<u32> = (0..n).map(|v| g.adj_mask(v) as u32).collect();
    let size = 1usize << n;

    let mut best_depth = -1i64;
    let mut best_mask = 0u32;
    let mut per_vertex = vec![0usize; n];
    for mask in 1..size as u32 {
        let Some(d) = dp.depth_of(mask) else { continue };
        if !dp.legal_last(&adj, mask) {
            continue;
        }
        let d = d as i64;
        if d > best_depth || (d == best_depth && mask < best_mask) {
            best_depth = d;
            best_mask = mask;
        }
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            per_vertex[v] = per_vertex[v].max(d as usize + 1);
            m &= m - 1;
        }
    }
    debug_assert!(best_depth >= 0, "the full set is always a legal state");

    let mut parts: Vec<Vec<usize>> = dp
        .chain_to(best_mask)
        .into_iter()
        .map(mask_to_vec)
        .collect();
    parts.push(mask_to_vec(best_mask));
    let certificate = VertexPartition::new(mode, parts).expect("chain parts are non-empty");

    Ok(OracleSolution {
        value: best_depth as usize + 1,
        certificate,
        per_vertex,
    })
}

/// The exact maximum partition order for the kind, with a certificate.
pub fn exact_value(
    g: &Graph,
    mode: PartitionKind,
    ceiling: usize,
) -> Result<(usize, VertexPartition), OracleError> {
    let s = solve(g, mode, ceiling)?;
    Ok((s.value, s.certificate))
}

/// For each vertex, the largest index it can occupy in any valid
/// partition of the kind.
pub fn exact_vertex_numbers(
    g: &Graph,
    mode: PartitionKind,
    ceiling: usize,
) -> Result<Vec<usize>, OracleError> {
    Ok(solve(g, mode, ceiling)?.per_vertex)
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}
