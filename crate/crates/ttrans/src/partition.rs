//! Ordered vertex partitions and the domination validators for the
//! three partition variants, plus the merge and tail-normalization
//! transformations used when massaging certificates.
//!
//! Part indices are 1-based everywhere they surface (reports, merge
//! arguments, JSON): part 1 is the first set removed.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Which pairwise domination rule a partition claims to satisfy.
///
/// For parts `V_i`, `V_j`:
/// - `Total`: for all `i <= j`, every vertex of `V_j` has a neighbour
///   in `V_i` (so every part also dominates itself);
/// - `ModifiedTotal`: for all `i < j`, every vertex of `V_i ∪ V_j` has
///   a neighbour in `V_i` (the last part may be a singleton);
/// - `Transitive`: for all `i < j`, every vertex of `V_j` has a
///   neighbour in `V_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    Total,
    ModifiedTotal,
    Transitive,
}

impl std::fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PartitionKind::Total => "total",
            PartitionKind::ModifiedTotal => "modified_total",
            PartitionKind::Transitive => "transitive",
        };
        f.write_str(s)
    }
}

/// Ordered sequence of disjoint vertex sets covering the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub kind: PartitionKind,
    parts: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for VertexPartition {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            kind: PartitionKind,
            parts: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        VertexPartition::new(raw.kind, raw.parts).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("partition has no parts")]
    NoParts,
    #[error("merge indices out of range: i = {i}, j = {j}, k = {k}")]
    MergeIndexOutOfRange { i: usize, j: usize, k: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one part")]
    DuplicateVertex(usize),
    #[error("vertex {0} is not covered by any part")]
    UncoveredVertex(usize),
    #[error("input partition does not validate as {kind}: {detail}")]
    InvalidInput { kind: PartitionKind, detail: String },
    #[error("normalization produced an invalid partition: {0}")]
    Internal(String),
}

/// First failing domination requirement, lexicographic in `(i, j, vertex)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 1-based index of the part that fails to dominate.
    pub i: usize,
    /// 1-based index of the part containing the uncovered vertex.
    pub j: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violation(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl VertexPartition {
    /// Builds a partition; parts are sorted, emptiness is rejected.
    /// Coverage and disjointness are checked against a graph in
    /// [`validate`].
    pub fn new(kind: PartitionKind, parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::NoParts);
        }
        let mut sorted = parts;
        for (idx, part) in sorted.iter_mut().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(idx + 1));
            }
            part.sort_unstable();
        }
        Ok(VertexPartition { kind, parts: sorted })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Part containing the vertex, 1-based.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts
            .iter()
            .position(|p| p.binary_search(&v).is_ok())
            .map(|i| i + 1)
    }

    /// 1-based part accessor.
    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i - 1]
    }

    fn structural_check(&self, g: &Graph) -> Result<(), PartitionError> {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for part in &self.parts {
            for &v in part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if seen[v] {
                    return Err(PartitionError::DuplicateVertex(v));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(PartitionError::UncoveredVertex(v));
        }
        Ok(())
    }
}

/// True iff every vertex of `target` has at least one neighbour in `d`.
/// The sets may intersect; a vertex does not dominate itself.
pub fn is_total_dominating(
    g: &Graph,
    d: &[usize],
    target: &[usize],
) -> Result<bool, PartitionError> {
    let n = g.vertex_count();
    for &v in d.iter().chain(target) {
        if v >= n {
            return Err(PartitionError::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut in_d = vec![false; n];
    for &v in d {
        in_d[v] = true;
    }
    Ok(target
        .iter()
        .all(|&v| g.neighbors(v).iter().any(|&w| in_d[w])))
}

/// Checks the domination rule of `p.kind` on every required pair.
/// Coverage or disjointness failures are structural errors, distinct
/// from domination violations.
pub fn validate(g: &Graph, p: &VertexPartition) -> Result<Verdict, PartitionError> {
    p.structural_check(g)?;
    let n = g.vertex_count();
    let k = p.len();
    let mut membership = vec![0usize; n];
    for (idx, part) in p.parts.iter().enumerate() {
        for &v in part {
            membership[v] = idx + 1;
        }
    }
    // covered[v] is recomputed per dominating part i.
    let mut covered = vec![false; n];
    for i in 1..=k {
        covered.fill(false);
        for &d in p.part(i) {
            for &w in g.neighbors(d) {
                covered[w] = true;
            }
        }
        let lo = match p.kind {
            PartitionKind::Total => i,
            PartitionKind::ModifiedTotal | PartitionKind::Transitive => i + 1,
        };
        for j in lo..=k {
            match p.kind {
                PartitionKind::Total | PartitionKind::Transitive => {
                    for &v in p.part(j) {
                        if !covered[v] {
                            return Ok(Verdict::Violation(Violation { i, j, vertex: v }));
                        }
                    }
                }
                PartitionKind::ModifiedTotal => {
                    // Every vertex of V_i ∪ V_j needs a neighbour in V_i.
                    let mut union: Vec<usize> =
                        p.part(i).iter().chain(p.part(j)).copied().collect();
                    union.sort_unstable();
                    for &v in &union {
                        if !covered[v] {
                            return Ok(Verdict::Violation(Violation { i, j, vertex: v }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Union of parts `i` and `j` (1-based, `i < j`) into part `i`; part
/// `j` disappears and the order of the rest is unchanged. A valid total
/// partition stays valid.
pub fn merge(p: &VertexPartition, i: usize, j: usize) -> Result<VertexPartition, PartitionError> {
    let k = p.len();
    if i == 0 || j == 0 || i >= j || j > k {
        return Err(PartitionError::MergeIndexOutOfRange { i, j, k });
    }
    let mut parts = p.parts.clone();
    let moved = parts.remove(j - 1);
    parts[i - 1].extend(moved);
    parts[i - 1].sort_unstable();
    VertexPartition::new(p.kind, parts)
}

/// Largest possible order of a total transitive partition:
/// `min(max degree, n/2)`. Undefined when an isolated vertex exists.
pub fn upper_bound(g: &Graph) -> Result<usize, PartitionError> {
    if g.has_isolated_vertex() {
        return Err(PartitionError::InvalidInput {
            kind: PartitionKind::Total,
            detail: "graph has an isolated vertex; no total dominating set exists".into(),
        });
    }
    Ok(g.max_degree().min(g.vertex_count() / 2))
}

/// Trims a valid total partition from the top down so the last part has
/// exactly two vertices and every part keeps only a minimal sub-set
/// sufficient to totally dominate itself and all kept later parts;
/// surplus vertices move to part 1. Size and validity are preserved.
///
/// Within each part the kept subset is the lexicographically smallest
/// among those of minimum cardinality; the exact search is capped at
/// part size 20, beyond which a greedy pick-and-pair construction is
/// used instead.
pub fn normalize_tail(g: &Graph, p: &VertexPartition) -> Result<VertexPartition, PartitionError> {
    if p.kind != PartitionKind::Total {
        return Err(PartitionError::InvalidInput {
            kind: p.kind,
            detail: "normalize_tail applies to total partitions".into(),
        });
    }
    if p.len() < 2 {
        return Err(PartitionError::InvalidInput {
            kind: p.kind,
            detail: "normalize_tail requires at least two parts".into(),
        });
    }
    match validate(g, p)? {
        Verdict::Valid => {}
        Verdict::Violation(v) => {
            return Err(PartitionError::InvalidInput {
                kind: p.kind,
                detail: format!("part {} fails to dominate vertex {} of part {}", v.i, v.j, v.vertex),
            })
        }
    }

    let k = p.len();
    let mut kept: Vec<Vec<usize>> = p.parts.clone();
    let mut surplus: Vec<usize> = Vec::new();

    // Kept vertices of parts above the one being trimmed.
    let mut targets: Vec<usize> = Vec::new();
    for t in (2..=k).rev() {
        let part = kept[t - 1].clone();
        let chosen = if t == k {
            smallest_adjacent_pair(g, &part).ok_or_else(|| {
                PartitionError::Internal(format!("part {t} has no adjacent pair"))
            })?
        } else {
            minimal_dominating_subset(g, &part, &targets).ok_or_else(|| {
                PartitionError::Internal(format!("part {t} has no sufficient subset"))
            })?
        };
        surplus.extend(part.iter().filter(|v| !chosen.contains(v)));
        targets.extend(chosen.iter().copied());
        kept[t - 1] = chosen;
    }
    kept[0].extend(surplus);
    kept[0].sort_unstable();

    let out = VertexPartition::new(PartitionKind::Total, kept)?;
    match validate(g, &out)? {
        Verdict::Valid => Ok(out),
        Verdict::Violation(v) => Err(PartitionError::Internal(format!(
            "part {} fails to dominate vertex {} of part {}",
            v.i, v.j, v.vertex
        ))),
    }
}

fn smallest_adjacent_pair(g: &Graph, part: &[usize]) -> Option<Vec<usize>> {
    for [a, b] in part.iter().copied().array_combinations() {
        if g.has_edge(a, b) {
            return Some(vec![a, b]);
        }
    }
    None
}

/// Smallest subset of `part` (by cardinality, then lexicographic) that
/// totally dominates both `targets` and itself.
fn minimal_dominating_subset(g: &Graph, part: &[usize], targets: &[usize]) -> Option<Vec<usize>> {
    let suffices = |subset: &[usize]| -> bool {
        targets
            .iter()
            .chain(subset.iter())
            .all(|&v| g.neighbors(v).iter().any(|w| subset.binary_search(w).is_ok()))
    };
    if part.len() <= 20 {
        for size in 1..=part.len() {
            for combo in part.iter().copied().combinations(size) {
                if suffices(&combo) {
                    return Some(combo);
                }
            }
        }
        None
    } else {
        // Greedy fallback: one dominator per target, then pair every
        // picked vertex with an in-part neighbour.
        let in_part = |v: usize| part.binary_search(&v).is_ok();
        let mut chosen: Vec<usize> = Vec::new();
        for &t in targets {
            if !g.neighbors(t).iter().any(|&w| chosen.binary_search(&w).is_ok()) {
                let d = g.neighbors(t).iter().copied().find(|&w| in_part(w))?;
                if let Err(pos) = chosen.binary_search(&d) {
                    chosen.insert(pos, d);
                }
            }
        }
        if chosen.is_empty() {
            let [a, b] = part
                .iter()
                .copied()
                .array_combinations()
                .find(|&[a, b]| g.has_edge(a, b))?;
            return Some(vec![a, b]);
        }
        loop {
            let uncovered: Vec<usize> = chosen
                .iter()
                .copied()
                .filter(|&v| !g.neighbors(v).iter().any(|&w| chosen.binary_search(&w).is_ok()))
                .collect();
            if uncovered.is_empty() {
                break;
            }
            for v in uncovered {
                let partner = g.neighbors(v).iter().copied().find(|&w| in_part(w))?;
                if let Err(pos) = chosen.binary_search(&partner) {
                    chosen.insert(pos, partner);
                }
            }
        }
        Some(chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn tp(parts: Vec<Vec<usize>>) -> VertexPartition {
        VertexPartition::new(PartitionKind::Total, parts).unwrap()
    }

    #[test]
    fn total_domination_examples() {
        let c4 = cycle(4);
        assert!(is_total_dominating(&c4, &[0, 1], &[0, 1, 2, 3]).unwrap());
        let p2 = path(2);
        assert!(!is_total_dominating(&p2, &[0], &[0]).unwrap());
        let k3 = complete(3);
        assert!(is_total_dominating(&k3, &[0, 1], &[0, 1, 2]).unwrap());
        assert!(matches!(
            is_total_dominating(&k3, &[5], &[0]),
            Err(PartitionError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn validate_clique_pairs() {
        let k4 = complete(4);
        let p = tp(vec![vec![0, 1], vec![2, 3]]);
        assert!(validate(&k4, &p).unwrap().is_valid());
    }

    #[test]
    fn validate_reports_first_violation() {
        let p3 = path(3);
        let p = tp(vec![vec![0, 2], vec![1]]);
        // Part 1 does not dominate itself: vertex 0's only neighbour is 1.
        assert_eq!(
            validate(&p3, &p).unwrap(),
            Verdict::Violation(Violation { i: 1, j: 1, vertex: 0 })
        );
    }

    #[test]
    fn single_part_is_total_when_isolate_free() {
        let c4 = cycle(4);
        let p = tp(vec![vec![0, 1, 2, 3]]);
        assert!(validate(&c4, &p).unwrap().is_valid());
    }

    #[test]
    fn modified_total_on_path() {
        let p3 = path(3);
        let p = VertexPartition::new(PartitionKind::ModifiedTotal, vec![vec![0, 2], vec![1]])
            .unwrap();
        // Vertex 0 of part 1 has no neighbour in part 1.
        assert_eq!(
            validate(&p3, &p).unwrap(),
            Verdict::Violation(Violation { i: 1, j: 2, vertex: 0 })
        );
        // A singleton last part is fine when part 1 covers everything.
        let q = VertexPartition::new(PartitionKind::ModifiedTotal, vec![vec![0, 1], vec![2]])
            .unwrap();
        assert!(validate(&p3, &q).unwrap().is_valid());
    }

    #[test]
    fn structural_errors_are_not_violations() {
        let p3 = path(3);
        let missing = tp(vec![vec![0, 1]]);
        assert!(matches!(
            validate(&p3, &missing),
            Err(PartitionError::UncoveredVertex(2))
        ));
        let dup = tp(vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(
            validate(&p3, &dup),
            Err(PartitionError::DuplicateVertex(1))
        ));
    }

    #[test]
    fn merge_examples() {
        let p = tp(vec![vec![0, 1], vec![2, 3]]);
        let merged = merge(&p, 1, 2).unwrap();
        assert_eq!(merged.parts(), &[vec![0, 1, 2, 3]]);
        assert!(matches!(
            merge(&p, 2, 2),
            Err(PartitionError::MergeIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn merge_preserves_total_validity_on_k6() {
        let k6 = complete(6);
        let p = tp(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(validate(&k6, &p).unwrap().is_valid());
        let m = merge(&p, 2, 3).unwrap();
        assert_eq!(m.len(), 2);
        assert!(validate(&k6, &m).unwrap().is_valid());
    }

    #[test]
    fn repeated_merging_reaches_every_order() {
        let k6 = complete(6);
        let mut p = tp(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        for expect in [2usize, 1] {
            p = merge(&p, 1, 2).unwrap();
            assert_eq!(p.len(), expect);
            assert!(validate(&k6, &p).unwrap().is_valid());
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(&complete(6)).unwrap(), 3);
        assert_eq!(upper_bound(&path(5)).unwrap(), 2);
        let star9 = Graph::from_edges(10, &(1..10).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(upper_bound(&star9).unwrap(), 5);
        assert!(upper_bound(&Graph::from_edges(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn normalize_trims_last_part_of_k8() {
        let k8 = complete(8);
        let p = tp(vec![vec![0, 1], vec![2, 3], vec![4, 5, 6, 7]]);
        let norm = normalize_tail(&k8, &p).unwrap();
        assert_eq!(norm.len(), 3);
        assert_eq!(norm.part(3), &[4, 5]);
        assert!(norm.part(1).contains(&6) && norm.part(1).contains(&7));
        assert!(validate(&k8, &norm).unwrap().is_valid());
    }

    #[test]
    fn normalize_is_idempotent() {
        let k6 = complete(6);
        let p = tp(vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        let once = normalize_tail(&k6, &p).unwrap();
        let twice = normalize_tail(&k6, &once).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, p);
    }

    #[test]
    fn normalize_bounds_second_to_last_part() {
        let k8 = complete(8);
        let p = tp(vec![vec![0, 1], vec![2, 3, 4, 5], vec![6, 7]]);
        let norm = normalize_tail(&k8, &p).unwrap();
        assert!(norm.part(2).len() <= 4);
        assert_eq!(norm.part(3).len(), 2);
    }

    #[test]
    fn normalize_greedy_fallback_on_wide_parts() {
        // A middle part wider than the exact-search cap takes the greedy
        // pick-and-pair route; validity and the trim must still hold.
        let k30 = complete(30);
        let p = tp(vec![
            vec![0, 1],
            (2..28).collect::<Vec<usize>>(),
            vec![28, 29],
        ]);
        let norm = normalize_tail(&k30, &p).unwrap();
        assert_eq!(norm.len(), 3);
        assert_eq!(norm.part(3), &[28, 29]);
        assert!(norm.part(2).len() <= 4);
        assert!(validate(&k30, &norm).unwrap().is_valid());
    }

    #[test]
    fn partition_json_shape() {
        let p = tp(vec![vec![1, 0], vec![2]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"kind":"total","parts":[[0,1],[2]]}"#);
        let back: VertexPartition = serde_json::from_str(&json).unwrap();
        assert_eq!(back.part(1), &[0, 1]);
    }
}
