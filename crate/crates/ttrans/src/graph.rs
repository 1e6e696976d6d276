//! Immutable simple undirected graphs with adjacency-list and
//! adjacency-bitset views, plus the edge-list text format shared by the
//! command line tools.
//!
//! Vertices are dense ids `0..n-1`; `n` comes from the file header and
//! ids that never appear in an edge are legitimate isolated vertices.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed line: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex id {id} out of range (n = {n})")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop on vertex {id}")]
    SelfLoop { line: usize, id: usize },
    #[error("edge count mismatch: header says {header}, found {found} distinct edges")]
    EdgeCountMismatch { header: usize, found: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoopEdge(usize),
    #[error("vertex id {id} out of range (n = {n})")]
    IdOutOfRange { id: usize, n: usize },
    #[error("graph is not a tree (connected with m = n - 1 required)")]
    NotATree,
    #[error("root {root} out of range (n = {n})")]
    BadRoot { root: usize, n: usize },
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<Vec<u64>>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IdOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(GraphError::IdOutOfRange { id: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoopEdge(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_edge_set(n, &set))
    }

    fn from_edge_set(n: usize, set: &BTreeSet<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let words = n.div_ceil(WORD_BITS).max(1);
        let mut adj_bits = vec![vec![0u64; words]; n];
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                adj_bits[u][v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
            }
        }
        Graph { n, adj, adj_bits }
    }

    /// Parses the edge-list text format: first non-comment line `n m`,
    /// then edge lines `u v`. Lines starting with `#` and blank lines
    /// are skipped; duplicate edges collapse, and `m` must equal the
    /// number of distinct edges.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut set = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let a = fields.next();
            let b = fields.next();
            let rest = fields.next();
            let (a, b) = match (a, b, rest) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(GraphError::Malformed {
                        line,
                        msg: format!("expected two integers, got `{trimmed}`"),
                    })
                }
            };
            let a: usize = a.parse().map_err(|_| GraphError::Malformed {
                line,
                msg: format!("`{a}` is not an integer"),
            })?;
            let b: usize = b.parse().map_err(|_| GraphError::Malformed {
                line,
                msg: format!("`{b}` is not an integer"),
            })?;
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= n {
                        return Err(GraphError::VertexOutOfRange { line, id: a, n });
                    }
                    if b >= n {
                        return Err(GraphError::VertexOutOfRange { line, id: b, n });
                    }
                    if a == b {
                        return Err(GraphError::SelfLoop { line, id: a });
                    }
                    set.insert((a.min(b), a.max(b)));
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Malformed {
            line: 0,
            msg: "empty input: missing `n m` header".into(),
        })?;
        if set.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                header: m,
                found: set.len(),
            });
        }
        Ok(Self::from_edge_set(n, &set))
    }

    /// Serializes to the edge-list format: `n m` header, then edges
    /// `u v` with `u < v` in ascending lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj_bits[u][v / WORD_BITS] & (1u64 << (v % WORD_BITS)) != 0
    }

    /// Neighbour bitmask of `v`, only meaningful for `n <= 64`.
    pub fn adj_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD_BITS);
        self.adj_bits[v][0]
    }

    /// Multi-word neighbour bitset of `v`.
    pub fn adj_bits(&self, v: usize) -> &[u64] {
        &self.adj_bits[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|l| l.is_empty())
    }

    /// Connected components as sorted vertex sets, listed by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = std::collections::VecDeque::new();
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Connected with `m = n - 1`.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Two-colours the graph if bipartite; `sides[v]` is 0 or 1.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }
}

/// A rooting of a tree: BFS parents, children lists and the reverse BFS
/// order used by the bottom-up solver. Neighbours are visited in
/// ascending id order, so the order is reproducible.
#[derive(Debug, Clone)]
pub struct RootedView {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl RootedView {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// All vertices, every vertex after all of its children; ends at the
    /// root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }
}

/// Roots a connected tree at `root` by BFS.
pub fn root_tree(g: &Graph, root: usize) -> Result<RootedView, GraphError> {
    let n = g.vertex_count();
    if root >= n {
        return Err(GraphError::BadRoot { root, n });
    }
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut bfs = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    bfs.push(root);
    let mut head = 0;
    while head < bfs.len() {
        let u = bfs[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                children[u].push(v);
                bfs.push(v);
            }
        }
    }
    bfs.reverse();
    Ok(RootedView {
        root,
        parent,
        children,
        order: bfs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parse_smallest_edge() {
        let g = Graph::parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn parse_cycle() {
        let g = Graph::parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(3, 0));
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn parse_dedups_duplicate_edges() {
        let g = Graph::parse_edge_list("3 3\n0 1\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Graph::parse_edge_list("3 2\n0 1\nx 2").unwrap_err();
        assert!(matches!(err, GraphError::Malformed { line: 3, .. }));

        let err = Graph::parse_edge_list("3 2\n0 1\n1 7").unwrap_err();
        assert!(matches!(
            err,
            GraphError::VertexOutOfRange { line: 3, id: 7, n: 3 }
        ));

        let err = Graph::parse_edge_list("3 2\n0 1\n2 2").unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { line: 3, id: 2 }));
    }

    #[test]
    fn parse_checks_edge_count() {
        let err = Graph::parse_edge_list("3 2\n0 1").unwrap_err();
        assert!(matches!(
            err,
            GraphError::EdgeCountMismatch { header: 2, found: 1 }
        ));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = Graph::parse_edge_list("# a triangle\n\n3 3\n0 1\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn serialize_round_trips() {
        let g = Graph::parse_edge_list("5 4\n3 1\n0 1\n4 0\n2 3").unwrap();
        let text = g.to_edge_list();
        let h = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(g, h);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn components_of_cycle_and_matching() {
        let c4 = Graph::parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(c4.components(), vec![vec![0, 1, 2, 3]]);

        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.components(), vec![vec![0, 1], vec![2, 3]]);

        let edgeless = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(edgeless.components().len(), 3);
    }

    #[test]
    fn isolated_vertices() {
        assert!(!path(2).has_isolated_vertex());
        assert!(Graph::from_edges(1, &[]).unwrap().has_isolated_vertex());
        let k3_plus = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3_plus.has_isolated_vertex());
    }

    #[test]
    fn rooting_a_path_at_the_middle() {
        let view = root_tree(&path(3), 1).unwrap();
        assert_eq!(view.children(1), &[0, 2]);
        assert_eq!(view.order(), &[2, 0, 1]);
        assert_eq!(view.parent(0), Some(1));
        assert_eq!(view.parent(1), None);
    }

    #[test]
    fn rooting_p2() {
        let view = root_tree(&path(2), 0).unwrap();
        assert_eq!(view.order(), &[1, 0]);
    }

    #[test]
    fn rooting_a_star_at_a_leaf() {
        // K_{1,4}: centre 0, leaves 1..=4; root at leaf 1.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let view = root_tree(&g, 1).unwrap();
        assert_eq!(view.parent(0), Some(1));
        assert_eq!(view.children(0), &[2, 3, 4]);
        assert_eq!(view.parent(2), Some(0));
        assert_eq!(*view.order().last().unwrap(), 1);
    }

    #[test]
    fn rooting_rejects_non_trees() {
        let c4 = Graph::parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(root_tree(&c4, 0).unwrap_err(), GraphError::NotATree);
        let forest = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(root_tree(&forest, 0).unwrap_err(), GraphError::NotATree);
    }

    #[test]
    fn reverse_bfs_puts_children_before_parents() {
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)],
        )
        .unwrap();
        for root in 0..7 {
            let view = root_tree(&g, root).unwrap();
            let pos: Vec<_> = {
                let mut p = vec![0; 7];
                for (i, &v) in view.order().iter().enumerate() {
                    p[v] = i;
                }
                p
            };
            for v in 0..7 {
                if let Some(p) = view.parent(v) {
                    assert!(pos[v] < pos[p]);
                }
            }
        }
    }
}
