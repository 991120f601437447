//! Simple undirected graphs with a cached non-increasing degree sequence.
//!
//! Graphs are immutable after construction: every constructor validates
//! simplicity (no self-loops, no duplicate edges) and precomputes the
//! degree sequence, its prefix sums and connectivity, so the bound and
//! enumeration layers can treat a `Graph` as a read-only value shared
//! across threads.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected two whitespace-separated node tokens, got {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: self-loop on node '{node}' (graph must be simple)")]
    SelfLoop { line: usize, node: String },
    #[error("line {line}: duplicate edge '{a} {b}' (graph must be simple)")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("graph has no nodes")]
    Empty,
    #[error("edge ({a}, {b}) references a node outside 0..{n}")]
    NodeOutOfRange { a: u32, b: u32, n: usize },
    #[error("self-loop on node {node} (graph must be simple)")]
    SelfLoopEdge { node: u32 },
    #[error("duplicate edge ({a}, {b}) (graph must be simple)")]
    DuplicateEdgePair { a: u32, b: u32 },
    #[error("subsequence length {n} exceeds node count {node_count}")]
    SubsequenceOutOfRange { n: usize, node_count: usize },
}

/// Which end of the degree sequence a [`DegreeSubsequence`] was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsequenceKind {
    Head,
    Tail,
}

/// A contiguous slice of the non-increasing degree sequence with its cached sum.
#[derive(Debug, Clone, Copy)]
pub struct DegreeSubsequence<'a> {
    values: &'a [u32],
    kind: SubsequenceKind,
    sum: u64,
}

impl<'a> DegreeSubsequence<'a> {
    pub fn values(&self) -> &'a [u32] {
        self.values
    }

    pub fn kind(&self) -> SubsequenceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.sum
    }
}

/// An immutable simple undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    /// Sorted neighbor lists, one per node.
    adj: Vec<Vec<u32>>,
    /// Canonical edge list: `u < v`, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    /// Node degrees in non-increasing order (ties broken by node id).
    degree_sequence: Vec<u32>,
    /// `degree_prefix[k]` = sum of the first `k` entries of the degree sequence.
    degree_prefix: Vec<u64>,
    /// Original node labels when the graph came from a file; `None` for
    /// generated graphs, whose labels are their indices.
    labels: Option<Vec<String>>,
    connected: bool,
}

impl Graph {
    /// Builds a graph on nodes `0..n` from an edge list, validating simplicity.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut canon: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(GraphError::NodeOutOfRange { a, b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoopEdge { node: a });
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdgePair { a: w[0].0, b: w[0].1 });
        }
        Ok(Self::from_canonical(n, canon, None))
    }

    fn from_canonical(n: usize, edges: Vec<(u32, u32)>, labels: Option<Vec<String>>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        // Stable sort keeps equal degrees in node-id order.
        let mut degree_sequence: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
        degree_sequence.sort_by(|a, b| b.cmp(a));

        let mut degree_prefix = Vec::with_capacity(n + 1);
        degree_prefix.push(0u64);
        for &d in &degree_sequence {
            degree_prefix.push(degree_prefix.last().unwrap() + u64::from(d));
        }

        let connected = bfs_reaches_all(&adj);

        Graph { adj, edges, degree_sequence, degree_prefix, labels, connected }
    }

    /// Parses a line-oriented edge list: two whitespace-separated node tokens
    /// per line, `#` starts a comment, blank lines are ignored. Nodes are
    /// relabeled densely `0..N-1` in first-appearance order; the original
    /// tokens are retained as labels.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        fn id_of<'t>(
            ids: &mut HashMap<&'t str, u32>,
            labels: &mut Vec<String>,
            tok: &'t str,
        ) -> u32 {
            *ids.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() as u32 - 1
            })
        }

        let mut ids: HashMap<&str, u32> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut seen: HashMap<(u32, u32), usize> = HashMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next()) {
                (None, _) => continue, // blank or comment-only line
                (Some(a), Some(b)) => (a, b),
                (Some(_), None) => return Err(GraphError::MalformedLine { line, found: 1 }),
            };
            let extra = tokens.count();
            if extra > 0 {
                return Err(GraphError::MalformedLine { line, found: 2 + extra });
            }
            if a == b {
                return Err(GraphError::SelfLoop { line, node: a.to_string() });
            }
            let u = id_of(&mut ids, &mut labels, a);
            let v = id_of(&mut ids, &mut labels, b);
            let key = (u.min(v), u.max(v));
            if seen.insert(key, line).is_some() {
                return Err(GraphError::DuplicateEdge {
                    line,
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
            edges.push(key);
        }

        if labels.is_empty() {
            return Err(GraphError::Empty);
        }
        edges.sort_unstable();
        Ok(Self::from_canonical(labels.len(), edges, Some(labels)))
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        Self::from_canonical(n, edges, None)
    }

    /// Path on `n` nodes (`n-1` edges).
    pub fn path(n: usize) -> Self {
        let edges = (0..n.saturating_sub(1) as u32).map(|u| (u, u + 1)).collect();
        Self::from_canonical(n, edges, None)
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|u| (u, u + 1)).collect();
        edges.push((0, n as u32 - 1));
        edges.sort_unstable();
        Self::from_canonical(n, edges, None)
    }

    /// Star `S_n`: node 0 joined to the other `n-1` nodes.
    pub fn star(n: usize) -> Self {
        let edges = (1..n as u32).map(|v| (0, v)).collect();
        Self::from_canonical(n, edges, None)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].len() as u32
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// Canonical edge list: `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Node degrees in non-increasing order.
    pub fn degree_sequence(&self) -> &[u32] {
        &self.degree_sequence
    }

    /// Prefix sums of the degree sequence; entry `k` is `head_sum(k)`.
    pub(crate) fn degree_prefix(&self) -> &[u64] {
        &self.degree_prefix
    }

    /// Original label of node `v` (its index rendered as text for generated graphs).
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// First `n` entries of the degree sequence (the `n` largest degrees).
    pub fn head(&self, n: usize) -> Result<DegreeSubsequence<'_>, GraphError> {
        self.check_len(n)?;
        Ok(DegreeSubsequence {
            values: &self.degree_sequence[..n],
            kind: SubsequenceKind::Head,
            sum: self.degree_prefix[n],
        })
    }

    /// Last `n` entries of the degree sequence (the `n` smallest degrees).
    pub fn tail(&self, n: usize) -> Result<DegreeSubsequence<'_>, GraphError> {
        self.check_len(n)?;
        let total = self.node_count();
        Ok(DegreeSubsequence {
            values: &self.degree_sequence[total - n..],
            kind: SubsequenceKind::Tail,
            sum: self.degree_prefix[total] - self.degree_prefix[total - n],
        })
    }

    pub fn head_sum(&self, n: usize) -> Result<u64, GraphError> {
        self.check_len(n)?;
        Ok(self.degree_prefix[n])
    }

    pub fn tail_sum(&self, n: usize) -> Result<u64, GraphError> {
        self.check_len(n)?;
        let total = self.node_count();
        Ok(self.degree_prefix[total] - self.degree_prefix[total - n])
    }

    fn check_len(&self, n: usize) -> Result<(), GraphError> {
        if n > self.node_count() {
            Err(GraphError::SubsequenceOutOfRange { n, node_count: self.node_count() })
        } else {
            Ok(())
        }
    }

    /// Renders the canonical edge list, one `u v` line per edge, using
    /// original labels when present.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", self.label(u as usize), self.label(v as usize));
        }
        out
    }
}

fn bfs_reaches_all(adj: &[Vec<u32>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = vec![0u32];
    seen[0] = true;
    let mut reached = 1usize;
    while let Some(v) = queue.pop() {
        for &u in &adj[v as usize] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                reached += 1;
                queue.push(u);
            }
        }
    }
    reached == n
}

/// Erdős–Gallai test: a nonnegative integer list is the degree sequence of
/// some simple graph iff its sum is even and for every `k`,
/// `sum of the k largest entries <= k(k-1) + sum over the rest of min(d_i, k)`.
pub fn erdos_gallai_graphic(seq: &[u32]) -> bool {
    let mut d: Vec<u64> = seq.iter().map(|&x| u64::from(x)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: u64 = d.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let mut left = 0u64;
    for k in 1..=n {
        left += d[k - 1];
        let kk = k as u64;
        let right: u64 = kk * (kk - 1) + d[k..].iter().map(|&x| x.min(kk)).sum::<u64>();
        if left > right {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path_on_three_nodes() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree_sequence(), &[2, 1, 1]);
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = Graph::parse_edge_list("0 0").unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { line: 1, .. }));
    }

    #[test]
    fn parse_relabels_tokens_in_first_appearance_order() {
        let g = Graph::parse_edge_list("a b\nb c\nc a").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree_sequence(), &[2, 2, 2]);
        assert_eq!(g.label(0), "a");
        assert_eq!(g.label(2), "c");
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let g = Graph::parse_edge_list("# header\n\n0 1 # trailing\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Graph::parse_edge_list("0 1\n2\n").unwrap_err();
        assert!(matches!(err, GraphError::MalformedLine { line: 2, found: 1 }));
        let err = Graph::parse_edge_list("0 1\n1 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 3, .. }));
        let err = Graph::parse_edge_list("0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 2, .. }));
    }

    #[test]
    fn star_head_tail_sums() {
        let g = Graph::star(4); // degrees [3,1,1,1]
        assert_eq!(g.degree_sequence(), &[3, 1, 1, 1]);
        assert_eq!(g.head_sum(2).unwrap(), 4);
        assert_eq!(g.tail_sum(2).unwrap(), 2);
        assert_eq!(g.head_sum(4).unwrap(), 2 * g.edge_count());
        assert_eq!(g.tail_sum(4).unwrap(), 2 * g.edge_count());
        assert_eq!(g.head_sum(0).unwrap(), 0);
        assert!(g.head_sum(5).is_err());
    }

    #[test]
    fn head_and_tail_subsequences() {
        let g = Graph::star(4);
        let h = g.head(2).unwrap();
        assert_eq!(h.values(), &[3, 1]);
        assert_eq!(h.kind(), SubsequenceKind::Head);
        assert_eq!(h.sum(), 4);
        let t = g.tail(2).unwrap();
        assert_eq!(t.values(), &[1, 1]);
        assert_eq!(t.kind(), SubsequenceKind::Tail);
        assert_eq!((t.sum(), t.len()), (2, 2));
    }

    #[test]
    fn head_plus_tail_partitions_degree_sum() {
        let g = Graph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n4 5").unwrap();
        let m2 = 2 * g.edge_count();
        for n in 0..=g.node_count() {
            let h = g.head_sum(n).unwrap();
            let t = g.tail_sum(g.node_count() - n).unwrap();
            assert_eq!(h + t, m2);
            assert!(h >= g.tail_sum(n).unwrap());
        }
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(3).is_connected());
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        let singleton = Graph::from_edges(1, []).unwrap();
        assert!(singleton.is_connected());
    }

    #[test]
    fn erdos_gallai_examples() {
        assert!(erdos_gallai_graphic(&[3, 3, 3, 3])); // K4
        assert!(!erdos_gallai_graphic(&[3, 1, 1])); // odd sum
        assert!(!erdos_gallai_graphic(&[4, 4, 4, 1, 1]));
        assert!(erdos_gallai_graphic(&[]));
        assert!(erdos_gallai_graphic(&[0, 0]));
        assert!(!erdos_gallai_graphic(&[2])); // degree exceeds n-1
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 2").unwrap();
        let sum: u64 = g.degree_sequence().iter().map(|&d| u64::from(d)).sum();
        assert_eq!(sum, 2 * g.edge_count());
        assert!(erdos_gallai_graphic(g.degree_sequence()));
    }

    #[test]
    fn from_edges_validates() {
        assert!(matches!(Graph::from_edges(0, []), Err(GraphError::Empty)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoopEdge { node: 0 })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdgePair { a: 0, b: 1 })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { .. })
        ));
    }

    #[test]
    fn edge_list_roundtrip_is_canonical() {
        let g = Graph::parse_edge_list("c a\na b").unwrap();
        // labels: c=0, a=1, b=2; canonical edges (0,1), (1,2)
        assert_eq!(g.to_edge_list_string(), "c a\na b\n");
        let g2 = Graph::parse_edge_list(&g.to_edge_list_string()).unwrap();
        assert_eq!(g2.edges(), g.edges());
    }
}
