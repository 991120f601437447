//! Dyad counting for a binary node characteristic and the randomized
//! baseline: expected dyad counts, dyadicity D and heterophilicity H.
//!
//! Expectations are exact rationals so that averaging the exhaustive
//! enumeration over all assignments reproduces them with no rounding.

use num::rational::Ratio;
use thiserror::Error;

use crate::graph::Graph;

/// Exact rational used for densities, expectations and the D/H ratios.
pub type Rational = Ratio<i128>;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("characteristic has {got} labels but the graph has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("density undefined for a graph with fewer than 2 nodes")]
    DensityUndefined,
    #[error("line {line}: expected 0 or 1, got '{token}'")]
    BadLabel { line: usize, token: String },
    #[error("line {line}: bad node id '{token}'")]
    BadNodeId { line: usize, token: String },
    #[error("line {line}: node id {id} out of range 0..{n}")]
    NodeIdOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: node id {id} listed twice")]
    DuplicateNodeId { line: usize, id: usize },
}

/// Binary label vector over the nodes of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicAssignment {
    labels: Vec<bool>,
    n1: usize,
}

impl CharacteristicAssignment {
    pub fn from_labels(labels: Vec<bool>) -> Self {
        let n1 = labels.iter().filter(|&&b| b).count();
        CharacteristicAssignment { labels, n1 }
    }

    /// Builds the assignment whose 1-labeled set is `ones`, over `n` nodes.
    pub fn from_one_set(n: usize, ones: &[usize]) -> Self {
        let mut labels = vec![false; n];
        for &v in ones {
            labels[v] = true;
        }
        Self::from_labels(labels)
    }

    /// Parses the vector format: one `0` or `1` per line, node order.
    /// `#` comments and blank lines are ignored.
    pub fn parse_vector(text: &str) -> Result<Self, MetricsError> {
        let mut labels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            match content {
                "0" => labels.push(false),
                "1" => labels.push(true),
                other => {
                    return Err(MetricsError::BadLabel { line, token: other.to_string() })
                }
            }
        }
        Ok(Self::from_labels(labels))
    }

    /// Parses the set format: one node id per line, the ids of the
    /// 1-labeled nodes. `n` is the graph's node count.
    pub fn parse_set(text: &str, n: usize) -> Result<Self, MetricsError> {
        let mut labels = vec![false; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let id: usize = content
                .parse()
                .map_err(|_| MetricsError::BadNodeId { line, token: content.to_string() })?;
            if id >= n {
                return Err(MetricsError::NodeIdOutOfRange { line, id, n });
            }
            if labels[id] {
                return Err(MetricsError::DuplicateNodeId { line, id });
            }
            labels[id] = true;
        }
        Ok(Self::from_labels(labels))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n0(&self) -> usize {
        self.labels.len() - self.n1
    }

    pub fn label(&self, v: usize) -> bool {
        self.labels[v]
    }

    /// Swaps labels 0 and 1.
    pub fn complement(&self) -> Self {
        Self::from_labels(self.labels.iter().map(|&b| !b).collect())
    }
}

/// Edge counts by endpoint labels: 1-1, 1-0 and 0-0 dyads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadCounts {
    pub m11: u64,
    pub m10: u64,
    pub m00: u64,
}

impl DyadCounts {
    pub fn total(&self) -> u64 {
        self.m11 + self.m10 + self.m00
    }
}

/// Density and expected dyad counts for a random placement of `n1` ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadStats {
    pub node_count: usize,
    pub edge_count: u64,
    pub n1: usize,
    /// 2M / N(N-1)
    pub density: Rational,
    /// n1(n1-1)/2 * density
    pub expected_m11: Rational,
    /// n1(N-n1) * density
    pub expected_m10: Rational,
}

/// Classifies each edge by its endpoint labels.
pub fn count_dyads(
    g: &Graph,
    a: &CharacteristicAssignment,
) -> Result<DyadCounts, MetricsError> {
    if a.len() != g.node_count() {
        return Err(MetricsError::LengthMismatch { expected: g.node_count(), got: a.len() });
    }
    let mut counts = DyadCounts { m11: 0, m10: 0, m00: 0 };
    for &(u, v) in g.edges() {
        match (a.label(u as usize), a.label(v as usize)) {
            (true, true) => counts.m11 += 1,
            (false, false) => counts.m00 += 1,
            _ => counts.m10 += 1,
        }
    }
    debug_assert_eq!(counts.total(), g.edge_count());
    Ok(counts)
}

/// Expected 1-1 and 1-0 dyad counts under uniformly random placement of
/// `n1` ones on `n` nodes, as exact rationals.
pub fn expected_dyads(n: usize, m: u64, n1: usize) -> Result<(Rational, Rational), MetricsError> {
    if n < 2 {
        return Err(MetricsError::DensityUndefined);
    }
    let n_i = n as i128;
    let n1_i = n1 as i128;
    let density = Rational::new(2 * m as i128, n_i * (n_i - 1));
    let expected_m11 = Rational::from_integer(n1_i * (n1_i - 1) / 2) * density;
    let expected_m10 = Rational::from_integer(n1_i * (n_i - n1_i)) * density;
    Ok((expected_m11, expected_m10))
}

pub fn dyad_stats(n: usize, m: u64, n1: usize) -> Result<DyadStats, MetricsError> {
    if n < 2 {
        return Err(MetricsError::DensityUndefined);
    }
    let n_i = n as i128;
    let (expected_m11, expected_m10) = expected_dyads(n, m, n1)?;
    Ok(DyadStats {
        node_count: n,
        edge_count: m,
        n1,
        density: Rational::new(2 * m as i128, n_i * (n_i - 1)),
        expected_m11,
        expected_m10,
    })
}

/// Dyadicity D = m11 / expected_m11 and heterophilicity H = m10 / expected_m10.
/// Each ratio is `None` when its expectation is zero (the paper never
/// evaluates those corners).
pub fn dyadicity_heterophilicity(
    counts: &DyadCounts,
    stats: &DyadStats,
) -> (Option<Rational>, Option<Rational>) {
    let d = ratio_or_undefined(counts.m11, &stats.expected_m11);
    let h = ratio_or_undefined(counts.m10, &stats.expected_m10);
    (d, h)
}

pub(crate) fn ratio_or_undefined(observed: u64, expected: &Rational) -> Option<Rational> {
    if expected.numer() == &0 {
        None
    } else {
        Some(Rational::from_integer(observed as i128) / expected)
    }
}
