//! Structural bounds on the dyad counts m11 and m10.
//!
//! The original bounds use only M and n1. The improved upper bounds and the
//! two lower bounds read the degree sequence: every formula here depends on
//! the graph only through its non-increasing degree sequence (plus a
//! connectivity flag for the m10 lower bound), so two graphs with the same
//! degree sequence get identical reports.

use std::borrow::Cow;
use std::fmt::Write as _;

use crate::graph::Graph;
use crate::metrics::{expected_dyads, ratio_or_undefined, Rational};
use crate::render::{csv_rational, json_rational};

/// Degree-sequence data the bounds read: the sorted degrees, their prefix
/// sums, the edge count and whether the realization is known to be connected.
#[derive(Debug, Clone)]
pub struct DegreeSequenceView<'a> {
    degrees: Cow<'a, [u32]>,
    prefix: Cow<'a, [u64]>,
    edge_count: u64,
    connected: bool,
}

impl<'a> DegreeSequenceView<'a> {
    /// View borrowing a graph's cached degree data.
    pub fn from_graph(g: &'a Graph) -> Self {
        DegreeSequenceView {
            degrees: Cow::Borrowed(g.degree_sequence()),
            prefix: Cow::Borrowed(g.degree_prefix()),
            edge_count: g.edge_count(),
            connected: g.is_connected(),
        }
    }

    /// Owned view over a bare degree sequence (sorted internally).
    /// `assume_connected` selects whether the m10 lower bound may use the
    /// connectivity argument; pass `false` for sequences of unknown origin.
    pub fn from_degrees(mut degrees: Vec<u32>, assume_connected: bool) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut prefix = Vec::with_capacity(degrees.len() + 1);
        prefix.push(0u64);
        for &d in &degrees {
            prefix.push(prefix.last().unwrap() + u64::from(d));
        }
        let total = *prefix.last().unwrap();
        debug_assert!(total % 2 == 0, "degree sum must be even");
        DegreeSequenceView {
            degrees: Cow::Owned(degrees),
            prefix: Cow::Owned(prefix),
            edge_count: total / 2,
            connected: assume_connected,
        }
    }

    pub fn node_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn assume_connected(&self) -> bool {
        self.connected
    }

    fn head_sum(&self, n: usize) -> u64 {
        self.prefix[n]
    }

    fn tail_sum(&self, n: usize) -> u64 {
        let total = self.node_count();
        self.prefix[total] - self.prefix[total - n]
    }

    /// Sum over the first `n` degrees of `min(d_i, cap)`.
    fn head_capped_sum(&self, n: usize, cap: u32) -> u64 {
        let capped = self.degrees[..n].partition_point(|&d| d > cap);
        u64::from(cap) * capped as u64 + (self.prefix[n] - self.prefix[capped])
    }

    /// Original upper bound on m11: min(M, C(n1,2)).
    pub fn ub_m11_old(&self, n1: usize) -> u64 {
        self.edge_count.min(choose2(n1))
    }

    /// Original upper bound on m10: min(M, n1*n0).
    pub fn ub_m10_old(&self, n1: usize) -> u64 {
        let n0 = (self.node_count() - n1) as u64;
        self.edge_count.min(n1 as u64 * n0)
    }

    /// Improved upper bound on m11: the old bound capped by the densest
    /// hypothetical realization of the degree-sequence head, with degrees
    /// clipped at n1-1 and the halved stub total rounded up.
    pub fn ub_m11(&self, n1: usize) -> u64 {
        let cap = n1.saturating_sub(1) as u32;
        let stub_half = self.head_capped_sum(n1, cap).div_ceil(2);
        self.ub_m11_old(n1).min(stub_half)
    }

    /// Improved upper bound on m10: the old bound capped by the cross-degree
    /// budget of either partition of the degree sequence.
    pub fn ub_m10(&self, n1: usize) -> u64 {
        let n0 = self.node_count() - n1;
        let from_ones = self.head_capped_sum(n1, n0 as u32);
        let from_zeros = self.head_capped_sum(n0, n1 as u32);
        self.ub_m10_old(n1).min(from_ones.min(from_zeros))
    }

    /// Lower bound on m11: stubs of the n1 lowest-degree nodes that cannot
    /// all terminate in the complementary head must pair up internally.
    pub fn lb_m11(&self, n1: usize) -> u64 {
        let n0 = self.node_count() - n1;
        let surplus = self.tail_sum(n1) as i128 - self.head_sum(n0) as i128;
        surplus.div_euclid(2).max(0) as u64
    }

    /// Lower bound on m10. For 0 < n1 < N a connected realization always has
    /// a cross edge; the tail's stub surplus over a K_{n1} clique raises the
    /// bound further. Without the connectivity assumption the floor drops to 0.
    pub fn lb_m10(&self, n1: usize) -> u64 {
        let n = self.node_count();
        if n1 == 0 || n1 == n {
            return 0;
        }
        let surplus = self.tail_sum(n1) as i128 - (n1 as i128) * (n1 as i128 - 1);
        let floor = if self.connected { 1 } else { 0 };
        surplus.max(floor) as u64
    }

    /// All six bounds plus the induced dyadicity/heterophilicity ranges.
    pub fn report(&self, n1: usize) -> BoundsReport {
        let ub_m11_old = self.ub_m11_old(n1);
        let ub_m10_old = self.ub_m10_old(n1);
        let ub_m11 = self.ub_m11(n1);
        let ub_m10 = self.ub_m10(n1);
        let lb_m11 = self.lb_m11(n1);
        let lb_m10 = self.lb_m10(n1);

        let (d_min, d_max, h_min, h_max) = if self.node_count() >= 2 {
            let (e11, e10) =
                expected_dyads(self.node_count(), self.edge_count, n1).expect("node_count >= 2");
            (
                ratio_or_undefined(lb_m11, &e11),
                ratio_or_undefined(ub_m11, &e11),
                ratio_or_undefined(lb_m10, &e10),
                ratio_or_undefined(ub_m10, &e10),
            )
        } else {
            (None, None, None, None)
        };

        debug_assert!(lb_m11 <= ub_m11 && ub_m11 <= ub_m11_old);
        debug_assert!(lb_m10 <= ub_m10 && ub_m10 <= ub_m10_old);

        BoundsReport {
            n1,
            ub_m11_old,
            ub_m10_old,
            ub_m11,
            ub_m10,
            lb_m11,
            lb_m10,
            d_min,
            d_max,
            h_min,
            h_max,
        }
    }
}

fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Old and new bounds on the dyad counts for one value of n1, with the
/// dyadicity/heterophilicity range they induce. Range entries are `None`
/// when the corresponding expectation is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n1: usize,
    pub ub_m11_old: u64,
    pub ub_m10_old: u64,
    pub ub_m11: u64,
    pub ub_m10: u64,
    pub lb_m11: u64,
    pub lb_m10: u64,
    pub d_min: Option<Rational>,
    pub d_max: Option<Rational>,
    pub h_min: Option<Rational>,
    pub h_max: Option<Rational>,
}

impl BoundsReport {
    /// JSON object with fixed field order; undefined range entries render
    /// as the string `"undefined"`.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{");
        let _ = write!(
            s,
            "\"n1\":{},\"ub_m11_old\":{},\"ub_m10_old\":{},\"ub_m11\":{},\"ub_m10\":{},\"lb_m11\":{},\"lb_m10\":{}",
            self.n1,
            self.ub_m11_old,
            self.ub_m10_old,
            self.ub_m11,
            self.ub_m10,
            self.lb_m11,
            self.lb_m10,
        );
        for (name, value) in [
            ("d_min", &self.d_min),
            ("d_max", &self.d_max),
            ("h_min", &self.h_min),
            ("h_max", &self.h_max),
        ] {
            let _ = write!(s, ",\"{}\":{}", name, json_rational(value.as_ref()));
        }
        s.push('}');
        s
    }

    pub fn csv_header() -> &'static str {
        "n1,ub_m11_old,ub_m10_old,ub_m11,ub_m10,lb_m11,lb_m10,d_min,d_max,h_min,h_max"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n1,
            self.ub_m11_old,
            self.ub_m10_old,
            self.ub_m11,
            self.ub_m10,
            self.lb_m11,
            self.lb_m10,
            csv_rational(self.d_min.as_ref()),
            csv_rational(self.d_max.as_ref()),
            csv_rational(self.h_min.as_ref()),
            csv_rational(self.h_max.as_ref()),
        )
    }
}

pub fn ub_m11_old(m: u64, n1: usize) -> u64 {
    m.min(choose2(n1))
}

pub fn ub_m10_old(m: u64, n1: usize, n0: usize) -> u64 {
    m.min(n1 as u64 * n0 as u64)
}

pub fn ub_m11(g: &Graph, n1: usize) -> u64 {
    DegreeSequenceView::from_graph(g).ub_m11(n1)
}

pub fn ub_m10(g: &Graph, n1: usize) -> u64 {
    DegreeSequenceView::from_graph(g).ub_m10(n1)
}

pub fn lb_m11(g: &Graph, n1: usize) -> u64 {
    DegreeSequenceView::from_graph(g).lb_m11(n1)
}

pub fn lb_m10(g: &Graph, n1: usize) -> u64 {
    DegreeSequenceView::from_graph(g).lb_m10(n1)
}

pub fn bounds_report(g: &Graph, n1: usize) -> BoundsReport {
    DegreeSequenceView::from_graph(g).report(n1)
}

/// Reports for every n1 in 0..=N.
pub fn bounds_sweep(g: &Graph) -> Vec<BoundsReport> {
    let view = DegreeSequenceView::from_graph(g);
    (0..=g.node_count()).map(|n1| view.report(n1)).collect()
}
