//! Exact phase-diagram enumeration over all n1-subsets, feasible-region
//! areas, and the per-bound gain curves with ensemble averaging.
//!
//! The subset space is partitioned into fixed-size blocks of combination
//! ranks. Each block is walked independently: the first subset is unranked,
//! then successive lexicographic combinations update the dyad counts
//! incrementally from the swapped nodes' neighborhoods. Per-block tallies
//! merge by summation, so results are identical for any worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bounds::{BoundsReport, DegreeSequenceView};
use crate::generate::{generate, GeneratorSpec};
use crate::graph::Graph;
use crate::metrics::Rational;
use crate::render::{format_sig12, rational_to_f64};

/// Default enumeration budget: refuse sweeps over more subsets than this.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Ranks per block; fixed so the partition does not depend on worker count.
const BLOCK_SIZE: u64 = 1 << 14;

/// Use a dense per-worker tally when the old-bound rectangle has at most
/// this many cells.
const DENSE_TALLY_LIMIT: u128 = 1 << 20;

#[derive(Debug, Error)]
pub enum PhaseError {
    #[error(
        "enumeration refused: C({n}, {n1}) = {subsets} subsets exceeds the budget of {budget}"
    )]
    BudgetExceeded { n: usize, n1: usize, subsets: u128, budget: u64 },
    #[error("n1 = {n1} exceeds the node count {n}")]
    N1OutOfRange { n1: usize, n: usize },
    #[error("ensemble needs at least one run")]
    NoRuns,
    #[error("instance with seed {seed} failed: {source}")]
    Generation {
        seed: u64,
        #[source]
        source: crate::generate::GenError,
    },
}

/// Saturating binomial coefficient; overflow reports `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k {
        match result.checked_mul((n - k + i) as u128) {
            Some(x) => result = x / i as u128,
            None => return u128::MAX,
        }
    }
    result
}

/// Lexicographically `rank`-th k-combination of `0..n`.
fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<u32> {
    let mut comb = Vec::with_capacity(k);
    let mut next = 0usize;
    for i in 0..k {
        let mut c = next;
        loop {
            let count = binomial(n - c - 1, k - i - 1);
            if count <= rank {
                rank -= count;
                c += 1;
            } else {
                comb.push(c as u32);
                next = c + 1;
                break;
            }
        }
    }
    comb
}

/// Walks k-subsets in lexicographic rank order, maintaining (m11, m10)
/// incrementally under the element swaps between successive combinations.
struct Walker<'a> {
    adj: &'a [Vec<u32>],
    n: u32,
    k: usize,
    comb: Vec<u32>,
    membership: Vec<u64>,
    m11: u64,
    m10: u64,
}

impl<'a> Walker<'a> {
    fn new(g: &'a Graph, k: usize, rank: u128) -> Self {
        let n = g.node_count();
        let adj = g.adjacency();
        let comb = unrank_combination(n, k, rank);
        let mut membership = vec![0u64; n.div_ceil(64)];
        for &v in &comb {
            membership[(v >> 6) as usize] |= 1u64 << (v & 63);
        }
        let mut m11 = 0u64;
        let mut m10 = 0u64;
        for &v in &comb {
            for &u in &adj[v as usize] {
                if membership[(u >> 6) as usize] & (1u64 << (u & 63)) != 0 {
                    if u > v {
                        m11 += 1;
                    }
                } else {
                    m10 += 1;
                }
            }
        }
        Walker { adj, n: n as u32, k, comb, membership, m11, m10 }
    }

    #[inline]
    fn contains(&self, u: u32) -> bool {
        self.membership[(u >> 6) as usize] & (1u64 << (u & 63)) != 0
    }

    #[inline]
    fn counts(&self) -> (u64, u64) {
        (self.m10, self.m11)
    }

    /// Removes a current member; its 1-1 edges become 1-0, its 1-0 edges 0-0.
    fn remove(&mut self, v: u32) {
        for &u in &self.adj[v as usize] {
            if self.contains(u) {
                self.m11 -= 1;
                self.m10 += 1;
            } else {
                self.m10 -= 1;
            }
        }
        self.membership[(v >> 6) as usize] &= !(1u64 << (v & 63));
    }

    fn add(&mut self, v: u32) {
        for &u in &self.adj[v as usize] {
            if self.contains(u) {
                self.m10 -= 1;
                self.m11 += 1;
            } else {
                self.m10 += 1;
            }
        }
        self.membership[(v >> 6) as usize] |= 1u64 << (v & 63);
    }

    /// Steps to the lexicographic successor; false at the last combination.
    fn advance(&mut self) -> bool {
        let k = self.k;
        if k == 0 {
            return false;
        }
        // Fast path: only the last element moves.
        let last = self.comb[k - 1];
        if last + 1 < self.n {
            self.remove(last);
            // remove() before add() keeps the membership mask consistent.
            self.comb[k - 1] = last + 1;
            self.add(last + 1);
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.comb[i] + (k as u32 - i as u32) < self.n {
                break;
            }
        }
        for j in (i..k).rev() {
            self.remove(self.comb[j]);
        }
        let base = self.comb[i] + 1;
        for j in i..k {
            let v = base + (j - i) as u32;
            self.comb[j] = v;
            self.add(v);
        }
        true
    }
}

/// Visits (m10, m11) for every combination rank in `lo..hi`.
fn walk_block<F: FnMut(u64, u64)>(g: &Graph, k: usize, lo: u64, hi: u64, mut visit: F) {
    let mut walker = Walker::new(g, k, lo as u128);
    let (m10, m11) = walker.counts();
    visit(m10, m11);
    for _ in lo + 1..hi {
        let stepped = walker.advance();
        debug_assert!(stepped, "rank range exceeded the combination space");
        let (m10, m11) = walker.counts();
        visit(m10, m11);
    }
}

/// Per-worker tally: a dense grid over the old-bound rectangle when that is
/// small, otherwise a sparse map.
enum Tally {
    Dense { counts: Vec<u64>, cols: u64 },
    Sparse(BTreeMap<(u64, u64), u64>),
}

impl Tally {
    fn new(rect_rows: u64, rect_cols: u64) -> Self {
        if rect_rows as u128 * rect_cols as u128 <= DENSE_TALLY_LIMIT {
            Tally::Dense {
                counts: vec![0u64; (rect_rows * rect_cols) as usize],
                cols: rect_cols,
            }
        } else {
            Tally::Sparse(BTreeMap::new())
        }
    }

    #[inline]
    fn record(&mut self, m10: u64, m11: u64) {
        match self {
            Tally::Dense { counts, cols } => counts[(m10 * *cols + m11) as usize] += 1,
            Tally::Sparse(map) => *map.entry((m10, m11)).or_insert(0) += 1,
        }
    }

    fn merge(self, other: Self) -> Self {
        match (self, other) {
            (Tally::Dense { mut counts, cols }, Tally::Dense { counts: rhs, .. }) => {
                for (a, b) in counts.iter_mut().zip(rhs) {
                    *a += b;
                }
                Tally::Dense { counts, cols }
            }
            (Tally::Sparse(mut map), Tally::Sparse(rhs)) => {
                for (cell, count) in rhs {
                    *map.entry(cell).or_insert(0) += count;
                }
                Tally::Sparse(map)
            }
            _ => unreachable!("tally modes are fixed per enumeration"),
        }
    }

    fn into_cells(self) -> BTreeMap<(u64, u64), u64> {
        match self {
            Tally::Dense { counts, cols } => counts
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .map(|(idx, c)| ((idx as u64 / cols, idx as u64 % cols), c))
                .collect(),
            Tally::Sparse(map) => map,
        }
    }
}

/// Sparse map from each feasible (m10, m11) pair to its degeneracy: the
/// number of n1-subsets realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseDiagram {
    pub n1: usize,
    /// (m10, m11) -> number of assignments; key order is the CSV row order.
    pub cells: BTreeMap<(u64, u64), u64>,
    /// C(N, n1); always equals the sum of all degeneracies.
    pub total: u64,
}

impl PhaseDiagram {
    /// (min_m11, max_m11, min_m10, max_m10) over the support.
    pub fn support_extrema(&self) -> (u64, u64, u64, u64) {
        let mut it = self.cells.keys();
        let &(m10, m11) = it.next().expect("diagram has at least one cell");
        let mut extrema = (m11, m11, m10, m10);
        for &(m10, m11) in it {
            extrema.0 = extrema.0.min(m11);
            extrema.1 = extrema.1.max(m11);
            extrema.2 = extrema.2.min(m10);
            extrema.3 = extrema.3.max(m10);
        }
        extrema
    }

    /// Exact enumeration averages of m11 and m10 over all assignments.
    pub fn mean_dyads(&self) -> (Rational, Rational) {
        let mut sum11: i128 = 0;
        let mut sum10: i128 = 0;
        for (&(m10, m11), &count) in &self.cells {
            sum11 += m11 as i128 * count as i128;
            sum10 += m10 as i128 * count as i128;
        }
        let total = self.total as i128;
        (Rational::new(sum11, total), Rational::new(sum10, total))
    }

    /// CSV with header `m10,m11,count`, rows sorted by (m10, m11).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m10,m11,count\n");
        for (&(m10, m11), &count) in &self.cells {
            let _ = writeln!(out, "{},{},{}", m10, m11, count);
        }
        out
    }

    /// Grayscale SVG heatmap. Darkness is proportional to log(1 + count);
    /// m10 runs along the x axis, m11 up the y axis.
    pub fn to_svg(&self) -> String {
        const CELL: u64 = 14;
        const MARGIN: u64 = 46;
        let (min11, max11, min10, max10) = self.support_extrema();
        let cols = max10 - min10 + 1;
        let rows = max11 - min11 + 1;
        let width = MARGIN + cols * CELL + 10;
        let height = rows * CELL + MARGIN + 10;
        let max_count = self.cells.values().copied().max().unwrap_or(1);
        let log_max = ((max_count + 1) as f64).ln();

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
        );
        let _ = writeln!(svg, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
        for (&(m10, m11), &count) in &self.cells {
            let x = MARGIN + (m10 - min10) * CELL;
            let y = 10 + (max11 - m11) * CELL;
            let darkness = ((count + 1) as f64).ln() / log_max;
            let shade = (255.0 - 235.0 * darkness).round() as u32;
            let _ = writeln!(
                svg,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"rgb({shade},{shade},{shade})\" stroke=\"black\" stroke-width=\"0.5\"/>"
            );
        }
        let axis_y = 10 + rows * CELL;
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">m10</text>",
            MARGIN + cols * CELL / 2,
            axis_y + 30
        );
        let _ = writeln!(
            svg,
            "<text x=\"12\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12 {})\">m11</text>",
            10 + rows * CELL / 2,
            10 + rows * CELL / 2
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            MARGIN + CELL / 2,
            axis_y + 14,
            min10
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            MARGIN + cols * CELL - CELL / 2,
            axis_y + 14,
            max10
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>",
            MARGIN - 6,
            axis_y - CELL / 2 + 4,
            min11
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>",
            MARGIN - 6,
            10 + CELL / 2 + 4,
            max11
        );
        svg.push_str("</svg>\n");
        svg
    }
}

struct EnumPlan {
    total: u64,
    blocks: u64,
    rect_rows: u64,
    rect_cols: u64,
}

fn plan(g: &Graph, n1: usize, budget: u64) -> Result<EnumPlan, PhaseError> {
    let n = g.node_count();
    if n1 > n {
        return Err(PhaseError::N1OutOfRange { n1, n });
    }
    let subsets = binomial(n, n1);
    if subsets > budget as u128 {
        return Err(PhaseError::BudgetExceeded { n, n1, subsets, budget });
    }
    let total = subsets as u64;
    let view = DegreeSequenceView::from_graph(g);
    Ok(EnumPlan {
        total,
        blocks: total.div_ceil(BLOCK_SIZE),
        rect_rows: view.ub_m10_old(n1) + 1,
        rect_cols: view.ub_m11_old(n1) + 1,
    })
}

/// Runs `absorb` over every subset's (m10, m11), block by block, merging
/// per-worker accumulators with `merge`. Deterministic for any worker count.
fn scan_blocks<A, U, S, M>(
    g: &Graph,
    n1: usize,
    plan: &EnumPlan,
    parallel: bool,
    unit: U,
    absorb: S,
    merge: M,
) -> A
where
    A: Send,
    U: Fn() -> A + Send + Sync,
    S: Fn(&mut A, u64, u64) + Send + Sync,
    M: Fn(A, A) -> A + Send + Sync,
{
    let total = plan.total;
    let run_block = |acc: &mut A, b: u64| {
        let lo = b * BLOCK_SIZE;
        let hi = (lo + BLOCK_SIZE).min(total);
        walk_block(g, n1, lo, hi, |m10, m11| absorb(acc, m10, m11));
    };

    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..plan.blocks)
            .into_par_iter()
            .fold(&unit, |mut acc, b| {
                run_block(&mut acc, b);
                acc
            })
            .reduce(&unit, merge);
    }
    let _ = &merge;
    let _ = parallel;

    let mut acc = unit();
    for b in 0..plan.blocks {
        run_block(&mut acc, b);
    }
    acc
}

/// Exhaustively enumerates all C(N, n1) assignments and tallies the
/// degeneracy of every (m10, m11) cell. Refuses (rather than samples) when
/// the subset count exceeds `budget`. Runs on the current rayon pool when
/// the `parallel` feature is enabled.
pub fn enumerate_phase_diagram(g: &Graph, n1: usize, budget: u64) -> Result<PhaseDiagram, PhaseError> {
    enumerate_impl(g, n1, budget, cfg!(feature = "parallel"))
}

/// Sequential fallback: identical output, single-threaded walk.
pub fn enumerate_phase_diagram_seq(
    g: &Graph,
    n1: usize,
    budget: u64,
) -> Result<PhaseDiagram, PhaseError> {
    enumerate_impl(g, n1, budget, false)
}

fn enumerate_impl(
    g: &Graph,
    n1: usize,
    budget: u64,
    parallel: bool,
) -> Result<PhaseDiagram, PhaseError> {
    let plan = plan(g, n1, budget)?;
    let tally = scan_blocks(
        g,
        n1,
        &plan,
        parallel,
        || Tally::new(plan.rect_rows, plan.rect_cols),
        |t, m10, m11| t.record(m10, m11),
        Tally::merge,
    );
    let cells = tally.into_cells();
    debug_assert_eq!(cells.values().sum::<u64>(), plan.total);
    Ok(PhaseDiagram { n1, cells, total: plan.total })
}

/// Exact extrema (min_m11, max_m11, min_m10, max_m10) of the dyad counts
/// over all n1-assignments, without materializing the full diagram.
pub fn extremal_dyads(
    g: &Graph,
    n1: usize,
    budget: u64,
) -> Result<(u64, u64, u64, u64), PhaseError> {
    let plan = plan(g, n1, budget)?;
    let acc = scan_blocks(
        g,
        n1,
        &plan,
        cfg!(feature = "parallel"),
        || (u64::MAX, 0u64, u64::MAX, 0u64),
        |acc, m10, m11| {
            acc.0 = acc.0.min(m11);
            acc.1 = acc.1.max(m11);
            acc.2 = acc.2.min(m10);
            acc.3 = acc.3.max(m10);
        },
        |a, b| (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3)),
    );
    Ok(acc)
}

/// Lattice-cell count of the new-bound feasible region
/// [lb_m10, ub_m10] x [lb_m11, ub_m11]; 0 if a range is empty.
pub fn feasible_area(report: &BoundsReport) -> u128 {
    span(report.lb_m10, report.ub_m10) * span(report.lb_m11, report.ub_m11)
}

/// Area of the old-bound region [0, ub_m10_old] x [0, ub_m11_old].
pub fn old_feasible_area(report: &BoundsReport) -> u128 {
    span(0, report.ub_m10_old) * span(0, report.ub_m11_old)
}

fn span(lb: u64, ub: u64) -> u128 {
    if ub >= lb {
        (ub - lb + 1) as u128
    } else {
        0
    }
}

/// Feasible-region areas and per-bound gains for one n1. Each per-bound
/// gain substitutes that single bound into the old rectangle; the total
/// gain applies all four.
#[derive(Debug, Clone, PartialEq)]
pub struct GainRow {
    pub n1: usize,
    pub area_old: u128,
    pub area_new: u128,
    pub gain_ub_m11: Rational,
    pub gain_ub_m10: Rational,
    pub gain_lb_m11: Rational,
    pub gain_lb_m10: Rational,
    pub gain_total: Rational,
}

impl GainRow {
    pub fn from_report(report: &BoundsReport) -> Self {
        let old10 = span(0, report.ub_m10_old);
        let old11 = span(0, report.ub_m11_old);
        let area_old = old10 * old11;
        let area_new = feasible_area(report);
        let gain = |area: u128| {
            Rational::from_integer(1) - Rational::new(area as i128, area_old as i128)
        };
        GainRow {
            n1: report.n1,
            area_old,
            area_new,
            gain_ub_m11: gain(old10 * span(0, report.ub_m11)),
            gain_ub_m10: gain(span(0, report.ub_m10) * old11),
            gain_lb_m11: gain(old10 * span(report.lb_m11, report.ub_m11_old)),
            gain_lb_m10: gain(span(report.lb_m10, report.ub_m10_old) * old11),
            gain_total: gain(area_new),
        }
    }

    pub fn csv_header() -> &'static str {
        "n1,area_old,area_new,gain_ub_m11,gain_ub_m10,gain_lb_m11,gain_lb_m10,gain_total"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n1,
            self.area_old,
            self.area_new,
            format_sig12(rational_to_f64(&self.gain_ub_m11)),
            format_sig12(rational_to_f64(&self.gain_ub_m10)),
            format_sig12(rational_to_f64(&self.gain_lb_m11)),
            format_sig12(rational_to_f64(&self.gain_lb_m10)),
            format_sig12(rational_to_f64(&self.gain_total)),
        )
    }
}

/// Per-bound gains for every n1 in 0..=N; bounds only, no enumeration.
pub fn gain_curves(g: &Graph) -> Vec<GainRow> {
    let view = DegreeSequenceView::from_graph(g);
    (0..=g.node_count())
        .map(|n1| GainRow::from_report(&view.report(n1)))
        .collect()
}

/// Element-wise mean of gain curves over a seeded ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanGainRow {
    pub n1: usize,
    pub area_old: f64,
    pub area_new: f64,
    pub gain_ub_m11: f64,
    pub gain_ub_m10: f64,
    pub gain_lb_m11: f64,
    pub gain_lb_m10: f64,
    pub gain_total: f64,
}

impl MeanGainRow {
    pub fn csv_header() -> &'static str {
        GainRow::csv_header()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n1,
            format_sig12(self.area_old),
            format_sig12(self.area_new),
            format_sig12(self.gain_ub_m11),
            format_sig12(self.gain_ub_m10),
            format_sig12(self.gain_lb_m11),
            format_sig12(self.gain_lb_m10),
            format_sig12(self.gain_total),
        )
    }
}

/// Averages `gain_curves` over `runs` instances seeded seed, seed+1, ...
/// Instances run in parallel; the mean is accumulated in seed order, so the
/// output is deterministic for any worker count.
pub fn ensemble_gain(spec: &GeneratorSpec, runs: u64) -> Result<Vec<MeanGainRow>, PhaseError> {
    if runs == 0 {
        return Err(PhaseError::NoRuns);
    }
    let instance = |i: u64| -> Result<Vec<GainRow>, PhaseError> {
        let seed = spec.seed.wrapping_add(i);
        let mut inst = spec.clone();
        inst.seed = seed;
        let g = generate(&inst).map_err(|source| PhaseError::Generation { seed, source })?;
        Ok(gain_curves(&g))
    };

    #[cfg(feature = "parallel")]
    let curves: Vec<Vec<GainRow>> = {
        use rayon::prelude::*;
        (0..runs).into_par_iter().map(instance).collect::<Result<_, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let curves: Vec<Vec<GainRow>> = (0..runs).map(instance).collect::<Result<_, _>>()?;

    let rows = curves[0].len();
    let mut means = Vec::with_capacity(rows);
    for n1 in 0..rows {
        let mut acc = [0f64; 7];
        for curve in &curves {
            let row = &curve[n1];
            acc[0] += row.area_old as f64;
            acc[1] += row.area_new as f64;
            acc[2] += rational_to_f64(&row.gain_ub_m11);
            acc[3] += rational_to_f64(&row.gain_ub_m10);
            acc[4] += rational_to_f64(&row.gain_lb_m11);
            acc[5] += rational_to_f64(&row.gain_lb_m10);
            acc[6] += rational_to_f64(&row.gain_total);
        }
        let r = runs as f64;
        means.push(MeanGainRow {
            n1,
            area_old: acc[0] / r,
            area_new: acc[1] / r,
            gain_ub_m11: acc[2] / r,
            gain_ub_m10: acc[3] / r,
            gain_lb_m11: acc[4] / r,
            gain_lb_m10: acc[5] / r,
            gain_total: acc[6] / r,
        });
    }
    Ok(means)
}

/// Runs `f` on a dedicated pool with the given number of workers. In the
/// sequential build the pool is a no-op wrapper.
#[cfg(feature = "parallel")]
pub fn with_worker_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_worker_pool<T: Send>(_workers: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

pub fn gain_csv(rows: &[GainRow]) -> String {
    let mut out = String::from(GainRow::csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}

pub fn mean_gain_csv(rows: &[MeanGainRow]) -> String {
    let mut out = String::from(MeanGainRow::csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::bounds_report;
    use crate::generate::{Family, Target};
    use crate::metrics::{count_dyads, expected_dyads, CharacteristicAssignment};

    fn diagram(g: &Graph, n1: usize) -> PhaseDiagram {
        enumerate_phase_diagram(g, n1, DEFAULT_BUDGET).unwrap()
    }

    /// Independent oracle: full bitmask sweep with fresh dyad counts.
    fn mask_diagram(g: &Graph, n1: usize) -> BTreeMap<(u64, u64), u64> {
        let n = g.node_count();
        let mut cells = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != n1 {
                continue;
            }
            let labels = (0..n).map(|i| mask & (1 << i) != 0).collect();
            let c = count_dyads(g, &CharacteristicAssignment::from_labels(labels)).unwrap();
            *cells.entry((c.m10, c.m11)).or_insert(0u64) += 1;
        }
        cells
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(25, 12), 5_200_300);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(200, 100), u128::MAX); // saturates
    }

    #[test]
    fn unranking_is_lexicographic_and_complete() {
        let n = 7;
        let k = 3;
        let mut prev: Option<Vec<u32>> = None;
        for rank in 0..binomial(n, k) {
            let comb = unrank_combination(n, k, rank);
            assert_eq!(comb.len(), k);
            assert!(comb.windows(2).all(|w| w[0] < w[1]));
            if let Some(p) = prev {
                assert!(p < comb);
            }
            prev = Some(comb);
        }
    }

    #[test]
    fn triangle_diagram() {
        let d = diagram(&Graph::complete(3), 2);
        assert_eq!(d.total, 3);
        assert_eq!(d.cells, BTreeMap::from([((2, 1), 3)]));
    }

    #[test]
    fn p4_diagram_matches_hand_enumeration() {
        let d = diagram(&Graph::path(4), 2);
        assert_eq!(d.total, 6);
        assert_eq!(
            d.cells,
            BTreeMap::from([((1, 1), 2), ((2, 0), 1), ((2, 1), 1), ((3, 0), 2)])
        );
    }

    #[test]
    fn empty_and_full_assignments() {
        let g = Graph::parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 2").unwrap();
        let d0 = diagram(&g, 0);
        assert_eq!(d0.cells, BTreeMap::from([((0, 0), 1)]));
        let dn = diagram(&g, 4);
        assert_eq!(dn.cells, BTreeMap::from([((0, g.edge_count()), 1)]));
    }

    #[test]
    fn diagram_matches_mask_oracle() {
        let graphs = [
            Graph::path(6),
            Graph::star(6),
            Graph::cycle(7),
            Graph::complete(5),
            Graph::parse_edge_list("0 1\n0 2\n1 2\n2 3\n3 4\n4 5\n3 5\n1 4").unwrap(),
        ];
        for g in &graphs {
            for n1 in 0..=g.node_count() {
                let d = diagram(g, n1);
                assert_eq!(d.cells, mask_diagram(g, n1), "n1={n1}");
                assert_eq!(d.total as u128, binomial(g.node_count(), n1));
                assert_eq!(d.cells.values().sum::<u64>(), d.total);
            }
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_dyads(&Graph::complete(4), 2, DEFAULT_BUDGET).unwrap(), (1, 1, 4, 4));
        assert_eq!(extremal_dyads(&Graph::path(4), 2, DEFAULT_BUDGET).unwrap(), (0, 1, 1, 3));
        let g = Graph::star(5);
        let m = g.edge_count();
        assert_eq!(extremal_dyads(&g, 5, DEFAULT_BUDGET).unwrap(), (m, m, 0, 0));
    }

    #[test]
    fn budget_refusal_reports_subset_count() {
        let g = Graph::cycle(40);
        let err = enumerate_phase_diagram(&g, 20, 1 << 20).unwrap_err();
        match err {
            PhaseError::BudgetExceeded { subsets, budget, .. } => {
                assert_eq!(subsets, binomial(40, 20));
                assert_eq!(budget, 1 << 20);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = Graph::parse_edge_list("0 1\n0 2\n1 2\n2 3\n3 4\n4 5\n3 5\n1 4\n5 6\n6 0").unwrap();
        for n1 in [0, 1, 3, 5, 7] {
            let par = enumerate_phase_diagram(&g, n1, DEFAULT_BUDGET).unwrap();
            let seq = enumerate_phase_diagram_seq(&g, n1, DEFAULT_BUDGET).unwrap();
            assert_eq!(par, seq);
        }
    }

    #[test]
    fn mean_dyads_recovers_expectations() {
        let g = Graph::parse_edge_list("0 1\n0 2\n1 2\n2 3\n3 4\n1 4").unwrap();
        for n1 in 0..=g.node_count() {
            let d = diagram(&g, n1);
            let (mean11, mean10) = d.mean_dyads();
            let (e11, e10) = expected_dyads(g.node_count(), g.edge_count(), n1).unwrap();
            assert_eq!(mean11, e11, "n1={n1}");
            assert_eq!(mean10, e10, "n1={n1}");
        }
    }

    #[test]
    fn diagram_support_within_bounds() {
        let g = Graph::parse_edge_list("0 1\n0 2\n1 2\n2 3\n3 4\n4 5\n3 5\n1 4").unwrap();
        for n1 in 0..=g.node_count() {
            let d = diagram(&g, n1);
            let r = bounds_report(&g, n1);
            let (min11, max11, min10, max10) = d.support_extrema();
            assert!(r.lb_m11 <= min11 && max11 <= r.ub_m11, "n1={n1}");
            assert!(r.lb_m10 <= min10 && max10 <= r.ub_m10, "n1={n1}");
        }
    }

    #[test]
    fn feasible_area_k4() {
        let r = bounds_report(&Graph::complete(4), 2);
        assert_eq!(feasible_area(&r), 2);
        assert_eq!(old_feasible_area(&r), 10);
        let r0 = bounds_report(&Graph::complete(4), 0);
        assert_eq!(feasible_area(&r0), 1);
    }

    #[test]
    fn gain_rows_k4() {
        let rows = gain_curves(&Graph::complete(4));
        let r2 = &rows[2];
        assert_eq!(r2.area_old, 10);
        assert_eq!(r2.area_new, 2);
        assert_eq!(r2.gain_lb_m10, Rational::new(4, 5)); // 0.8
        assert_eq!(r2.gain_total, Rational::new(4, 5));
        let r0 = &rows[0];
        assert_eq!(r0.area_old, 1);
        assert_eq!(r0.gain_total, Rational::from_integer(0));
        assert_eq!(r0.gain_ub_m11, Rational::from_integer(0));
    }

    #[test]
    fn regular_graph_can_leave_ub_m11_gain_at_zero() {
        // C6, n1 = 3: the stub term equals the old clique term, so no gain.
        let rows = gain_curves(&Graph::cycle(6));
        assert_eq!(rows[3].gain_ub_m11, Rational::from_integer(0));
    }

    #[test]
    fn gains_lie_in_unit_interval_and_match_total_identity() {
        let g = generate(&GeneratorSpec {
            family: Family::ErdosRenyi,
            n: 40,
            target: Target::MeanDegree(5.0),
            seed: 9,
            require_connected: true,
        })
        .unwrap();
        for row in gain_curves(&g) {
            for gain in [
                &row.gain_ub_m11,
                &row.gain_ub_m10,
                &row.gain_lb_m11,
                &row.gain_lb_m10,
                &row.gain_total,
            ] {
                assert!(*gain >= Rational::from_integer(0) && *gain <= Rational::from_integer(1));
            }
            assert!(row.area_new <= row.area_old);
            let expected =
                Rational::from_integer(1) - Rational::new(row.area_new as i128, row.area_old as i128);
            assert_eq!(row.gain_total, expected);
        }
    }

    #[test]
    fn ensemble_gain_is_deterministic_and_refuses_dense_ba() {
        let spec = GeneratorSpec {
            family: Family::ErdosRenyi,
            n: 30,
            target: Target::MeanDegree(4.0),
            seed: 5,
            require_connected: true,
        };
        let a = ensemble_gain(&spec, 3).unwrap();
        let b = ensemble_gain(&spec, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 31);

        let dense_ba = GeneratorSpec {
            family: Family::BarabasiAlbert,
            n: 30,
            target: Target::Density(0.9),
            seed: 5,
            require_connected: true,
        };
        assert!(matches!(
            ensemble_gain(&dense_ba, 2),
            Err(PhaseError::Generation { .. })
        ));
        assert!(matches!(ensemble_gain(&spec, 0), Err(PhaseError::NoRuns)));
    }

    #[test]
    fn diagram_csv_format() {
        let d = diagram(&Graph::path(4), 2);
        assert_eq!(d.to_csv(), "m10,m11,count\n1,1,2\n2,0,1\n2,1,1\n3,0,2\n");
    }

    #[test]
    fn svg_has_axes_and_cells() {
        let svg = diagram(&Graph::path(4), 2).to_svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(">m10<") && svg.contains(">m11<"));
        assert_eq!(svg.matches("<rect").count(), 1 + 4); // background + 4 cells
    }
}
