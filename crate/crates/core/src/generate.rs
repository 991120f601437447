//! Seeded generators for the benchmark ensembles: Erdős–Rényi G(N,M),
//! Barabási–Albert preferential attachment, and random regular graphs via
//! stub pairing with edge-swap repair.
//!
//! All generators are deterministic for a fixed seed. Connectivity is
//! enforced by regeneration with an incremented sub-seed, never by repair,
//! so the degree distribution is not biased.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

const MAX_CONNECTIVITY_ATTEMPTS: u64 = 1000;
const MAX_REPAIR_ROUNDS: usize = 200;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    Config(String),
    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),
    #[error("gave up after {attempts} attempts to generate a connected instance (seed {seed})")]
    RetryBudgetExhausted { attempts: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ErdosRenyi,
    BarabasiAlbert,
    Regular,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self, GenError> {
        match s.to_ascii_lowercase().as_str() {
            "er" | "erdos-renyi" | "gnm" => Ok(Family::ErdosRenyi),
            "ba" | "barabasi-albert" | "scale-free" => Ok(Family::BarabasiAlbert),
            "regular" => Ok(Family::Regular),
            other => Err(GenError::Config(format!("unknown family '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi => "er",
            Family::BarabasiAlbert => "ba",
            Family::Regular => "regular",
        }
    }
}

/// Size target: a mean degree, an edge density, or an explicit edge count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    MeanDegree(f64),
    Density(f64),
    Edges(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub target: Target,
    pub seed: u64,
    pub require_connected: bool,
}

impl GeneratorSpec {
    /// Edge count the spec resolves to: `round(N*d/2)` for mean-degree
    /// targets, `round(density * N(N-1)/2)` for density targets. For BA and
    /// regular families the count implied by the resolved per-node parameter.
    pub fn resolved_edge_count(&self) -> Result<u64, GenError> {
        match self.family {
            Family::ErdosRenyi => self.er_edge_count(),
            Family::BarabasiAlbert => {
                let m = self.ba_links_per_node()?;
                Ok((self.n as u64 - m) * m)
            }
            Family::Regular => {
                let d = self.regular_degree()?;
                Ok(self.n as u64 * d / 2)
            }
        }
    }

    fn er_edge_count(&self) -> Result<u64, GenError> {
        let n = self.n as f64;
        let m = match self.target {
            Target::MeanDegree(d) => {
                if d < 0.0 {
                    return Err(GenError::Config("mean degree must be nonnegative".into()));
                }
                (n * d / 2.0).round() as u64
            }
            Target::Density(delta) => {
                if !(0.0..=1.0).contains(&delta) {
                    return Err(GenError::Config("density must lie in [0, 1]".into()));
                }
                (delta * n * (n - 1.0) / 2.0).round() as u64
            }
            Target::Edges(m) => m,
        };
        let max = max_edges(self.n);
        if m > max {
            return Err(GenError::Unsatisfiable(format!(
                "{m} edges exceed the {max} possible on {} nodes",
                self.n
            )));
        }
        if self.require_connected && m + 1 < self.n as u64 {
            return Err(GenError::Unsatisfiable(format!(
                "a connected graph on {} nodes needs at least {} edges, got {m}",
                self.n,
                self.n - 1
            )));
        }
        Ok(m)
    }

    /// Links added per arriving node in the BA model.
    fn ba_links_per_node(&self) -> Result<u64, GenError> {
        let m = match self.target {
            Target::MeanDegree(d) => (d / 2.0).round() as i64,
            Target::Edges(total) => (total as f64 / self.n as f64).round() as i64,
            Target::Density(_) => {
                return Err(GenError::Config(
                    "scale-free graphs do not support density targets (dense scale-free \
                     networks are unrealizable)"
                        .into(),
                ))
            }
        };
        if m < 1 {
            return Err(GenError::Unsatisfiable(
                "preferential attachment needs at least one link per node".into(),
            ));
        }
        let m = m as u64;
        if m >= self.n as u64 {
            return Err(GenError::Unsatisfiable(format!(
                "links per node ({m}) must be smaller than the node count ({})",
                self.n
            )));
        }
        Ok(m)
    }

    fn regular_degree(&self) -> Result<u64, GenError> {
        let d = match self.target {
            Target::MeanDegree(d) => {
                if d < 0.0 {
                    return Err(GenError::Config("mean degree must be nonnegative".into()));
                }
                d.round() as u64
            }
            Target::Density(delta) => {
                if !(0.0..=1.0).contains(&delta) {
                    return Err(GenError::Config("density must lie in [0, 1]".into()));
                }
                let t = delta * (self.n as f64 - 1.0);
                if self.n.is_multiple_of(2) {
                    t.round() as u64
                } else {
                    // N odd forces an even degree; take the nearest one.
                    2 * (t / 2.0).round() as u64
                }
            }
            Target::Edges(m) => ((2 * m) as f64 / self.n as f64).round() as u64,
        };
        if d >= self.n as u64 {
            return Err(GenError::Unsatisfiable(format!(
                "degree {d} impossible on {} nodes",
                self.n
            )));
        }
        if !(self.n as u64 * d).is_multiple_of(2) {
            return Err(GenError::Unsatisfiable(format!(
                "N*d must be even, got N={} d={d}",
                self.n
            )));
        }
        if self.require_connected && self.n > 2 && d < 2 {
            return Err(GenError::Unsatisfiable(format!(
                "a connected {d}-regular graph on {} nodes does not exist",
                self.n
            )));
        }
        Ok(d)
    }

    /// Parses a `key=value` config file. Keys: `family`, `n`, and exactly one
    /// of `m` / `mean_degree` / `density`; optional `seed` (default 0) and
    /// `require_connected` (default true). `#` comments and blank lines are
    /// ignored.
    pub fn parse_kv(text: &str) -> Result<Self, GenError> {
        let mut family = None;
        let mut n = None;
        let mut target = None;
        let mut seed = 0u64;
        let mut require_connected = true;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| GenError::Config(format!("line {line}: expected key=value")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| GenError::Config(format!("line {line}: bad {what} '{value}'"));
            match key {
                "family" => family = Some(Family::parse(value)?),
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad("node count"))?),
                "m" => {
                    set_target(&mut target, Target::Edges(value.parse().map_err(|_| bad("edge count"))?), line)?
                }
                "mean_degree" => {
                    set_target(&mut target, Target::MeanDegree(value.parse().map_err(|_| bad("mean degree"))?), line)?
                }
                "density" => {
                    set_target(&mut target, Target::Density(value.parse().map_err(|_| bad("density"))?), line)?
                }
                "seed" => seed = value.parse().map_err(|_| bad("seed"))?,
                "require_connected" => {
                    require_connected = value.parse().map_err(|_| bad("flag"))?
                }
                other => return Err(GenError::Config(format!("line {line}: unknown key '{other}'"))),
            }
        }

        let family = family.ok_or_else(|| GenError::Config("missing key 'family'".into()))?;
        let n = n.ok_or_else(|| GenError::Config("missing key 'n'".into()))?;
        let target = target
            .ok_or_else(|| GenError::Config("missing one of 'm', 'mean_degree', 'density'".into()))?;
        if n == 0 {
            return Err(GenError::Config("node count must be positive".into()));
        }
        Ok(GeneratorSpec { family, n, target, seed, require_connected })
    }
}

fn set_target(slot: &mut Option<Target>, t: Target, line: usize) -> Result<(), GenError> {
    if slot.is_some() {
        return Err(GenError::Config(format!(
            "line {line}: only one of 'm', 'mean_degree', 'density' may be given"
        )));
    }
    *slot = Some(t);
    Ok(())
}

fn max_edges(n: usize) -> u64 {
    let n = n as u64;
    n * (n - 1) / 2
}

/// Sub-seeded RNG: the seed and the regeneration attempt occupy disjoint
/// bytes, so attempt streams never collide with neighbouring seeds.
fn rng_for(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&attempt.to_le_bytes());
    bytes[16] = 0x9d; // domain tag
    ChaCha8Rng::from_seed(bytes)
}

/// Generates a graph from the spec, deterministic for a fixed seed. When
/// `require_connected` is set, disconnected draws are discarded and the
/// generator reruns with an incremented sub-seed, up to a fixed budget.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenError> {
    if spec.n == 0 {
        return Err(GenError::Config("node count must be positive".into()));
    }
    // Surface unsatisfiable parameters before drawing anything.
    spec.resolved_edge_count()?;

    for attempt in 0..MAX_CONNECTIVITY_ATTEMPTS {
        let mut rng = rng_for(spec.seed, attempt);
        let edges = match spec.family {
            Family::ErdosRenyi => erdos_renyi_edges(spec.n, spec.er_edge_count()?, &mut rng),
            Family::BarabasiAlbert => {
                barabasi_albert_edges(spec.n, spec.ba_links_per_node()?, &mut rng)
            }
            Family::Regular => {
                match regular_edges(spec.n, spec.regular_degree()?, &mut rng) {
                    Some(edges) => edges,
                    None => continue, // pairing unrepairable; reshuffle
                }
            }
        };
        let g = Graph::from_edges(spec.n, edges).expect("generator produced a non-simple graph");
        if !spec.require_connected || g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::RetryBudgetExhausted { attempts: MAX_CONNECTIVITY_ATTEMPTS, seed: spec.seed })
}

/// G(N, M): M distinct edges drawn uniformly. Dense targets sample the
/// complement instead so rejection stays cheap.
fn erdos_renyi_edges(n: usize, m: u64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let max = max_edges(n);
    if m <= max / 2 {
        sample_distinct_pairs(n, m, rng).into_iter().collect()
    } else {
        let excluded = sample_distinct_pairs(n, max - m, rng);
        let mut edges = Vec::with_capacity(m as usize);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if !excluded.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        edges
    }
}

fn sample_distinct_pairs(n: usize, count: u64, rng: &mut ChaCha8Rng) -> HashSet<(u32, u32)> {
    let mut pairs = HashSet::with_capacity(count as usize);
    while (pairs.len() as u64) < count {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u != v {
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    pairs
}

/// Growth with preferential attachment: each arriving node links to `m`
/// distinct existing nodes drawn proportionally to degree (uniformly from
/// the endpoint multiset). The first arrival links to all `m` seed nodes,
/// so the result is connected by construction.
fn barabasi_albert_edges(n: usize, m: u64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let m = m as usize;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity((n - m) * m);
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * (n - m) * m);
    let mut targets: Vec<u32> = (0..m as u32).collect();

    for new in m as u32..n as u32 {
        for &t in &targets {
            edges.push((t.min(new), t.max(new)));
        }
        endpoints.extend(&targets);
        endpoints.extend(std::iter::repeat_n(new, m));
        if (new as usize) + 1 < n {
            targets.clear();
            while targets.len() < m {
                let pick = endpoints[rng.gen_range(0..endpoints.len())];
                if !targets.contains(&pick) {
                    targets.push(pick);
                }
            }
        }
    }
    edges
}

/// Random d-regular graph: shuffle the stub multiset, pair consecutive
/// stubs, then repair loops and duplicate edges with random pair swaps.
/// Dense degrees build the complement instead. Returns `None` when the
/// repair loop stalls so the caller can reshuffle.
fn regular_edges(n: usize, d: u64, rng: &mut ChaCha8Rng) -> Option<Vec<(u32, u32)>> {
    if d == 0 {
        return Some(Vec::new());
    }
    if d == n as u64 - 1 {
        return Some(Graph::complete(n).edges().to_vec());
    }
    if d > (n as u64 - 1) / 2 {
        let inner = stub_pairing(n, (n as u64 - 1 - d) as usize, rng)?;
        let inner: HashSet<(u32, u32)> = inner.into_iter().collect();
        let mut edges = Vec::with_capacity((n as u64 * d / 2) as usize);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if !inner.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        return Some(edges);
    }
    stub_pairing(n, d as usize, rng)
}

fn stub_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(u32, u32)>> {
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut pairs: Vec<(u32, u32)> = stubs
        .chunks_exact(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect();

    let mut multiset: HashMap<(u32, u32), u32> = HashMap::with_capacity(pairs.len());
    for &p in &pairs {
        *multiset.entry(p).or_insert(0) += 1;
    }

    for _ in 0..MAX_REPAIR_ROUNDS {
        let defects: Vec<usize> = (0..pairs.len())
            .filter(|&i| pairs[i].0 == pairs[i].1 || multiset[&pairs[i]] > 1)
            .collect();
        if defects.is_empty() {
            return Some(pairs);
        }
        for &i in &defects {
            // The defect may already have been fixed by an earlier swap.
            if pairs[i].0 != pairs[i].1 && multiset[&pairs[i]] == 1 {
                continue;
            }
            for _ in 0..32 {
                let j = rng.gen_range(0..pairs.len());
                if j == i {
                    continue;
                }
                let (a, b) = pairs[i];
                let (c, d2) = pairs[j];
                let (p, q) = if rng.gen::<bool>() {
                    (canon(a, c), canon(b, d2))
                } else {
                    (canon(a, d2), canon(b, c))
                };
                let valid = p.0 != p.1
                    && q.0 != q.1
                    && p != q
                    && multiset.get(&p).copied().unwrap_or(0) == 0
                    && multiset.get(&q).copied().unwrap_or(0) == 0;
                if valid {
                    for old in [pairs[i], pairs[j]] {
                        let c = multiset.get_mut(&old).unwrap();
                        *c -= 1;
                        if *c == 0 {
                            multiset.remove(&old);
                        }
                    }
                    pairs[i] = p;
                    pairs[j] = q;
                    *multiset.entry(p).or_insert(0) += 1;
                    *multiset.entry(q).or_insert(0) += 1;
                    break;
                }
            }
        }
    }
    None
}

fn canon(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, n: usize, target: Target, seed: u64) -> GeneratorSpec {
        GeneratorSpec { family, n, target, seed, require_connected: true }
    }

    #[test]
    fn er_hits_mean_degree_exactly() {
        let g = generate(&spec(Family::ErdosRenyi, 1000, Target::MeanDegree(6.0), 1)).unwrap();
        assert_eq!(g.edge_count(), 3000);
        let mean = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
        assert_eq!(mean, 6.0);
        assert!(g.is_connected());
    }

    #[test]
    fn er_dense_density_target() {
        let g = generate(&spec(Family::ErdosRenyi, 50, Target::Density(0.9), 3)).unwrap();
        assert_eq!(g.edge_count(), (0.9 * 50.0 * 49.0 / 2.0_f64).round() as u64);
    }

    #[test]
    fn regular_density_target_gives_uniform_degree() {
        let g = generate(&spec(Family::Regular, 1000, Target::Density(0.9), 5)).unwrap();
        assert!(g.degree_sequence().iter().all(|&d| d == 899));
        assert!(g.is_connected());
    }

    #[test]
    fn regular_odd_node_count_takes_nearest_even_degree() {
        let g = generate(&spec(Family::Regular, 9, Target::Density(0.5), 2)).unwrap();
        assert!(g.degree_sequence().iter().all(|&d| d == 4));
    }

    #[test]
    fn ba_is_deterministic_and_connected() {
        let s = spec(Family::BarabasiAlbert, 5, Target::MeanDegree(2.0), 7);
        let g1 = generate(&s).unwrap();
        let g2 = generate(&s).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        assert!(g1.is_connected());
        assert_eq!(g1.edge_count(), 4); // (5-1)*1
    }

    #[test]
    fn ba_sparse_larger_instance() {
        let g = generate(&spec(Family::BarabasiAlbert, 200, Target::MeanDegree(6.0), 11)).unwrap();
        assert_eq!(g.edge_count(), (200 - 3) * 3);
        assert!(g.is_connected());
    }

    #[test]
    fn generators_are_seed_deterministic() {
        for family in [Family::ErdosRenyi, Family::Regular] {
            let s = spec(family, 60, Target::MeanDegree(4.0), 42);
            let a = generate(&s).unwrap().to_edge_list_string();
            let b = generate(&s).unwrap().to_edge_list_string();
            assert_eq!(a, b);
        }
        let mut different = spec(Family::ErdosRenyi, 60, Target::MeanDegree(4.0), 43);
        different.require_connected = true;
        let c = generate(&different).unwrap().to_edge_list_string();
        let base = generate(&spec(Family::ErdosRenyi, 60, Target::MeanDegree(4.0), 42))
            .unwrap()
            .to_edge_list_string();
        assert_ne!(c, base);
    }

    #[test]
    fn unsatisfiable_specs_are_config_errors() {
        assert!(matches!(
            generate(&spec(Family::ErdosRenyi, 4, Target::Edges(7), 0)),
            Err(GenError::Unsatisfiable(_))
        ));
        assert!(matches!(
            generate(&spec(Family::ErdosRenyi, 10, Target::Edges(3), 0)),
            Err(GenError::Unsatisfiable(_)) // connected needs >= 9 edges
        ));
        assert!(matches!(
            generate(&spec(Family::Regular, 5, Target::MeanDegree(3.0), 0)),
            Err(GenError::Unsatisfiable(_)) // N*d odd
        ));
        assert!(matches!(
            generate(&spec(Family::BarabasiAlbert, 10, Target::Density(0.9), 0)),
            Err(GenError::Config(_))
        ));
        assert!(matches!(
            generate(&spec(Family::BarabasiAlbert, 3, Target::MeanDegree(8.0), 0)),
            Err(GenError::Unsatisfiable(_)) // links per node >= n
        ));
    }

    #[test]
    fn regular_small_complete_and_complement_paths() {
        let g = generate(&spec(Family::Regular, 6, Target::MeanDegree(5.0), 1)).unwrap();
        assert_eq!(g.edge_count(), 15); // K6
        let g = generate(&spec(Family::Regular, 8, Target::MeanDegree(5.0), 1)).unwrap();
        assert!(g.degree_sequence().iter().all(|&d| d == 5));
    }

    #[test]
    fn kv_config_roundtrip() {
        let s = GeneratorSpec::parse_kv(
            "# benchmark instance\nfamily = er\nn = 25\nm = 32\nseed = 3\n",
        )
        .unwrap();
        assert_eq!(s.family, Family::ErdosRenyi);
        assert_eq!(s.n, 25);
        assert_eq!(s.target, Target::Edges(32));
        assert_eq!(s.seed, 3);
        assert!(s.require_connected);

        assert!(GeneratorSpec::parse_kv("family=er\nn=10\n").is_err());
        assert!(GeneratorSpec::parse_kv("family=er\nn=10\nm=5\ndensity=0.5\n").is_err());
        assert!(GeneratorSpec::parse_kv("family=nope\nn=10\nm=5\n").is_err());
    }
}
