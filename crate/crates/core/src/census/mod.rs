//! Exhaustive censuses of labeled graphs and sampled checks of the shape
//! characterizations on large hosts.
//!
//! The census counts graphs with at least one partition passing
//! [`sound_certifying`](crate::certify::sound_certifying). The size condition
//! of interesting partitions cannot be met on enumerable hosts, and bare
//! witnessing is met by partitions with an empty part, so neither is usable as
//! the census metric.

mod sampled;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::certify::{count_certifying, is_witnessing, CertifyError};
use crate::graph::{induced_embedding, Graph};
use crate::tree::{canonical_code, Tree};
use crate::BigCount;

pub use sampled::{planted_instance, sampled_equivalence, Discrepancy, PlantedInstance, SampledReport};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest host for a default census; 8 needs [`CensusOptions::long_run`].
pub const CENSUS_MAX_N: usize = 7;
/// Graph indices divisible by this are re-checked with the witnessing search.
pub const SPOT_CHECK_STRIDE: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("host size {0} is beyond the census limit")]
    HostTooLarge(usize),
    #[error("index range {start}..{end} is outside 0..{total}")]
    BadRange { start: u64, end: u64, total: u64 },
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

/// Labeled graphs on `n` vertices ordered by their pair-bit mask
/// (column-order upper triangle, bit `k` for pair `k`). Index `i` is the graph
/// with mask `i`, so a run can restart anywhere.
#[derive(Debug, Clone)]
pub struct GraphEnumeration {
    n: usize,
    next: u64,
    end: u64,
}

impl GraphEnumeration {
    pub fn total(n: usize) -> u64 {
        1u64 << (n * n.saturating_sub(1) / 2)
    }

    pub fn starting_at(mut self, index: u64) -> Self {
        self.next = index.min(self.end);
        self
    }

    pub fn until(mut self, end: u64) -> Self {
        self.end = end.min(Self::total(self.n));
        self
    }

    /// Index of the next graph produced.
    pub fn position(&self) -> u64 {
        self.next
    }
}

impl Iterator for GraphEnumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = Graph::from_pair_bits(self.n, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

pub fn enumerate_graphs(n: usize) -> Result<GraphEnumeration, CensusError> {
    if n > 8 {
        return Err(CensusError::HostTooLarge(n));
    }
    Ok(GraphEnumeration { n, next: 0, end: GraphEnumeration::total(n) })
}

/// Non-negative rational, kept reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    pub num: BigCount,
    pub den: BigCount,
}

impl Ratio {
    pub fn new(num: BigCount, den: BigCount) -> Ratio {
        if den == BigUint::from(0u8) {
            return Ratio { num: BigUint::from(0u8), den: BigUint::from(1u8) };
        }
        let g = num.gcd(&den);
        if g == BigUint::from(0u8) {
            return Ratio { num, den };
        }
        Ratio { num: &num / &g, den: &den / &g }
    }

    pub fn to_f64(&self) -> f64 {
        crate::counting::log2_ratio(&self.num, &self.den).exp2()
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn big_str<S: Serializer>(x: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn big_map<S: Serializer>(m: &BTreeMap<String, BigCount>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k, v.to_string())))
}

/// Additive counts for one index range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub graphs: u64,
    pub t_free: u64,
    pub certified: u64,
    /// certified graphs containing the tree; nonzero means a soundness bug
    pub violations: u64,
    pub certificates: u64,
    pub histogram: BTreeMap<String, u64>,
    pub spot_checks: u64,
    pub spot_failures: u64,
}

impl Tally {
    pub fn merge(mut self, other: &Tally) -> Tally {
        self.graphs += other.graphs;
        self.t_free += other.t_free;
        self.certified += other.certified;
        self.violations += other.violations;
        self.certificates += other.certificates;
        self.spot_checks += other.spot_checks;
        self.spot_failures += other.spot_failures;
        for (k, v) in &other.histogram {
            *self.histogram.entry(k.clone()).or_default() += v;
        }
        self
    }
}

/// Scans graphs `start..end` on `n` vertices.
pub fn census_range(t: &Tree, n: usize, start: u64, end: u64) -> Result<Tally, CensusError> {
    let total = GraphEnumeration::total(n);
    if start > end || end > total {
        return Err(CensusError::BadRange { start, end, total });
    }
    let mut tally = Tally::default();
    let graphs = enumerate_graphs(n)?.starting_at(start).until(end);
    for (index, g) in (start..).zip(graphs) {
        tally.graphs += 1;
        let free = induced_embedding(t.graph(), &g).is_none();
        tally.t_free += u64::from(free);
        let (first, count) = count_certifying(&g, t)?;
        let Some((p, case)) = first else { continue };
        tally.certified += 1;
        tally.certificates += count;
        *tally.histogram.entry(case.label()).or_default() += 1;
        if !free {
            tally.violations += 1;
        }
        if index % SPOT_CHECK_STRIDE == 0 {
            tally.spot_checks += 1;
            if !is_witnessing(&g, &p, t.graph())?.witnessing {
                tally.spot_failures += 1;
            }
        }
    }
    Ok(tally)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub shards: usize,
    /// permits `n = 8`
    pub long_run: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { shards: 1, long_run: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub tree_id: String,
    pub n: usize,
    /// always `sound_certifying`
    pub metric: &'static str,
    #[serde(serialize_with = "big_str")]
    pub total_graphs: BigCount,
    #[serde(serialize_with = "big_str")]
    pub t_free: BigCount,
    #[serde(serialize_with = "big_str")]
    pub sound_certified: BigCount,
    pub soundness_violations: u64,
    /// first certificate found per graph, keyed by the clause it satisfies
    #[serde(serialize_with = "big_map")]
    pub shape_histogram: BTreeMap<String, BigCount>,
    /// unordered certifying partitions per certified graph
    pub avg_certificates_per_graph: Ratio,
    pub spot_checks: u64,
    pub spot_check_failures: u64,
    pub runtime_ms: u64,
    pub shard_count: usize,
}

impl CensusReport {
    /// Everything except timing and sharding.
    pub fn same_counts(&self, other: &CensusReport) -> bool {
        let strip = |r: &CensusReport| CensusReport { runtime_ms: 0, shard_count: 0, ..r.clone() };
        strip(self) == strip(other)
    }

    pub fn proportion(&self) -> Ratio {
        Ratio::new(self.sound_certified.clone(), self.t_free.clone())
    }

    /// Every certified graph is `t`-free and every spot check re-verified.
    pub fn is_sound(&self) -> bool {
        self.soundness_violations == 0 && self.spot_check_failures == 0
    }

    fn from_tally(t: &Tree, n: usize, tally: Tally, runtime_ms: u64, shard_count: usize) -> CensusReport {
        CensusReport {
            schema_version: SCHEMA_VERSION,
            tree_id: canonical_code(t),
            n,
            metric: "sound_certifying",
            total_graphs: tally.graphs.into(),
            t_free: tally.t_free.into(),
            sound_certified: tally.certified.into(),
            soundness_violations: tally.violations,
            shape_histogram: tally.histogram.into_iter().map(|(k, v)| (k, v.into())).collect(),
            avg_certificates_per_graph: Ratio::new(tally.certificates.into(), tally.certified.into()),
            spot_checks: tally.spot_checks,
            spot_check_failures: tally.spot_failures,
            runtime_ms,
            shard_count,
        }
    }
}

/// Shard boundaries: `shards` contiguous index ranges of near-equal length.
pub fn shard_ranges(total: u64, shards: usize) -> Vec<(u64, u64)> {
    let k = shards.max(1) as u64;
    (0..k).map(|i| (total * i / k, total * (i + 1) / k)).collect()
}

/// Exhaustive census of all labeled graphs on `n` vertices. Shards run in
/// parallel and merge in shard order, so the counts do not depend on the
/// shard count.
pub fn run_census(t: &Tree, n: usize, opts: CensusOptions) -> Result<CensusReport, CensusError> {
    let limit = if opts.long_run { 8 } else { CENSUS_MAX_N };
    if n > limit {
        return Err(CensusError::HostTooLarge(n));
    }
    let start = Instant::now();
    let ranges = shard_ranges(GraphEnumeration::total(n), opts.shards);
    let tallies: Vec<Tally> = ranges
        .par_iter()
        .map(|&(a, b)| census_range(t, n, a, b))
        .collect::<Result<_, _>>()?;
    let tally = tallies.iter().fold(Tally::default(), |acc, x| acc.merge(x));
    let ms = start.elapsed().as_millis() as u64;
    log::info!("census n = {n}: {} graphs in {ms} ms", tally.graphs);
    Ok(CensusReport::from_tally(t, n, tally, ms, ranges.len()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub n: usize,
    #[serde(serialize_with = "big_str")]
    pub t_free: BigCount,
    #[serde(serialize_with = "big_str")]
    pub sound_certified: BigCount,
    pub proportion: Ratio,
    pub proportion_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub schema_version: u32,
    pub tree_id: String,
    pub rows: Vec<TrendRow>,
    /// `Some` when the range spans at least two steps: whether the proportion
    /// at the top of the range strictly exceeds the one at the bottom
    pub increase_holds: Option<bool>,
    pub rule: &'static str,
}

impl TrendReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,t_free,sound_certified,proportion\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{:.6}\n", r.n, r.t_free, r.sound_certified, r.proportion_f64));
        }
        out
    }
}

/// Certified proportions among `t`-free graphs for each `n` in the range.
pub fn trend(t: &Tree, ns: std::ops::RangeInclusive<usize>, opts: CensusOptions) -> Result<TrendReport, CensusError> {
    let mut rows = Vec::new();
    for n in ns.clone() {
        let r = run_census(t, n, opts)?;
        let proportion = r.proportion();
        rows.push(TrendRow {
            n,
            t_free: r.t_free,
            sound_certified: r.sound_certified,
            proportion_f64: proportion.to_f64(),
            proportion,
        });
    }
    let increase_holds = (rows.len() >= 3).then(|| rows[rows.len() - 1].proportion > rows[0].proportion);
    Ok(TrendReport {
        schema_version: SCHEMA_VERSION,
        tree_id: canonical_code(t),
        rows,
        increase_holds,
        rule: "strict increase from the first to the last n when they differ by at least 2",
    })
}
