//! Witnessing and certifying partitions of host graphs.
//!
//! A partition of `V(G)` into `w` parts is *witnessing* for a pattern `H`
//! when no ordered split of `V(H)` into `w` (possibly empty) pieces embeds
//! piece-by-piece, induced, into the corresponding parts. If the partition is
//! witnessing then `G` is `H`-free whatever the edges between parts are.

mod cliques;
mod shapes;
mod pervasive;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{iter_mask, Graph, VertexMask};
use crate::tree::TreeError;

pub use cliques::{edge_disjoint_cliques, CliqueSystem};
pub use shapes::{
    certificate_case, certify, count_certifying, find_certifying, is_interesting, sound_certifying,
    structural_certifying, CertificateCase, Interesting, SearchMode, ShapeVerdict,
};
pub use pervasive::{is_dangerous, is_pervasive, Pervasive};
pub use witness::{is_witnessing, safe_member, wpn, Witness};

/// Largest pattern handled by the brute-force witnessing search.
pub const MAX_PATTERN_VERTICES: usize = 10;
/// Largest host handled by the exhaustive certificate search.
pub const MAX_SEARCH_HOST: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("partition has {got} parts, {expected} required")]
    PartCountMismatch { expected: usize, got: usize },
    #[error("tree class {0} is not covered by the certifying shapes")]
    UnsupportedClass(String),
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("host has {0} vertices, the exhaustive search stops at {MAX_SEARCH_HOST}")]
    HostTooLarge(usize),
    #[error("pattern has {0} vertices, at most {MAX_PATTERN_VERTICES} are supported")]
    PatternTooLarge(usize),
    #[error("budget c + s = {got} must equal wpn(h) - 1 = {expected}")]
    BadBudget { expected: usize, got: usize },
    #[error("vertex set is not inside a single part")]
    NotWithinOnePart,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition covers {got} vertices but the host has {expected}")]
    HostMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Ordered partition of `0..host_n` into `w >= 1` disjoint parts. Empty parts
/// are representable; operations that forbid them say so.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    host_n: usize,
    parts: Vec<VertexMask>,
}

impl Partition {
    pub fn new(host_n: usize, parts: Vec<VertexMask>) -> Result<Self, CertifyError> {
        if parts.is_empty() {
            return Err(CertifyError::InvalidPartition("no parts".into()));
        }
        if host_n > crate::graph::MAX_VERTICES {
            return Err(CertifyError::InvalidPartition(format!("{host_n} vertices")));
        }
        let mut seen = 0u64;
        for &p in &parts {
            if p & seen != 0 {
                return Err(CertifyError::InvalidPartition("parts overlap".into()));
            }
            seen |= p;
        }
        if seen != crate::graph::mask_below(host_n) {
            return Err(CertifyError::InvalidPartition("parts do not cover the vertex set".into()));
        }
        Ok(Partition { host_n, parts })
    }

    /// Part index per vertex; `w` fixes the part count so trailing parts may
    /// be empty.
    pub fn from_labels(labels: &[usize], w: usize) -> Result<Self, CertifyError> {
        let mut parts = vec![0u64; w];
        for (v, &l) in labels.iter().enumerate() {
            if l >= w {
                return Err(CertifyError::InvalidPartition(format!("label {l} with {w} parts")));
            }
            parts[l] |= 1 << v;
        }
        Partition::new(labels.len(), parts)
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn w(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexMask] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> VertexMask {
        self.parts[i]
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|&p| p >> v & 1 == 1)
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..self.host_n).map(|v| self.part_of(v).expect("cover")).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.count_ones() as usize).collect()
    }

    pub fn has_empty_part(&self) -> bool {
        self.parts.contains(&0)
    }

    /// Moves part `i` to the front, keeping the others in order.
    pub fn with_first(&self, i: usize) -> Partition {
        let mut parts = self.parts.clone();
        let p = parts.remove(i);
        parts.insert(0, p);
        Partition { host_n: self.host_n, parts }
    }

    /// Applies `perm` (old vertex to new vertex) to every part.
    pub fn relabel(&self, perm: &[usize]) -> Partition {
        let parts = self.parts.iter().map(|&p| iter_mask(p).fold(0u64, |m, v| m | 1 << perm[v])).collect();
        Partition { host_n: self.host_n, parts }
    }

    fn check_host(&self, g: &Graph) -> Result<(), CertifyError> {
        if g.n() != self.host_n {
            return Err(CertifyError::HostMismatch { expected: g.n(), got: self.host_n });
        }
        Ok(())
    }
}

/// Comma-separated part index per vertex, e.g. `0,1,0,0,1`. Parsing infers
/// `w` from the largest label.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        f.write_str(&labels.join(","))
    }
}

impl FromStr for Partition {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, CertifyError> {
        let labels = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CertifyError::InvalidPartition(e.to_string()))?;
        let w = labels.iter().max().map_or(1, |m| m + 1);
        Partition::from_labels(&labels, w)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A partition together with the induced subgraph on each part.
#[derive(Debug, Clone)]
pub struct Pattern {
    pub partition: Partition,
    /// `graphs[i]` is the host induced on `parts[i]`, relabeled in increasing order.
    pub graphs: Vec<Graph>,
    /// `labels[i][k]` is the host vertex behind vertex `k` of `graphs[i]`.
    pub labels: Vec<Vec<usize>>,
}

impl Pattern {
    pub fn new(g: &Graph, partition: Partition) -> Result<Self, CertifyError> {
        partition.check_host(g)?;
        let (graphs, labels) = partition.parts.iter().map(|&p| g.induced(p)).unzip();
        Ok(Pattern { partition, graphs, labels })
    }

    /// The induced graph on a host vertex set `d` inside part `k`.
    pub fn local(&self, k: usize, d: VertexMask) -> Graph {
        let local = self.labels[k]
            .iter()
            .enumerate()
            .filter(|&(_, &v)| d >> v & 1 == 1)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        self.graphs[k].induced(local).0
    }
}

/// Everything known about one `(G, partition, T)` triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyVerdict {
    pub witnessing: bool,
    pub structural: bool,
    pub interesting: bool,
    /// A split of `V(T)` embedding part-by-part, present iff not witnessing.
    pub failing_assignment: Option<Partition>,
    pub failing_condition: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_strings() {
        let p: Partition = "0,1,0,0,1".parse().unwrap();
        assert_eq!(p.parts(), &[0b01101, 0b10010]);
        assert_eq!(p.to_string(), "0,1,0,0,1");
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"0,1,0,0,1\"");
        assert!(Partition::new(3, vec![0b011, 0b110]).is_err());
        assert!(Partition::new(3, vec![0b011]).is_err());
        assert!(Partition::from_labels(&[0, 0], 2).unwrap().has_empty_part());
        assert!("0,x".parse::<Partition>().is_err());
    }

    #[test]
    fn reindexing() {
        let p = Partition::new(4, vec![0b0001, 0b0110, 0b1000]).unwrap();
        assert_eq!(p.with_first(2).parts(), &[0b1000, 0b0001, 0b0110]);
        assert_eq!(p.relabel(&[3, 2, 1, 0]).parts(), &[0b1000, 0b0110, 0b0001]);
    }
}
