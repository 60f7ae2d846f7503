//! Text formats: graph6, edge lists, and short names for common trees.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::tree::{Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6 header byte {0:?} is not a vertex count in 0..=62")]
    BadHeader(char),
    #[error("graph6 body has {got} bytes, {expected} expected")]
    BadLength { expected: usize, got: usize },
    #[error("graph6 byte {0:?} is outside the printable range 63..=126")]
    BadByte(char),
    #[error("graph6 padding bits are not zero")]
    NonCanonicalPadding,
    #[error("cannot parse edge list: {0}")]
    BadEdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Decodes a graph6 string with a single-byte header.
pub fn parse_graph6(s: &str) -> Result<Graph, FormatError> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes.split_first().ok_or(FormatError::BadLength { expected: 1, got: 0 })?;
    if !(63..=63 + MAX_VERTICES as u8).contains(&head) {
        return Err(FormatError::BadHeader(head as char));
    }
    let n = (head - 63) as usize;
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::BadLength { expected, got: body.len() });
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::BadByte(b as char));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (pairs..expected * 6).any(bit) {
        return Err(FormatError::NonCanonicalPadding);
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let pairs = n * n.saturating_sub(1) / 2;
    let mut groups = vec![0u8; pairs.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                groups[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    std::iter::once(63 + n as u8).chain(groups.into_iter().map(|b| b + 63)).map(char::from).collect()
}

/// Parses `N: u-v, u-v, ...` (vertex count, then edges separated by commas or
/// whitespace). `N:` alone is the edgeless graph.
pub fn parse_edge_list(s: &str) -> Result<Graph, FormatError> {
    let bad = |m: &str| FormatError::BadEdgeList(m.to_string());
    let (head, rest) = s.split_once(':').ok_or_else(|| bad("missing `N:` prefix"))?;
    let n: usize = head.trim().parse().map_err(|_| bad("vertex count is not a number"))?;
    let mut edges = Vec::new();
    for tok in rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (u, v) = tok.split_once('-').ok_or_else(|| bad(&format!("edge {tok:?} is not `u-v`")))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad(&format!("bad vertex in {tok:?}")));
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}: {}", g.n(), edges.join(","))
}

/// An edge list when the text contains `:`, graph6 otherwise.
pub fn parse_graph(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    if s.contains(':') {
        parse_edge_list(s)
    } else {
        parse_graph6(s)
    }
}

/// `P<n>` (path), `K1,<k>` (star), `M6`, `spike(<tree>)`, or any graph
/// accepted by [`parse_graph`] that is a tree.
pub fn parse_tree(s: &str) -> Result<Tree, FormatError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("spike(").and_then(|r| r.strip_suffix(')')) {
        let base = parse_tree(inner)?;
        if 2 * base.n() > crate::tree::MAX_TREE_VERTICES {
            return Err(TreeError::TooLarge(2 * base.n()).into());
        }
        return Ok(Tree::spiking(&base));
    }
    if s.eq_ignore_ascii_case("m6") {
        return Ok(Tree::m6());
    }
    let bad = || FormatError::BadEdgeList(format!("unknown tree name {s:?}"));
    if let Some(k) = s.strip_prefix("K1,") {
        let k: usize = k.parse().map_err(|_| bad())?;
        if k + 1 > crate::tree::MAX_TREE_VERTICES {
            return Err(TreeError::TooLarge(k + 1).into());
        }
        return Ok(Tree::star(k));
    }
    if let Some(n) = s.strip_prefix('P').filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit())) {
        let n: usize = n.parse().map_err(|_| bad())?;
        if n == 0 || n > crate::tree::MAX_TREE_VERTICES {
            return Err(TreeError::TooLarge(n).into());
        }
        return Ok(Tree::path(n));
    }
    Ok(Tree::from_graph(parse_graph(s)?)?)
}
