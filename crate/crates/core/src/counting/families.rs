//! Exact family counts by summing over the partition into complement
//! components, and the balanced-partition lower bound.

use std::fmt::Write as _;

use num_bigint::BigUint;

use super::{add, balanced_sizes, bell, bell_row, lift, m_pi_sizes, matchings_count, mul, Count, CountError};
use crate::graph::{family_member, Family, Graph};
use crate::tree::{classify, Tree, TreeClass};
use crate::BigCount;

/// Largest `l` accepted by [`count_family`].
pub const FAMILY_MAX: usize = 60;

/// Pascal row `C(n, 0..=n)`.
fn binomial_row<C: Count>(n: usize) -> Result<Vec<C>, CountError> {
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(C::one());
        for w in row.windows(2) {
            next.push(add(&w[0], &w[1])?);
        }
        next.push(C::one());
        row = next;
    }
    Ok(row)
}

/// Stirling numbers of the second kind `S(n, 0..=n)`.
fn stirling_row<C: Count>(n: usize) -> Result<Vec<C>, CountError> {
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = vec![C::zero(); row.len() + 1];
        for (k, s) in row.iter().enumerate() {
            // S(m+1, k) += k S(m, k); S(m+1, k+1) += S(m, k)
            if k > 0 {
                next[k] = add(&next[k], &mul(&lift::<C>(k)?, s)?)?;
            }
            next[k + 1] = add(&next[k + 1], s)?;
        }
        row = next;
    }
    Ok(row)
}

fn sum<C: Count>(xs: &[C]) -> Result<C, CountError> {
    xs.iter().try_fold(C::zero(), |acc, x| add(&acc, x))
}

/// Labeled graphs on `s` vertices with connected complement whose shape is
/// allowed in `family`.
///
/// Components of size 1 and 2 are a vertex plus a clique of size 0 or 1 and
/// are allowed everywhere. From size 3 on:
/// * vertex plus clique: `s` choices for the isolated vertex.
/// * a stable set adds one graph at each allowed size.
/// * clique plus stable set: `2^s - s - 1`, a clique of size `0` or
///   `2..s` with the rest isolated.
/// * vertex plus complete multipartite: `s (B_{s-1} - 1) + 1`, since only
///   the stable set has more than one isolated vertex.
/// * vertex plus complement of a matching: `s T(s-1)` once `s >= 4`, and 4
///   at `s = 3` where the stable triple is counted three times.
pub fn component_count<C: Count>(family: Family, s: usize) -> Result<C, CountError> {
    if s == 0 {
        return Ok(C::zero());
    }
    if s <= 2 {
        return Ok(C::one());
    }
    let vpc = lift::<C>(s)?;
    match family {
        Family::F1 => Ok(vpc),
        Family::F2 if s == 3 => add(&vpc, &C::one()),
        Family::F2 => Ok(vpc),
        Family::F3 => add(&vpc, &C::one()),
        Family::F4 => add(&C::one(), &sum(&binomial_row::<C>(s)?[2..s])?),
        Family::F5VertexMultipartite => {
            let non_stable = sum(&stirling_row::<C>(s - 1)?[2..])?;
            add(&mul(&vpc, &non_stable)?, &C::one())
        }
        Family::F6VertexCoMatching if s == 3 => lift(4),
        Family::F6VertexCoMatching => mul(&vpc, &matchings_count::<C>(s - 1)?),
        Family::AllCoMatching => Ok(C::zero()),
    }
}

/// `f(0..=l)` for `family`: the component holding vertex 0 has `k` vertices,
/// `f(l) = sum_k C(l-1, k-1) c(k) f(l-k)`.
fn family_row<C: Count>(family: Family, l: usize) -> Result<Vec<C>, CountError> {
    let comps: Vec<C> = (0..=l).map(|s| component_count::<C>(family, s)).collect::<Result<_, _>>()?;
    let mut f = vec![C::one()];
    let mut pascal = vec![C::one()];
    for m in 1..=l {
        // pascal = C(m-1, ...)
        let mut total = C::zero();
        for k in 1..=m {
            let term = mul(&mul(&pascal[k - 1], &comps[k])?, &f[m - k])?;
            total = add(&total, &term)?;
        }
        f.push(total);
        let mut next = Vec::with_capacity(pascal.len() + 1);
        next.push(C::one());
        for w in pascal.windows(2) {
            next.push(add(&w[0], &w[1])?);
        }
        next.push(C::one());
        pascal = next;
    }
    Ok(f)
}

/// [`count_family`] without the range cap, for log-space checks.
pub(crate) fn family_row_unbounded(family: Family, l: usize) -> Result<BigCount, CountError> {
    Ok(family_row::<BigCount>(family, l)?.pop().expect("row has l + 1 entries"))
}

/// Labeled graphs on `l` vertices all of whose complement components have a
/// shape allowed in `family`.
pub fn count_family<C: Count>(family: Family, l: usize) -> Result<C, CountError> {
    if l > FAMILY_MAX {
        return Err(CountError::OutOfRange { what: "l", value: l, range: "0..=60" });
    }
    Ok(family_row::<C>(family, l)?.pop().expect("row has l + 1 entries"))
}

/// Filters all `2^{C(l,2)}` labeled graphs on `l` vertices by membership.
pub fn count_family_oracle(family: Family, l: usize) -> Result<BigCount, CountError> {
    if l > 6 {
        return Err(CountError::OutOfRange { what: "l", value: l, range: "0..=6" });
    }
    let pairs = l * l.saturating_sub(1) / 2;
    let count = (0u64..1 << pairs).filter(|&bits| family_member(&Graph::from_pair_bits(l, bits), family)).count();
    Ok(BigUint::from(count))
}

/// Within-part shapes used by the lower-bound construction, largest part
/// first; parts beyond the list are cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PartFill {
    Family(Family),
    CoMatching,
}

pub(crate) fn construction(class: &TreeClass, w: usize) -> Result<Vec<PartFill>, CountError> {
    Ok(match class {
        TreeClass::NoPmNotSubdividedStar | TreeClass::SubdividedStar { .. } => Vec::new(),
        TreeClass::PmGeneric => vec![PartFill::Family(Family::F2)],
        TreeClass::SpikedNotStar { .. } => vec![PartFill::CoMatching; 2.min(w)],
        TreeClass::SpikedStar { .. } => vec![PartFill::CoMatching; w],
        TreeClass::DoublestarNotP6 { .. } => vec![PartFill::Family(Family::F3)],
        TreeClass::P6 => vec![PartFill::Family(Family::F4)],
        other => return Err(CountError::UnsupportedClass(other.name().to_string())),
    })
}

/// Count of graphs on `s` vertices with the given fill. Family parts above
/// [`FAMILY_MAX`] fall back to the Bell number, itself a lower bound for
/// every family.
fn fill_count(fill: PartFill, s: usize) -> Result<BigCount, CountError> {
    match fill {
        PartFill::CoMatching => matchings_count(s),
        PartFill::Family(f) if s <= FAMILY_MAX => count_family(f, s),
        PartFill::Family(_) => bell(s),
    }
}

/// Size of one balanced construction of `t`-free graphs on `n` labeled
/// vertices: `alpha(t) - 1` parts, the listed fills on the largest parts,
/// cliques elsewhere, and any edges between parts.
pub fn certified_lower_bound(t: &Tree, n: usize) -> Result<BigCount, CountError> {
    let class = classify(t);
    let fills = construction(&class, t.alpha().saturating_sub(1))?;
    if n > 10_000 {
        return Err(CountError::OutOfRange { what: "n", value: n, range: "0..=10000" });
    }
    let sizes = balanced_sizes(n, t.alpha() - 1);
    if fills.iter().any(|f| matches!(f, PartFill::Family(_))) && sizes[0] > super::BELL_EXACT_MAX {
        return Err(CountError::OutOfRange { what: "largest part", value: sizes[0], range: "0..=300" });
    }
    let mut total = BigUint::from(1u8) << m_pi_sizes(&sizes);
    for (&fill, &s) in fills.iter().zip(&sizes) {
        total *= fill_count(fill, s)?;
    }
    Ok(total)
}

/// CSV rows `l, f1, f2, f3, f4, bell, 2^l bell` for `1..=max_l`.
pub fn family_table_csv(max_l: usize) -> Result<String, CountError> {
    if max_l > FAMILY_MAX {
        return Err(CountError::OutOfRange { what: "l", value: max_l, range: "0..=60" });
    }
    let rows: Vec<Vec<BigCount>> = [Family::F1, Family::F2, Family::F3, Family::F4]
        .into_iter()
        .map(|f| family_row(f, max_l))
        .collect::<Result<_, _>>()?;
    let bells = bell_row::<BigCount>(max_l)?;
    let mut out = String::from("l,f1,f2,f3,f4,bell,pow2_bell\n");
    for l in 1..=max_l {
        let b = &bells[l];
        writeln!(out, "{l},{},{},{},{},{b},{}", rows[0][l], rows[1][l], rows[2][l], rows[3][l], b << l)
            .expect("writing to a string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{induced_embedding, is_comatching, mask_below, family_member_within};

    #[test]
    fn closed_forms_match_all_graphs() {
        for f in Family::ALL {
            for l in 0..=6 {
                assert_eq!(count_family::<BigCount>(f, l).unwrap(), count_family_oracle(f, l).unwrap(), "{f:?}, l = {l}");
            }
        }
        assert_eq!(count_family::<u64>(Family::F1, 1).unwrap(), 1);
        assert_eq!(count_family::<u64>(Family::F1, 3).unwrap(), 7);
        assert_eq!(count_family::<u64>(Family::F4, 3).unwrap(), 8);
        assert_eq!(count_family::<u64>(Family::F3, 0).unwrap(), 1);
    }

    #[test]
    fn fixed_width_overflow_is_reported() {
        assert_eq!(count_family::<u8>(Family::F4, 12), Err(CountError::Overflow));
        assert!(count_family::<BigCount>(Family::F1, 61).is_err());
        assert!(count_family::<BigCount>(Family::F1, 60).is_ok());
    }

    #[test]
    fn between_bell_and_doubled_bell() {
        let bells = bell_row::<BigCount>(12).unwrap();
        for f in [Family::F1, Family::F2, Family::F3, Family::F4] {
            let row = family_row::<BigCount>(f, 12).unwrap();
            for k in 1..=12 {
                assert!(bells[k] <= row[k] && row[k] <= &bells[k] << k, "{f:?}, k = {k}");
            }
        }
    }

    #[test]
    fn consecutive_ratio() {
        for f in [Family::F1, Family::F2, Family::F3, Family::F4] {
            let row = family_row::<BigCount>(f, 12).unwrap();
            for k in 1..=11 {
                assert!(row[k] <= row[k + 1], "{f:?}, k = {k}");
                assert!(row[k + 1] <= &row[k] * BigUint::from(2 * k + 1), "{f:?}, k = {k}");
            }
        }
    }

    #[test]
    fn table_shape() {
        let csv = family_table_csv(4).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[3], "3,7,8,8,8,5,40");
    }

    /// Brute force over every graph on the balanced partition, keeping those
    /// whose parts have the required shape, and checking each is `t`-free.
    fn lower_bound_oracle(t: &Tree, n: usize) -> u64 {
        let w = t.alpha() - 1;
        let fills = construction(&classify(t), w).unwrap();
        let sizes = balanced_sizes(n, w);
        let mut parts = Vec::new();
        let mut start = 0;
        for &s in &sizes {
            parts.push(mask_below(start + s) & !mask_below(start));
            start += s;
        }
        let pairs = n * (n - 1) / 2;
        let mut count = 0;
        for bits in 0u64..1 << pairs {
            let g = Graph::from_pair_bits(n, bits);
            let ok = parts.iter().enumerate().all(|(i, &p)| match fills.get(i) {
                None => g.is_clique_on(p),
                Some(PartFill::CoMatching) => is_comatching(&g, p),
                Some(PartFill::Family(f)) => family_member_within(&g, p, *f),
            });
            if ok {
                assert!(induced_embedding(t.graph(), &g).is_none(), "counted graph contains the tree");
                count += 1;
            }
        }
        count
    }

    #[test]
    fn lower_bound_examples() {
        let b = |t: &Tree, n| certified_lower_bound(t, n).unwrap();
        assert_eq!(b(&Tree::path(5), 6), BigUint::from(512u32));
        // T(3) = 4 matchings on three points, squared
        assert_eq!(b(&Tree::m6(), 6), BigUint::from(16u32 * 512));
        assert_eq!(b(&Tree::path(6), 6), BigUint::from(8u32 * 512));
        assert!(matches!(certified_lower_bound(&Tree::path(4), 6), Err(CountError::UnsupportedClass(_))));
        for t in [Tree::path(5), Tree::m6(), Tree::path(6), Tree::star(3)] {
            assert_eq!(b(&t, 6), BigUint::from(lower_bound_oracle(&t, 6)), "{:?}", t.edges());
        }
        // the P6 construction on the largest part of an odd split
        assert_eq!(b(&Tree::path(6), 7), BigUint::from(count_family::<u64>(Family::F4, 4).unwrap() << 12));
    }
}
