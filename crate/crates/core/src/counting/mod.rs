//! Exact counts of labeled graph families and point evaluations of growth
//! estimates.
//!
//! Exact routines are generic over the count type so that overflow in a fixed
//! width type is reported instead of wrapping; [`BigCount`] never overflows.

mod families;
mod growth;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::certify::Partition;
use crate::BigCount;

pub use families::{
    certified_lower_bound, component_count, count_family, count_family_oracle, family_table_csv, FAMILY_MAX,
};
pub use growth::{
    bell_bounds, bell_log2, growth_formula, kleitman_log2, kleitman_ratio, kleitman_table_csv,
    universal_bound_check, GrowthEstimate, UniversalBoundRow,
};

/// Largest `n` for which [`bell`] is exact; [`bell_log2`] switches to a
/// series evaluation above it.
pub const BELL_EXACT_MAX: usize = 300;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("count does not fit the requested integer type")]
    Overflow,
    #[error("{what} = {value} outside the supported range {range}")]
    OutOfRange { what: &'static str, value: usize, range: &'static str },
    #[error("tree class {0} has no lower-bound construction")]
    UnsupportedClass(String),
}

/// Exact counting scalar.
pub trait Count: Zero + One + CheckedAdd + CheckedMul + FromPrimitive + Clone {}

impl<C: Zero + One + CheckedAdd + CheckedMul + FromPrimitive + Clone> Count for C {}

pub(crate) fn add<C: Count>(a: &C, b: &C) -> Result<C, CountError> {
    a.checked_add(b).ok_or(CountError::Overflow)
}

pub(crate) fn mul<C: Count>(a: &C, b: &C) -> Result<C, CountError> {
    a.checked_mul(b).ok_or(CountError::Overflow)
}

pub(crate) fn lift<C: Count>(x: usize) -> Result<C, CountError> {
    C::from_usize(x).ok_or(CountError::Overflow)
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub(crate) fn bell_row<C: Count>(n: usize) -> Result<Vec<C>, CountError> {
    let mut out = vec![C::one()];
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("nonempty row").clone());
        for x in &row {
            let v = add(next.last().expect("nonempty"), x)?;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    Ok(out)
}

/// The number of partitions of an `n`-element set.
pub fn bell<C: Count>(n: usize) -> Result<C, CountError> {
    if n > BELL_EXACT_MAX {
        return Err(CountError::OutOfRange { what: "n", value: n, range: "0..=300" });
    }
    Ok(bell_row::<C>(n)?.pop().expect("row has n + 1 entries"))
}

/// Matchings on `0..=l` labeled points (telephone numbers), equivalently
/// graphs on `l` vertices whose complement is a matching.
pub(crate) fn matchings_row<C: Count>(l: usize) -> Result<Vec<C>, CountError> {
    let mut t = vec![C::one()];
    if l >= 1 {
        t.push(C::one());
    }
    for k in 2..=l {
        let prev = mul(&lift::<C>(k - 1)?, &t[k - 2])?;
        t.push(add(&t[k - 1], &prev)?);
    }
    Ok(t)
}

pub fn matchings_count<C: Count>(l: usize) -> Result<C, CountError> {
    if l > 100_000 {
        return Err(CountError::OutOfRange { what: "l", value: l, range: "0..=100000" });
    }
    Ok(matchings_row::<C>(l)?.pop().expect("row has l + 1 entries"))
}

/// Binary logarithm of a positive big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("small").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64 bits").log2() + shift as f64
}

/// `log2(num / den)`; `-inf` for a zero numerator.
pub fn log2_ratio(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_big(num) - log2_big(den)
}

/// Pairs of vertices in different parts: `C(n,2) - sum C(|part|,2)`.
pub fn m_pi_sizes(sizes: &[usize]) -> u64 {
    let pairs = |s: usize| (s * s.saturating_sub(1) / 2) as u64;
    pairs(sizes.iter().sum()) - sizes.iter().map(|&s| pairs(s)).sum::<u64>()
}

pub fn m_pi(p: &Partition) -> BigCount {
    BigUint::from(m_pi_sizes(&p.sizes()))
}

/// The deviation form `(1 - 1/w) n^2/2 - sum d_i^2 / 2` with `d_i = |part| - n/w`,
/// algebraically equal to [`m_pi_sizes`].
pub fn m_pi_deviation_form(sizes: &[usize]) -> f64 {
    let n: usize = sizes.iter().sum();
    let w = sizes.len() as f64;
    let nf = n as f64;
    let dev: f64 = sizes.iter().map(|&s| (s as f64 - nf / w).powi(2)).sum();
    (1.0 - 1.0 / w) * nf * nf / 2.0 - dev / 2.0
}

/// Part sizes differing by at most one, largest first.
pub fn balanced_sizes(n: usize, w: usize) -> Vec<usize> {
    (0..w).map(|i| n / w + usize::from(i < n % w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Set partitions of `0..n` by restricted growth strings.
    fn partitions_brute(n: usize) -> u64 {
        fn go(i: usize, n: usize, blocks: usize) -> u64 {
            if i == n {
                return 1;
            }
            (0..=blocks).map(|b| go(i + 1, n, blocks.max(b + 1))).sum()
        }
        go(0, n, 0)
    }

    fn matchings_brute(l: usize) -> u64 {
        fn go(free: u32) -> u64 {
            if free == 0 {
                return 1;
            }
            let v = free.trailing_zeros();
            let rest = free & !(1 << v);
            let mut total = go(rest);
            let mut others = rest;
            while others != 0 {
                let u = others.trailing_zeros();
                others &= others - 1;
                total += go(rest & !(1 << u));
            }
            total
        }
        go(((1u64 << l) - 1) as u32)
    }

    #[test]
    fn bell_numbers() {
        for n in 0..=10 {
            assert_eq!(bell::<u64>(n).unwrap(), partitions_brute(n), "n = {n}");
        }
        assert_eq!(bell::<u64>(3).unwrap(), 5);
        assert_eq!(bell::<BigCount>(10).unwrap(), BigUint::from(115_975u32));
        assert_eq!(bell::<u8>(6), Err(CountError::Overflow));
        assert!(bell::<BigCount>(301).is_err());
    }

    #[test]
    fn telephone_numbers() {
        for l in 0..=8 {
            assert_eq!(matchings_count::<u64>(l).unwrap(), matchings_brute(l), "l = {l}");
        }
        assert_eq!(matchings_count::<u32>(6).unwrap(), 76);
        let row = matchings_row::<BigCount>(60).unwrap();
        for l in 2..=60 {
            assert_eq!(row[l], &row[l - 1] + BigUint::from(l - 1) * &row[l - 2]);
        }
    }

    #[test]
    fn cross_pairs() {
        assert_eq!(m_pi_sizes(&[3, 3]), 9);
        assert_eq!(m_pi_sizes(&[6]), 0);
        assert_eq!(m_pi_sizes(&[4, 3]), 12);
        for sizes in [vec![4, 4, 4], vec![3, 3, 3, 3], vec![5, 5], vec![7, 2, 1]] {
            assert!((m_pi_sizes(&sizes) as f64 - m_pi_deviation_form(&sizes)).abs() < 1e-9);
        }
    }

    #[test]
    fn balanced_parts_maximize_cross_pairs() {
        fn compositions(n: usize, w: usize) -> Vec<Vec<usize>> {
            if w == 1 {
                return vec![vec![n]];
            }
            (0..=n)
                .flat_map(|first| {
                    compositions(n - first, w - 1).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        for n in 1..=12 {
            for w in 1..=4 {
                let best = compositions(n, w).iter().map(|c| m_pi_sizes(c)).max().unwrap();
                assert_eq!(m_pi_sizes(&balanced_sizes(n, w)), best, "n = {n}, w = {w}");
            }
        }
    }

    #[test]
    fn big_log() {
        let x = BigUint::from(1u8) << 200usize;
        assert!((log2_big(&x) - 200.0).abs() < 1e-12);
        assert!((log2_big(&BigUint::from(1000u32)) - 1000f64.log2()).abs() < 1e-12);
    }
}
