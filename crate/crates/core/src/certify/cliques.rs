//! Many pairwise edge-disjoint transversal cliques in a complete multipartite
//! host, from lines over a finite field.

use serde::Serialize;

/// Arithmetic in the field with `p^k` elements, elements encoded as base-`p`
/// digit strings of polynomial coefficients.
struct Field {
    p: usize,
    k: usize,
    /// monic irreducible modulus, low coefficient first, length `k + 1`
    modulus: Vec<usize>,
}

impl Field {
    fn new(p: usize, k: usize) -> Field {
        let modulus = (0..p.pow(k as u32))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| k == 1 || is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Field { p, k, modulus }
    }

    fn size(&self) -> usize {
        self.p.pow(self.k as u32)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        undigits(&x.iter().zip(&y).map(|(i, j)| (i + j) % self.p).collect::<Vec<_>>(), self.p)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        let mut prod = vec![0usize; 2 * self.k];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        reduce(&mut prod, &self.modulus, self.p);
        undigits(&prod[..self.k], self.p)
    }
}

fn digits(mut a: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Reduces `poly` modulo the monic `modulus` in place.
fn reduce(poly: &mut [usize], modulus: &[usize], p: usize) {
    let deg = modulus.len() - 1;
    for top in (deg..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let at = top - deg + i;
            poly[at] = (poly[at] + (p - c) * m) % p;
        }
    }
}

/// No monic factor of degree `1..=deg/2` divides `m`.
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len() - 1;
    (1..=deg / 2).all(|d| {
        (0..p.pow(d as u32)).all(|low| {
            let mut f = digits(low, p, d);
            f.push(1);
            let mut rem = m.to_vec();
            reduce(&mut rem, &f, p);
            rem[..d].iter().any(|&c| c != 0)
        })
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, k)` with `p^k = q`, if `q` is a prime power.
fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|&d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Cliques in a complete `j`-partite graph whose parts have `part_size`
/// vertices each. Vertex `i * part_size + x` is position `x` of part `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueSystem {
    pub parts: usize,
    pub part_size: usize,
    /// largest prime at most `parts - 1`
    pub r: usize,
    /// each clique lists its vertex in parts `0..parts`
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueSystem {
    /// Every two cliques share at most one vertex.
    pub fn pairwise_edge_disjoint(&self) -> bool {
        self.cliques.iter().enumerate().all(|(a, x)| {
            self.cliques[a + 1..]
                .iter()
                .all(|y| x.iter().zip(y).filter(|(u, v)| u == v).count() <= 1)
        })
    }
}

/// At least `r^2` transversal cliques of a complete `j`-partite graph, any two
/// sharing at most one vertex. Parts have `q` vertices, `q` the least prime
/// power `>= j`; part `i` is evaluation point `x_i` and clique `(a, b)` uses
/// position `a + b x_i` in part `i`.
pub fn edge_disjoint_cliques(j: usize) -> CliqueSystem {
    assert!((3..=16).contains(&j), "j = {j} outside 3..=16");
    let q = (j..).find(|&q| prime_power(q).is_some()).expect("prime powers are unbounded");
    let (p, k) = prime_power(q).expect("prime power");
    let field = Field::new(p, k);
    debug_assert_eq!(field.size(), q);
    let mut cliques = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            cliques.push((0..j).map(|i| i * q + field.add(a, field.mul(b, i))).collect());
        }
    }
    let r = (2..j).rev().find(|&r| is_prime(r)).expect("j >= 3");
    let system = CliqueSystem { parts: j, part_size: q, r, cliques };
    assert!(system.pairwise_edge_disjoint(), "line construction failed for j = {j}");
    assert!(system.cliques.len() >= r * r);
    system
}
