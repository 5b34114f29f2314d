//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's arithmetic: group elements are coordinate vectors, field
//! elements coefficient vectors, and designs plain lists of point lists.

#![allow(dead_code)]

pub mod suites;

use std::collections::{BTreeSet, HashMap};

/// Mixed-radix decoding, first factor most significant.
pub fn coords(orders: &[u64], mut x: usize) -> Vec<u64> {
    let mut out = vec![0; orders.len()];
    for (c, &n) in out.iter_mut().zip(orders).rev() {
        *c = x as u64 % n;
        x /= n as usize;
    }
    out
}

pub fn index(orders: &[u64], c: &[u64]) -> usize {
    c.iter()
        .zip(orders)
        .fold(0usize, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
}

pub fn sub(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((&x, &y), &n)| (x + n - y) % n)
        .collect()
}

pub fn add(orders: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(orders)
        .map(|((&x, &y), &n)| (x + y) % n)
        .collect()
}

pub fn is_zero_sum(orders: &[u64], block: &[usize]) -> bool {
    let mut acc = vec![0u64; orders.len()];
    for &x in block {
        acc = add(orders, &acc, &coords(orders, x));
    }
    acc.iter().all(|&c| c == 0)
}

/// Multiplicity of every element in the combined list of differences.
pub fn delta_counts(orders: &[u64], blocks: &[Vec<usize>]) -> Vec<usize> {
    let n: u64 = orders.iter().product();
    let mut counts = vec![0usize; n as usize];
    for b in blocks {
        let cs: Vec<Vec<u64>> = b.iter().map(|&x| coords(orders, x)).collect();
        for (i, a) in cs.iter().enumerate() {
            for (j, c) in cs.iter().enumerate() {
                if i != j {
                    counts[index(orders, &sub(orders, a, c))] += 1;
                }
            }
        }
    }
    counts
}

/// Every element outside `forbidden` covered exactly `lambda` times, none inside.
pub fn is_relative_family(
    orders: &[u64],
    blocks: &[Vec<usize>],
    forbidden: &[usize],
    lambda: usize,
) -> bool {
    let counts = delta_counts(orders, blocks);
    counts.iter().enumerate().all(|(x, &c)| {
        if forbidden.contains(&x) {
            c == 0
        } else {
            c == lambda
        }
    })
}

/// Polynomial arithmetic over `Z_p` modulo a monic `modulus` (ascending).
#[derive(Clone, Debug)]
pub struct PolyField {
    pub p: u64,
    pub modulus: Vec<u64>,
}

impl PolyField {
    pub fn n(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n() as u32)
    }

    pub fn digits(&self, mut id: u64) -> Vec<u64> {
        (0..self.n())
            .map(|_| {
                let c = id % self.p;
                id /= self.p;
                c
            })
            .collect()
    }

    pub fn id(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.id(&x
            .iter()
            .zip(&y)
            .map(|(u, v)| (u + v) % self.p)
            .collect::<Vec<_>>())
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.id(&x
            .iter()
            .zip(&y)
            .map(|(u, v)| (u + self.p - v) % self.p)
            .collect::<Vec<_>>())
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let n = self.n();
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for d in (n..2 * n).rev() {
            let t = prod[d];
            for i in 0..=n {
                prod[d - n + i] = (prod[d - n + i] + (self.p - self.modulus[i]) * t) % self.p;
            }
        }
        self.id(&prod[..n])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        (0..e).fold(self.id(&[1]), |acc, _| self.mul(acc, a))
    }

    /// Multiplicative order by repeated multiplication.
    pub fn order_of(&self, a: u64) -> u64 {
        let one = self.id(&[1]);
        let mut x = a;
        let mut k = 1;
        while x != one {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn primitive(&self) -> u64 {
        (1..self.order())
            .find(|&a| self.order_of(a) == self.order() - 1)
            .expect("a primitive element")
    }

    /// Discrete logarithms to base `g` by walking the powers.
    pub fn logs(&self, g: u64) -> HashMap<u64, u64> {
        let mut out = HashMap::new();
        let mut x = self.id(&[1]);
        for i in 0..self.order() - 1 {
            out.insert(x, i);
            x = self.mul(x, g);
        }
        out
    }
}

/// Pair counts of a design over a full `v x v` table.
pub fn pair_counts(v: usize, blocks: &[Vec<u32>]) -> Vec<u16> {
    let mut t = vec![0u16; v * v];
    for b in blocks {
        for &x in b {
            for &y in b {
                if x < y {
                    t[x as usize * v + y as usize] += 1;
                }
            }
        }
    }
    t
}

pub fn is_2_design(v: usize, blocks: &[Vec<u32>], lambda: u16) -> bool {
    let t = pair_counts(v, blocks);
    (0..v).all(|x| (x + 1..v).all(|y| t[x * v + y] == lambda))
}

/// Least point set containing both blocks and closed under "add the block
/// through any two points", by repeated passes until nothing changes.
pub fn closure(blocks: &[Vec<u32>], b1: &[u32], b2: &[u32]) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = b1.iter().chain(b2).copied().collect();
    loop {
        let before = set.len();
        for b in blocks {
            if b.iter().filter(|x| set.contains(x)).count() >= 2 {
                set.extend(b.iter().copied());
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Block multiset invariant under every translation of the group.
pub fn translation_invariant(orders: &[u64], blocks: &[Vec<u32>]) -> bool {
    let canon = |bs: Vec<Vec<u32>>| {
        let mut bs: Vec<Vec<u32>> = bs
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        bs.sort_unstable();
        bs
    };
    let base = canon(blocks.to_vec());
    let n: u64 = orders.iter().product();
    (0..n as usize).all(|g| {
        let gc = coords(orders, g);
        let moved = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| index(orders, &add(orders, &coords(orders, x as usize), &gc)) as u32)
                    .collect()
            })
            .collect();
        canon(moved) == base
    })
}

/// `2^j mod m` never equals 1 for `1 <= j <= bound`, and `2^o = 1`.
pub fn order_of_two_exceeds(m: u64, o: u64, bound: u64) -> bool {
    let mut x: u128 = 1;
    for _ in 0..bound {
        x = x * 2 % m as u128;
        if x == 1 {
            return false;
        }
    }
    let mut acc: u128 = 1;
    let mut base: u128 = 2;
    let mut e = o;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc == 1
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// All lists of cyclic orders (prime-power factors, non-increasing per
/// prime) presenting the abelian groups of order `n`.
pub fn abelian_groups(n: u64) -> Vec<Vec<u64>> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut primes = Vec::new();
    let mut r = n;
    let mut d = 2;
    while r > 1 {
        let mut e = 0;
        while r.is_multiple_of(d) {
            r /= d;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += 1;
    }
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in primes {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut g = prefix.clone();
                g.extend(part.iter().map(|&a| p.pow(a)));
                next.push(g);
            }
        }
        out = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    out
}
