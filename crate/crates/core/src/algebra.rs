//! Finite abelian groups presented as direct products of cyclic groups,
//! plus the handful of integer helpers the rest of the crate leans on.
//!
//! Elements are addressed by their rank in the lexicographic order of
//! coordinate tuples (first factor most significant). This makes sorted
//! element lists coincide with lexicographically sorted tuples.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A group `Z_{n_1} x ... x Z_{n_t}` with componentwise addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

/// Coordinate view of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Largest group order the element-index arithmetic accepts.
pub const MAX_GROUP_ORDER: u64 = 1 << 32;

impl AbelianGroup {
    /// Builds `Z_{n_1} x ... x Z_{n_t}`. Rejects an empty factor list and zero orders.
    pub fn new(cyclic_orders: &[u64]) -> Result<Self> {
        if cyclic_orders.is_empty() {
            return Err(Error::InvalidGroup("empty list of cyclic factors".into()));
        }
        Self::from_factors(cyclic_orders)
    }

    /// The trivial group, presented with no factors. Used as the base of a
    /// product carrier that is just a field.
    pub fn trivial() -> Self {
        AbelianGroup {
            orders: Vec::new(),
            strides: Vec::new(),
            order: 1,
        }
    }

    pub(crate) fn from_factors(cyclic_orders: &[u64]) -> Result<Self> {
        if let Some(i) = cyclic_orders.iter().position(|&n| n == 0) {
            return Err(Error::InvalidGroup(format!("factor {i} has order 0")));
        }
        let mut order: u64 = 1;
        for &n in cyclic_orders {
            order = order
                .checked_mul(n)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::InvalidGroup("group order too large".into()))?;
        }
        let mut strides = vec![1u64; cyclic_orders.len()];
        for i in (0..cyclic_orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * cyclic_orders[i + 1];
        }
        Ok(AbelianGroup {
            orders: cyclic_orders.to_vec(),
            strides,
            order,
        })
    }

    /// Direct product `self x other`, factors concatenated.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        Self::from_factors(&orders).expect("product of valid groups")
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn contains_index(&self, x: usize) -> bool {
        (x as u64) < self.order
    }

    /// Index of a coordinate tuple, validating every residue.
    pub fn index_of(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        let mut idx = 0u64;
        for (i, (&c, &n)) in coords.iter().zip(&self.orders).enumerate() {
            if c >= n {
                return Err(Error::InvalidElement(format!(
                    "coordinate {i} = {c} not in [0, {n})"
                )));
            }
            idx += c * self.strides[i];
        }
        Ok(idx as usize)
    }

    /// Index of a coordinate tuple, reducing each coordinate modulo its factor.
    pub fn index_of_reduced(&self, coords: &[i64]) -> usize {
        assert_eq!(coords.len(), self.orders.len());
        let mut idx = 0u64;
        for (i, (&c, &n)) in coords.iter().zip(&self.orders).enumerate() {
            idx += (c.rem_euclid(n as i64) as u64) * self.strides[i];
        }
        idx as usize
    }

    pub fn coords(&self, x: usize) -> Vec<u64> {
        let x = x as u64;
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (x / s) % n)
            .collect()
    }

    pub fn element(&self, x: usize) -> GroupElement {
        GroupElement {
            coords: self.coords(x),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.orders.len() == 1 {
            return (a + b) % self.order as usize;
        }
        let (a, b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = ((a / s) % n + (b / s) % n) % n;
            out += d * s;
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.orders.len() == 1 {
            let n = self.order as usize;
            return (n - a % n) % n;
        }
        let a = a as u64;
        let mut out = 0u64;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = (a / s) % n;
            out += ((n - d) % n) * s;
        }
        out as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        if self.orders.len() == 1 {
            let n = self.order as usize;
            return (a + n - b) % n;
        }
        let (a, b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = ((a / s) % n + n - (b / s) % n) % n;
            out += d * s;
        }
        out as usize
    }

    /// `m * a`.
    pub fn scale(&self, a: usize, m: u64) -> usize {
        let a = a as u64;
        let mut out = 0u64;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let d = (((a / s) % n) as u128 * m as u128 % n as u128) as u64;
            out += d * s;
        }
        out as usize
    }

    /// Sum of a sequence of elements (counting repeats). Empty sum is the identity.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, elems: I) -> usize {
        let mut acc = vec![0u64; self.orders.len()];
        for x in elems {
            let x = x as u64;
            for (i, (&n, &s)) in self.orders.iter().zip(&self.strides).enumerate() {
                acc[i] = (acc[i] + (x / s) % n) % n;
            }
        }
        acc.iter()
            .zip(&self.strides)
            .map(|(&d, &s)| d * s)
            .sum::<u64>() as usize
    }

    /// Least `m >= 1` with `m * g = 0`; the lcm of the coordinate orders.
    pub fn element_order(&self, g: usize) -> u64 {
        self.coords(g)
            .iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, n| acc.lcm(n))
    }

    /// `I(G) = {g : 2g = 0}` together with the binary flag `|I(G)| = 2`.
    pub fn involution_subgroup(&self) -> InvolutionSubgroup {
        // 2g = 0 coordinatewise: each coordinate is 0 or n/2 (n even).
        let mut elems = vec![0usize];
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            if n % 2 == 0 {
                let half = (n / 2 * s) as usize;
                let extra: Vec<usize> = elems.iter().map(|&e| e + half).collect();
                elems.extend(extra);
            }
        }
        elems.sort_unstable();
        let is_binary = elems.len() == 2;
        InvolutionSubgroup {
            subgroup: Subgroup {
                parent: self.clone(),
                elements: elems,
            },
            is_binary,
        }
    }

    /// True iff the elements of the group sum to the identity.
    pub fn is_zero_sum_group(&self) -> bool {
        // Coordinate i of the total is order/n_i * n_i(n_i-1)/2 mod n_i.
        self.orders.iter().all(|&n| {
            let per = (self.order / n) as u128;
            let tri = (n as u128) * (n as u128 - 1) / 2;
            (per * tri).is_multiple_of(n as u128)
        })
    }

    pub fn display(&self, x: usize) -> String {
        self.element(x).to_string()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "{{0}}");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

/// `I(G)` as returned by [`AbelianGroup::involution_subgroup`].
#[derive(Clone, Debug)]
pub struct InvolutionSubgroup {
    pub subgroup: Subgroup,
    pub is_binary: bool,
}

/// A subgroup given by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: AbelianGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `parent`.
    pub fn new(parent: &AbelianGroup, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&x) = elems.iter().find(|&&x| !parent.contains_index(x)) {
            return Err(Error::NotASubgroup(format!(
                "element index {x} outside {parent}"
            )));
        }
        if elems.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &elems {
            if elems.binary_search(&parent.neg(a)).is_err() {
                return Err(Error::NotASubgroup(format!(
                    "not closed under negation at {}",
                    parent.display(a)
                )));
            }
            for &b in &elems {
                if elems.binary_search(&parent.add(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under addition: {} + {}",
                        parent.display(a),
                        parent.display(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements: elems,
        })
    }

    /// The subgroup generated by `generators`.
    pub fn generated(parent: &AbelianGroup, generators: &[usize]) -> Result<Self> {
        if let Some(&x) = generators.iter().find(|&&x| !parent.contains_index(x)) {
            return Err(Error::InvalidElement(format!(
                "generator index {x} outside {parent}"
            )));
        }
        let mut seen = vec![false; parent.order()];
        seen[0] = true;
        let mut elems = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = parent.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                    frontier.push(y);
                }
            }
        }
        elems.sort_unstable();
        Ok(Subgroup {
            parent: parent.clone(),
            elements: elems,
        })
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn whole(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Number of involutions is exactly one.
    pub fn is_binary(&self) -> bool {
        self.elements
            .iter()
            .filter(|&&x| x != 0 && self.parent.add(x, x) == 0)
            .count()
            == 1
    }

    /// Sum of the elements is the identity.
    pub fn is_zero_sum(&self) -> bool {
        self.parent.sum(self.elements.iter().copied()) == 0
    }

    /// The cosets `x + H`, sorted by minimal representative.
    pub fn cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut assigned = vec![false; g.order()];
        let mut out = Vec::with_capacity(g.order() / self.order());
        for x in g.elements() {
            if assigned[x] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.add(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                assigned[y] = true;
            }
            out.push(coset);
        }
        out
    }
}

/// Trial-division factorisation `n = prod p^e`, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3] {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        for cand in [p, p + 2] {
            if n.is_multiple_of(cand) {
                let mut e = 0;
                while n.is_multiple_of(cand) {
                    n /= cand;
                    e += 1;
                }
                out.push((cand, e));
            }
        }
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Product of the distinct primes dividing `n`; `radical(1) = 1`.
pub fn radical(n: i64) -> Result<u64> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!(
            "radical of non-positive {n}"
        )));
    }
    Ok(factorize(n as u64).iter().map(|(p, _)| p).product())
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`, `m >= 2`), via
/// the factorisation of Euler's totient.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 || a.gcd(&m) != 1 {
        return Err(Error::InvalidArgument(format!("{a} is not a unit mod {m}")));
    }
    let phi = factorize(m)
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1));
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}
