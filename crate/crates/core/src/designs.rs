//! Designs developed from difference families, their verification as
//! 2-designs, regularity and strict additivity, affine geometries and the
//! plane-closure test for Steiner designs with lines of prime power size.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::algebra::{prime_power, AbelianGroup};
use crate::error::{Error, Result};
use crate::families::RelativeDifferenceFamily;
use crate::gf::{FieldElement, FiniteField};

/// Points `0..v`, blocks as sorted point lists (repeats allowed), declared
/// parameters `(v, k, lambda)` and optionally the group the points are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    lambda: usize,
    flat: Vec<u32>,
    group: Option<AbelianGroup>,
}

impl Design {
    pub fn new(
        v: usize,
        k: usize,
        lambda: usize,
        blocks: Vec<Vec<u32>>,
        group: Option<AbelianGroup>,
    ) -> Result<Self> {
        if k < 2 || v < k || v > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "bad design parameters v={v}, k={k}"
            )));
        }
        if let Some(g) = &group {
            if g.order() != v {
                return Err(Error::CarrierMismatch(format!(
                    "group {g} does not have {v} elements"
                )));
            }
        }
        let mut flat = Vec::with_capacity(blocks.len() * k);
        for (i, mut b) in blocks.into_iter().enumerate() {
            if b.len() != k {
                return Err(Error::Shape(format!(
                    "block {i} has {} points, expected {k}",
                    b.len()
                )));
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Shape(format!("block {i} repeats a point")));
            }
            if b[k - 1] as usize >= v {
                return Err(Error::InvalidElement(format!(
                    "block {i} has point {} >= {v}",
                    b[k - 1]
                )));
            }
            flat.extend_from_slice(&b);
        }
        Ok(Design {
            v,
            k,
            lambda,
            flat,
            group,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn group(&self) -> Option<&AbelianGroup> {
        self.group.as_ref()
    }

    pub fn block_count(&self) -> usize {
        self.flat.len() / self.k
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[u32]> {
        self.flat.chunks_exact(self.k)
    }

    /// Distinct blocks with their multiplicities, sorted.
    pub fn block_multiplicities(&self) -> Vec<(Vec<u32>, usize)> {
        let mut bs: Vec<&[u32]> = self.blocks().collect();
        bs.par_sort_unstable();
        let mut out: Vec<(Vec<u32>, usize)> = Vec::new();
        for b in bs {
            match out.last_mut() {
                Some((last, n)) if last.as_slice() == b => *n += 1,
                _ => out.push((b.to_vec(), 1)),
            }
        }
        out
    }
}

fn pair_index(v: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * v - a * (a + 1) / 2 + (b - a - 1)
}

/// Development of a relative family: all translates of every base block plus
/// `lambda` copies of every coset of every spread member.
pub fn develop(rdf: &RelativeDifferenceFamily) -> Result<Design> {
    let verdict = rdf.verdict();
    if !verdict.is_rdf {
        return Err(Error::NotVerified("the family does not verify".into()));
    }
    let g = rdf.group();
    let k = rdf.k();
    let lambda = rdf.lambda();
    for h in rdf.forbidden().members() {
        if h.order() != k {
            return Err(Error::Shape(format!(
                "spread member of order {} but block size {k}",
                h.order()
            )));
        }
    }
    let mut blocks: Vec<Vec<u32>> = rdf
        .blocks()
        .par_iter()
        .flat_map_iter(|b| {
            g.elements().map(move |t| {
                let mut nb: Vec<u32> = b.as_slice().iter().map(|&x| g.add(x, t) as u32).collect();
                nb.sort_unstable();
                nb
            })
        })
        .collect();
    for h in rdf.forbidden().members() {
        for coset in h.cosets() {
            let c: Vec<u32> = coset.iter().map(|&x| x as u32).collect();
            for _ in 0..lambda {
                blocks.push(c.clone());
            }
        }
    }
    Design::new(g.order(), k, lambda, blocks, Some(g.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignVerdict {
    pub is_design: bool,
    /// The common number of blocks through a pair, when constant.
    pub lambda_found: Option<usize>,
    pub is_simple: bool,
    /// The common number of blocks through a point, when constant.
    pub replication: Option<usize>,
    /// First pair whose count differs from the declared `lambda`, with the count.
    pub witness_pair: Option<(u32, u32, usize)>,
    pub pair_incidences: u64,
}

/// Exact pair counts over all `C(v,2)` pairs.
pub fn verify_design(design: &Design) -> DesignVerdict {
    let v = design.v;
    let counts: Vec<AtomicU32> = (0..v * (v - 1) / 2).map(|_| AtomicU32::new(0)).collect();
    let reps: Vec<AtomicU32> = (0..v).map(|_| AtomicU32::new(0)).collect();
    design.flat.par_chunks_exact(design.k).for_each(|b| {
        for (i, &x) in b.iter().enumerate() {
            reps[x as usize].fetch_add(1, Ordering::Relaxed);
            for &y in &b[i + 1..] {
                counts[pair_index(v, x as usize, y as usize)].fetch_add(1, Ordering::Relaxed);
            }
        }
    });
    let counts: Vec<u32> = counts.into_iter().map(AtomicU32::into_inner).collect();
    let pair_incidences = counts.iter().map(|&c| c as u64).sum();
    let first = counts.first().copied().unwrap_or(0) as usize;
    let lambda_found = counts.iter().all(|&c| c as usize == first).then_some(first);
    let witness_pair = counts
        .iter()
        .position(|&c| c as usize != design.lambda)
        .map(|idx| {
            let mut a = 0usize;
            let mut start = 0usize;
            while start + (v - a - 1) <= idx {
                start += v - a - 1;
                a += 1;
            }
            let b = a + 1 + (idx - start);
            (a as u32, b as u32, counts[idx] as usize)
        });
    let reps: Vec<u32> = reps.into_iter().map(AtomicU32::into_inner).collect();
    let r0 = reps.first().copied().unwrap_or(0) as usize;
    let replication = reps.iter().all(|&r| r as usize == r0).then_some(r0);
    let is_simple = design.block_multiplicities().iter().all(|(_, n)| *n == 1);
    DesignVerdict {
        is_design: witness_pair.is_none(),
        lambda_found,
        is_simple,
        replication,
        witness_pair,
        pair_incidences,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperRegularVerdict {
    pub is_regular: bool,
    pub is_strictly_additive: bool,
    pub is_super_regular: bool,
    /// A block witnessing the failure of regularity or additivity.
    pub witness_block: Option<Vec<u32>>,
}

/// Lexicographically least of the translates `B - b`, `b` in `B`, sorted.
pub fn canonical_translate(group: &AbelianGroup, block: &[u32]) -> Vec<u32> {
    block
        .iter()
        .map(|&b| {
            let mut t: Vec<u32> = block
                .iter()
                .map(|&x| group.sub(x as usize, b as usize) as u32)
                .collect();
            t.sort_unstable();
            t
        })
        .min()
        .unwrap_or_default()
}

/// Regularity: within every translation class the distinct blocks number
/// `|G| / |Stab(B)|` and occur equally often. Strict additivity: every block
/// is zero-sum.
pub fn verify_super_regular(design: &Design, group: &AbelianGroup) -> Result<SuperRegularVerdict> {
    if group.order() != design.v {
        return Err(Error::CarrierMismatch(format!(
            "{group} has {} elements, the design {} points",
            group.order(),
            design.v
        )));
    }
    let distinct = design.block_multiplicities();
    let keyed: Vec<(Vec<u32>, usize)> = distinct
        .par_iter()
        .map(|(b, n)| (canonical_translate(group, b), *n))
        .collect();
    let mut classes: HashMap<Vec<u32>, (usize, usize, usize)> = HashMap::new();
    let mut witness_block = None;
    for ((canon, n), (b, _)) in keyed.iter().zip(&distinct) {
        let e = classes.entry(canon.clone()).or_insert((0, *n, 0));
        e.0 += 1;
        if e.1 != *n && witness_block.is_none() {
            witness_block = Some(b.clone());
        }
        e.2 = distinct.len();
    }
    let mut is_regular = witness_block.is_none();
    if is_regular {
        for (canon, (count, _, _)) in &classes {
            let stab = canon
                .iter()
                .filter(|&&t| {
                    let mut moved: Vec<u32> = canon
                        .iter()
                        .map(|&x| group.add(x as usize, t as usize) as u32)
                        .collect();
                    moved.sort_unstable();
                    moved == *canon
                })
                .count();
            if *count * stab != group.order() {
                is_regular = false;
                witness_block = Some(canon.clone());
                break;
            }
        }
    }
    let bad_sum = design
        .blocks()
        .find(|b| group.sum(b.iter().map(|&x| x as usize)) != 0)
        .map(|b| b.to_vec());
    let is_strictly_additive = bad_sum.is_none();
    if witness_block.is_none() {
        witness_block = bad_sum;
    }
    Ok(SuperRegularVerdict {
        is_regular,
        is_strictly_additive,
        is_super_regular: is_regular && is_strictly_additive,
        witness_block,
    })
}

/// The points and lines of `AG(n, q)` on `F_q^n`, points indexed with the
/// first coordinate most significant.
pub fn ag_design(n: u32, q: u64) -> Result<Design> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "AG(n,q) needs n >= 2, got {n}"
        )));
    }
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let field = FiniteField::new(p, e, None)?;
    let qn = (q as u128).pow(n);
    if qn > (1u128 << 24) {
        return Err(Error::CapExceeded {
            required: qn,
            cap: 1 << 24,
        });
    }
    let v = qn as usize;
    let qs = q as usize;
    let n = n as usize;
    let coords = |x: usize| -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; n];
        let mut r = x;
        for c in out.iter_mut().rev() {
            *c = FieldElement((r % qs) as u32);
            r /= qs;
        }
        out
    };
    let index = |c: &[FieldElement]| c.iter().fold(0usize, |acc, x| acc * qs + x.id());
    // directions: nonzero vectors whose first nonzero coordinate is 1
    let dirs: Vec<Vec<FieldElement>> = (1..v)
        .map(coords)
        .filter(|d| d.iter().find(|x| !x.is_zero()) == Some(&FieldElement::ONE))
        .collect();
    let blocks: Vec<Vec<u32>> = dirs
        .par_iter()
        .flat_map_iter(|d| {
            let field = &field;
            (0..v).filter_map(move |a| {
                let ac = coords(a);
                let line: Vec<u32> = field
                    .elements()
                    .map(|t| {
                        let pt: Vec<FieldElement> = ac
                            .iter()
                            .zip(d)
                            .map(|(&x, &y)| field.add(x, field.mul(t, y)))
                            .collect();
                        index(&pt) as u32
                    })
                    .collect();
                (line.iter().min() == Some(&(a as u32))).then_some(line)
            })
        })
        .collect();
    let group = AbelianGroup::new(&vec![p; n * e as usize])?;
    Design::new(v, qs, 1, blocks, Some(group))
}

/// Pair-to-block lookup for a Steiner 2-design.
#[derive(Clone, Debug)]
pub struct SteinerIndex<'a> {
    design: &'a Design,
    table: Vec<u32>,
}

impl<'a> SteinerIndex<'a> {
    pub fn new(design: &'a Design) -> Result<Self> {
        let v = design.v;
        let mut table = vec![u32::MAX; v * (v - 1) / 2];
        for (i, b) in design.blocks().enumerate() {
            for (s, &x) in b.iter().enumerate() {
                for &y in &b[s + 1..] {
                    let cell = &mut table[pair_index(v, x as usize, y as usize)];
                    if *cell != u32::MAX {
                        return Err(Error::Precondition(format!(
                            "points {x},{y} lie in two blocks"
                        )));
                    }
                    *cell = i as u32;
                }
            }
        }
        if let Some(idx) = table.iter().position(|&c| c == u32::MAX) {
            return Err(Error::Precondition(format!(
                "pair number {idx} lies in no block"
            )));
        }
        Ok(SteinerIndex { design, table })
    }

    /// The block through two distinct points.
    pub fn line(&self, a: u32, b: u32) -> &'a [u32] {
        self.design
            .block(self.table[pair_index(self.design.v, a as usize, b as usize)] as usize)
    }

    /// Least point set containing both blocks and, with any two of its points,
    /// the block through them.
    pub fn closure(&self, b1: &[u32], b2: &[u32]) -> Result<Vec<u32>> {
        let common = b1.iter().filter(|x| b2.contains(x)).count();
        if common != 1 || b1 == b2 {
            return Err(Error::InvalidArgument(format!(
                "closure needs two blocks meeting in exactly one point, they share {common}"
            )));
        }
        let mut member = vec![false; self.design.v];
        let mut list: Vec<u32> = Vec::new();
        for &x in b1.iter().chain(b2) {
            if !std::mem::replace(&mut member[x as usize], true) {
                list.push(x);
            }
        }
        // every pair (list[i], list[j]) with j < i is processed once
        let mut i = 1;
        while i < list.len() {
            for j in 0..i {
                for &z in self.line(list[i], list[j]) {
                    if !std::mem::replace(&mut member[z as usize], true) {
                        list.push(z);
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Ok(list)
    }
}

/// Convenience wrapper building the index each call.
pub fn closure(design: &Design, b1: &[u32], b2: &[u32]) -> Result<Vec<u32>> {
    SteinerIndex::new(design)?.closure(b1, b2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnomalyVerdict {
    /// Two blocks whose closure has `size != p^2` points.
    Anomalous { blocks: (usize, usize), size: usize },
    /// Every scanned pair closed up to exactly `p^2` points.
    Inconclusive { pairs_scanned: usize },
}

impl AnomalyVerdict {
    pub fn is_anomalous(&self) -> bool {
        matches!(self, AnomalyVerdict::Anomalous { .. })
    }
}

pub const DEFAULT_ANOMALY_CAP: usize = 10_000;

/// Scans pairs of blocks through a common point (points ascending, block
/// pairs ascending) and reports the first whose closure is not a plane.
pub fn anomaly_witness(design: &Design, p: u64, cap: usize) -> Result<AnomalyVerdict> {
    let (pp, _) = prime_power(design.v as u64).ok_or(Error::NotPrimePower(design.v as u64))?;
    if design.k as u64 != p || pp != p || design.lambda != 1 {
        return Err(Error::Precondition(format!(
            "expected a 2-(p^n,p,1) design with p = {p}, got v={}, k={}, lambda={}",
            design.v, design.k, design.lambda
        )));
    }
    let index = SteinerIndex::new(design)?;
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); design.v];
    for (i, b) in design.blocks().enumerate() {
        for &x in b {
            through[x as usize].push(i);
        }
    }
    let plane = (p * p) as usize;
    let mut scanned = 0usize;
    for list in &through {
        for (s, &i) in list.iter().enumerate() {
            for &j in &list[s + 1..] {
                if scanned >= cap {
                    return Ok(AnomalyVerdict::Inconclusive {
                        pairs_scanned: scanned,
                    });
                }
                scanned += 1;
                let size = index.closure(design.block(i), design.block(j))?.len();
                if size != plane {
                    return Ok(AnomalyVerdict::Anomalous {
                        blocks: (i, j),
                        size,
                    });
                }
            }
        }
    }
    Ok(AnomalyVerdict::Inconclusive {
        pairs_scanned: scanned,
    })
}

/// `AG(m, p)` with the lines inside `x_{n+1} = ... = x_m = 0` replaced by the
/// blocks of a 2-(p^n,p,1) design on that subspace.
pub fn subspace_replace(m: u32, n: u32, p: u64, inner: &Design) -> Result<Design> {
    if m < n || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need m >= n >= 2, got m={m}, n={n}"
        )));
    }
    let pn = (p as usize).pow(n);
    if inner.v != pn || inner.k as u64 != p || inner.lambda != 1 {
        return Err(Error::Shape(format!(
            "inner design is not a 2-({pn},{p},1) design"
        )));
    }
    if m == n {
        return Ok(inner.clone());
    }
    let ag = ag_design(m, p)?;
    let scale = (p as u32).pow(m - n);
    let inside = |x: u32| x.is_multiple_of(scale);
    let mut blocks: Vec<Vec<u32>> = ag
        .blocks()
        .filter(|b| !b.iter().all(|&x| inside(x)))
        .map(<[u32]>::to_vec)
        .collect();
    blocks.extend(
        inner
            .blocks()
            .map(|b| b.iter().map(|&x| x * scale).collect()),
    );
    Design::new(ag.v, ag.k, 1, blocks, ag.group.clone())
}
