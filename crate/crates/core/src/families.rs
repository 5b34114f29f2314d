//! Strong difference families, relative difference families, partial
//! spreads and difference matrices: verifiers and the explicit constructions
//! (Paley multisets, the Paley-union family over `F_q`, zero-sum difference
//! matrices and the composition of a family with a matrix).

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AbelianGroup, Subgroup};
use crate::analysis::{main_status, MainStatus};
use crate::carrier::Carrier;
use crate::differences::{coverage, delta_block, delta_family, Coverage, CoverageMap, GMultiset};
use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// A block with no repeated element, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet(Vec<usize>);

impl KSet {
    pub fn new(mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Shape(format!(
                "element index {} repeated in a set block",
                w[0]
            )));
        }
        Ok(KSet(elems))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

fn sorted(mut b: Vec<usize>) -> Vec<usize> {
    b.sort_unstable();
    b
}

#[derive(Clone, Debug)]
pub struct SdfVerdict {
    pub is_sdf: bool,
    pub is_additive: bool,
    pub sizes_ok: bool,
    pub coverage: Coverage,
}

/// Checks that `Delta F` covers every element of `group` exactly `lambda`
/// times and all blocks have size `k`; additivity means every block is zero-sum.
pub fn verify_sdf(
    group: &AbelianGroup,
    blocks: &[Vec<usize>],
    k: usize,
    lambda: usize,
) -> Result<SdfVerdict> {
    let sizes_ok = blocks.iter().all(|b| b.len() == k) && k >= 2;
    let delta = if k >= 2 && sizes_ok {
        delta_family(group, blocks)?
    } else {
        let mut d = GMultiset::new(group);
        for b in blocks.iter().filter(|b| b.len() >= 2) {
            d.merge(&delta_block(group, b)?);
        }
        d
    };
    let coverage = coverage(&delta, None);
    let is_additive = blocks.iter().all(|b| group.sum(b.iter().copied()) == 0);
    Ok(SdfVerdict {
        is_sdf: sizes_ok && coverage.is_constant(lambda),
        is_additive,
        sizes_ok,
        coverage,
    })
}

/// A verified `(G, k, lambda)`-SDF. Blocks are sorted multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDifferenceFamily {
    carrier: Carrier,
    k: usize,
    lambda: usize,
    blocks: Vec<Vec<usize>>,
}

impl StrongDifferenceFamily {
    pub fn new(carrier: Carrier, k: usize, lambda: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks: Vec<Vec<usize>> = blocks.into_iter().map(sorted).collect();
        let v = verify_sdf(carrier.flat(), &blocks, k, lambda)?;
        if !v.is_sdf {
            return Err(Error::NotVerified(format!(
                "blocks do not form a ({},{k},{lambda})-SDF",
                carrier.order()
            )));
        }
        Ok(StrongDifferenceFamily {
            carrier,
            k,
            lambda,
            blocks,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn group(&self) -> &AbelianGroup {
        self.carrier.flat()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_additive(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| self.group().sum(b.iter().copied()) == 0)
    }

    /// `m` copies of every block: a `(G, k, m*lambda)`-SDF.
    pub fn repeated(&self, m: usize) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() * m);
        for _ in 0..m {
            blocks.extend(self.blocks.iter().cloned());
        }
        StrongDifferenceFamily {
            carrier: self.carrier.clone(),
            k: self.k,
            lambda: self.lambda * m,
            blocks,
        }
    }
}

/// Subgroups of a common parent with pairwise trivial intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSpread {
    parent: AbelianGroup,
    members: Vec<Subgroup>,
}

impl PartialSpread {
    pub fn new(parent: &AbelianGroup, members: Vec<Subgroup>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if m.parent() != parent {
                return Err(Error::CarrierMismatch(format!(
                    "spread member {i} lives in another group"
                )));
            }
            for (j, other) in members[..i].iter().enumerate() {
                if let Some(&x) = m.elements().iter().find(|&&x| x != 0 && other.contains(x)) {
                    return Err(Error::NotASubgroup(format!(
                        "spread members {j} and {i} share {}",
                        parent.display(x)
                    )));
                }
            }
        }
        Ok(PartialSpread {
            parent: parent.clone(),
            members,
        })
    }

    pub fn single(h: Subgroup) -> Self {
        PartialSpread {
            parent: h.parent().clone(),
            members: vec![h],
        }
    }

    pub fn empty(parent: &AbelianGroup) -> Self {
        PartialSpread {
            parent: parent.clone(),
            members: Vec::new(),
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    /// Membership mask of the union of the members.
    pub fn union_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for m in &self.members {
            for &x in m.elements() {
                mask[x] = true;
            }
        }
        mask
    }

    pub fn union_size(&self) -> usize {
        self.union_mask().iter().filter(|&&b| b).count()
    }
}

#[derive(Clone, Debug)]
pub struct RdfVerdict {
    pub is_rdf: bool,
    pub is_additive: bool,
    pub sizes_ok: bool,
    pub sets_ok: bool,
    pub expected_blocks: Option<usize>,
    pub block_count_ok: bool,
    pub coverage: Coverage,
}

/// Checks that `Delta F` covers everything outside the union of the spread
/// exactly `lambda` times and the union not at all. Additive means every base
/// block and every spread member is zero-sum.
pub fn verify_rdf(
    group: &AbelianGroup,
    blocks: &[Vec<usize>],
    forbidden: &PartialSpread,
    k: usize,
    lambda: usize,
) -> Result<RdfVerdict> {
    if forbidden.parent() != group {
        return Err(Error::CarrierMismatch(
            "forbidden spread lives in another group".into(),
        ));
    }
    let sizes_ok = k >= 2 && blocks.iter().all(|b| b.len() == k);
    let sets_ok = blocks.iter().all(|b| {
        let s = sorted(b.clone());
        s.windows(2).all(|w| w[0] != w[1])
    });
    let mut delta = GMultiset::new(group);
    if sizes_ok {
        delta = delta_family(group, blocks)?;
    } else {
        for b in blocks.iter().filter(|b| b.len() >= 2) {
            delta.merge(&delta_block(group, b)?);
        }
    }
    let mask = forbidden.union_mask();
    let coverage = coverage(&delta, Some(&mask));
    let outside = group.order() - forbidden.union_size();
    let per_block = k * k.saturating_sub(1);
    let expected_blocks = (per_block > 0 && (lambda * outside).is_multiple_of(per_block))
        .then(|| lambda * outside / per_block);
    let block_count_ok = expected_blocks == Some(blocks.len());
    let is_additive = blocks.iter().all(|b| group.sum(b.iter().copied()) == 0)
        && forbidden.members().iter().all(|h| h.is_zero_sum());
    Ok(RdfVerdict {
        is_rdf: sizes_ok && sets_ok && coverage.is_constant(lambda) && block_count_ok,
        is_additive,
        sizes_ok,
        sets_ok,
        expected_blocks,
        block_count_ok,
        coverage,
    })
}

/// A verified `(G, H, k, lambda)` difference family relative to a partial spread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeDifferenceFamily {
    carrier: Carrier,
    forbidden: PartialSpread,
    k: usize,
    lambda: usize,
    blocks: Vec<KSet>,
}

impl RelativeDifferenceFamily {
    pub fn new(
        carrier: Carrier,
        forbidden: PartialSpread,
        k: usize,
        lambda: usize,
        blocks: Vec<KSet>,
    ) -> Result<Self> {
        let raw: Vec<Vec<usize>> = blocks.iter().map(|b| b.as_slice().to_vec()).collect();
        let v = verify_rdf(carrier.flat(), &raw, &forbidden, k, lambda)?;
        if !v.is_rdf {
            return Err(Error::NotVerified(format!(
                "blocks do not form a relative ({},{k},{lambda}) difference family",
                carrier.order()
            )));
        }
        Ok(RelativeDifferenceFamily {
            carrier,
            forbidden,
            k,
            lambda,
            blocks,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn group(&self) -> &AbelianGroup {
        self.carrier.flat()
    }

    pub fn forbidden(&self) -> &PartialSpread {
        &self.forbidden
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn blocks(&self) -> &[KSet] {
        &self.blocks
    }

    pub fn raw_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.as_slice().to_vec()).collect()
    }

    pub fn verdict(&self) -> RdfVerdict {
        verify_rdf(
            self.group(),
            &self.raw_blocks(),
            &self.forbidden,
            self.k,
            self.lambda,
        )
        .expect("carrier and spread agree")
    }

    pub fn is_additive(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| self.group().sum(b.as_slice().iter().copied()) == 0)
            && self.forbidden.members().iter().all(|h| h.is_zero_sum())
    }
}

/// The four necessary conditions for a `(v, {k^s}, k, 1)`-DF.
#[derive(Clone, Debug, Serialize)]
pub struct SpreadConditions {
    pub v: u64,
    pub k: u64,
    pub s: u64,
    pub k_divides_v: bool,
    pub quotient_mod_k_minus_1: Option<u64>,
    pub quotient_ok: bool,
    pub s_mod_k: u64,
    pub s_ok: bool,
    pub involutions: u64,
    pub max_involutions_per_member: u64,
    pub involutions_coverable: bool,
}

impl SpreadConditions {
    pub fn all_pass(&self) -> bool {
        self.k_divides_v && self.quotient_ok && self.s_ok && self.involutions_coverable
    }
}

/// Reports `k | v`, `v/k = 1 (mod k-1)`, `s = 1 (mod k)` and whether the
/// involutions of `G` can fit inside `s` subgroups of order `k` (each holds at
/// most `min(|I(G)|, 2^{v_2(k)}) - 1` involutions, none when `k` is odd).
pub fn spread_conditions(group: &AbelianGroup, k: u64, s: u64) -> SpreadConditions {
    let v = group.order() as u64;
    let k_divides_v = k > 0 && v.is_multiple_of(k);
    let quotient_mod_k_minus_1 = if k_divides_v && k > 1 {
        Some((v / k) % (k - 1))
    } else {
        None
    };
    let quotient_ok = match quotient_mod_k_minus_1 {
        Some(r) => r == 1 % (k - 1),
        None => false,
    };
    let s_mod_k = if k > 0 { s % k } else { 0 };
    let s_ok = k > 0 && s_mod_k == 1 % k;
    let i_g = group.involution_subgroup().subgroup.order() as u64;
    let two_part = if k == 0 {
        1
    } else {
        1u64 << k.trailing_zeros()
    };
    let per_member = two_part.min(i_g) - 1;
    let involutions = i_g - 1;
    SpreadConditions {
        v,
        k,
        s,
        k_divides_v,
        quotient_mod_k_minus_1,
        quotient_ok,
        s_mod_k,
        s_ok,
        involutions,
        max_involutions_per_member: per_member,
        involutions_coverable: involutions <= s.saturating_mul(per_member),
    }
}

/// The `(q, q, q-1)` Paley difference multiset `{0} u 2*squares` over the
/// additive group of `F_q`.
pub fn paley_sdf(q: u64) -> Result<StrongDifferenceFamily> {
    let field = field_of_order(q)?;
    if q.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Paley multisets need odd q, got {q}"
        )));
    }
    let mut block = vec![0usize];
    for s in field.nonzero_squares()? {
        block.push(s.id());
        block.push(s.id());
    }
    StrongDifferenceFamily::new(
        Carrier::Group(field.additive_group()),
        q as usize,
        q as usize - 1,
        vec![block],
    )
}

pub(crate) fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, n) = crate::algebra::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FiniteField::new(p, n, None)
}

#[derive(Clone, Debug)]
pub struct DmVerdict {
    pub is_dm: bool,
    pub is_additive: bool,
    pub column_count_ok: bool,
    /// First row pair `(i, j)` and element whose coverage differs from `mu`.
    pub failure: Option<(usize, usize, usize)>,
}

/// Row-pair coverage check of a `k x (mu |H|)` matrix given by columns.
pub fn verify_dm(
    group: &AbelianGroup,
    columns: &[Vec<usize>],
    k: usize,
    mu: usize,
) -> Result<DmVerdict> {
    if let Some(c) = columns.iter().position(|c| c.len() != k) {
        return Err(Error::Shape(format!(
            "column {c} has {} entries, expected {k}",
            columns[c].len()
        )));
    }
    if let Some(&x) = columns
        .iter()
        .flatten()
        .find(|&&x| !group.contains_index(x))
    {
        return Err(Error::InvalidElement(format!(
            "entry index {x} outside {group}"
        )));
    }
    let column_count_ok = columns.len() == mu * group.order();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let failure = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let mut counts = vec![0usize; group.order()];
            for c in columns {
                counts[group.sub(c[i], c[j])] += 1;
            }
            counts.iter().position(|&n| n != mu).map(|x| (i, j, x))
        })
        .min();
    let is_additive = columns.iter().all(|c| group.sum(c.iter().copied()) == 0);
    Ok(DmVerdict {
        is_dm: column_count_ok && failure.is_none(),
        is_additive,
        column_count_ok,
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceMatrix {
    group: AbelianGroup,
    k: usize,
    mu: usize,
    columns: Vec<Vec<usize>>,
}

impl DifferenceMatrix {
    pub fn new(
        group: &AbelianGroup,
        k: usize,
        mu: usize,
        columns: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let v = verify_dm(group, &columns, k, mu)?;
        if !v.is_dm {
            return Err(Error::NotVerified(format!(
                "not a ({},{k},{mu}) difference matrix",
                group.order()
            )));
        }
        Ok(DifferenceMatrix {
            group: group.clone(),
            k,
            mu,
            columns,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn is_additive(&self) -> bool {
        self.columns
            .iter()
            .all(|c| self.group.sum(c.iter().copied()) == 0)
    }
}

/// All zero-sum `k`-tuples over `H` as columns, lexicographic; a
/// `(|H|, k, |H|^{k-2})`-DM. Refuses when `|H|^{k-1}` exceeds `cap`.
pub fn zero_sum_dm(group: &AbelianGroup, k: usize, cap: u128) -> Result<DifferenceMatrix> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "a difference matrix needs at least 2 rows".into(),
        ));
    }
    let h = group.order() as u128;
    let required = h.checked_pow(k as u32 - 1).unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::CapExceeded { required, cap });
    }
    let n = group.order();
    let mut columns = Vec::with_capacity(required as usize);
    let mut prefix = vec![0usize; k - 1];
    loop {
        let s = group.sum(prefix.iter().copied());
        let mut col = prefix.clone();
        col.push(group.neg(s));
        columns.push(col);
        // next prefix in lexicographic order
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                let mu = (h.pow(k as u32 - 2)) as usize;
                return Ok(DifferenceMatrix {
                    group: group.clone(),
                    k,
                    mu,
                    columns,
                });
            }
            pos -= 1;
            prefix[pos] += 1;
            if prefix[pos] < n {
                break;
            }
            prefix[pos] = 0;
        }
    }
}

/// `Sigma o M`: every block paired entrywise with every column. A
/// `(G x H, k, lambda mu)`-SDF; additive when both inputs are.
pub fn jungnickel_compose(
    sdf: &StrongDifferenceFamily,
    dm: &DifferenceMatrix,
) -> Result<StrongDifferenceFamily> {
    if sdf.k() != dm.k() {
        return Err(Error::InvalidArgument(format!(
            "block size {} does not match {} matrix rows",
            sdf.k(),
            dm.k()
        )));
    }
    let g = sdf.group();
    let h = dm.group();
    let product = g.product(h);
    let hn = h.order();
    let mut blocks = Vec::with_capacity(sdf.blocks().len() * dm.columns().len());
    for b in sdf.blocks() {
        for c in dm.columns() {
            blocks.push(b.iter().zip(c).map(|(&x, &y)| x * hn + y).collect());
        }
    }
    StrongDifferenceFamily::new(
        Carrier::Group(product),
        sdf.k(),
        sdf.lambda() * dm.mu(),
        blocks,
    )
}

/// The family `{A, B, ..., B}` over `F_q` built from `r` copies of the Paley
/// multiset (`A`) and `r` copies of the whole field (`B`, repeated `r - 1`
/// times), together with the multiplicity maps of `Delta A`, `Delta B` and
/// `Delta Sigma`.
#[derive(Clone, Debug)]
pub struct PaleyUnion {
    pub k: u64,
    pub q: u64,
    pub r: u64,
    pub field: Arc<FiniteField>,
    pub sdf: StrongDifferenceFamily,
    pub alpha: CoverageMap,
    pub beta: CoverageMap,
    pub sigma: CoverageMap,
}

/// Closed forms `(alpha(0), alpha(x), beta(0), beta(x), sigma)` for given `q, r`.
pub fn paley_union_closed_forms(q: u64, r: u64) -> (u64, u64, u64, u64, u64) {
    (
        (2 * q - 1) * r * r - q * r,
        (q - 1) * r * r,
        q * r * (r - 1),
        q * r * r,
        (q * r - 1) * r * r,
    )
}

impl PaleyUnion {
    /// True iff every brute-force multiplicity equals its closed form.
    pub fn matches_closed_forms(&self) -> bool {
        let (a0, ax, b0, bx, s) = paley_union_closed_forms(self.q, self.r);
        let check = |m: &CoverageMap, zero: u64, other: u64| {
            m.counts()
                .iter()
                .enumerate()
                .all(|(x, &c)| c as u64 == if x == 0 { zero } else { other })
        };
        check(&self.alpha, a0, ax)
            && (self.r == 1 || check(&self.beta, b0, bx))
            && check(&self.sigma, s, s)
    }
}

/// `q` = largest odd prime-power factor of `k`, `r = k / q`.
pub fn split_block_size(k: u64) -> (u64, u64) {
    let q = crate::algebra::factorize(k)
        .into_iter()
        .filter(|&(p, _)| p != 2)
        .map(|(p, e)| p.pow(e))
        .max()
        .unwrap_or(1);
    (q, k / q)
}

/// The additive `(q, k, (k-1) r^2)`-SDF over `F_q` for `k` neither a prime
/// power, nor singly even, nor of the form `2^n 3`.
pub fn paley_union_sdf(k: u64) -> Result<PaleyUnion> {
    let status = main_status(k)?;
    if status != MainStatus::Constructible {
        return Err(Error::Precondition(format!(
            "k = {k} is classified {status}, not constructible"
        )));
    }
    let (q, r) = split_block_size(k);
    let field = Arc::new(field_of_order(q)?);
    let group = field.additive_group();
    let squares = field.nonzero_squares()?;
    let mut a = vec![0usize; r as usize];
    for s in &squares {
        for _ in 0..2 * r {
            a.push(s.id());
        }
    }
    let b: Vec<usize> = (0..q as usize)
        .flat_map(|x| std::iter::repeat_n(x, r as usize))
        .collect();
    let mut blocks = vec![a.clone()];
    for _ in 1..r {
        blocks.push(b.clone());
    }
    let lambda = ((k - 1) * r * r) as usize;
    let alpha = CoverageMap::of(&delta_block(&group, &a)?);
    let beta = CoverageMap::of(&delta_block(&group, &b)?);
    let sigma = CoverageMap::of(&delta_family(&group, &blocks)?);
    let sdf = StrongDifferenceFamily::new(Carrier::Group(group), k as usize, lambda, blocks)?;
    Ok(PaleyUnion {
        k,
        q,
        r,
        field,
        sdf,
        alpha,
        beta,
        sigma,
    })
}
