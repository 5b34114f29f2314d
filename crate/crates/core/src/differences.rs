//! Multisets over group elements and their lists of differences.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::AbelianGroup;
use crate::error::{Error, Result};

/// A multiset on a group: element index -> multiplicity (always >= 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMultiset {
    group: AbelianGroup,
    counts: BTreeMap<usize, usize>,
}

impl GMultiset {
    pub fn new(group: &AbelianGroup) -> Self {
        GMultiset {
            group: group.clone(),
            counts: BTreeMap::new(),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(
        group: &AbelianGroup,
        elems: I,
    ) -> Result<Self> {
        let mut m = Self::new(group);
        for x in elems {
            if !group.contains_index(x) {
                return Err(Error::InvalidElement(format!("index {x} outside {group}")));
            }
            m.insert(x, 1);
        }
        Ok(m)
    }

    pub fn insert(&mut self, x: usize, mult: usize) {
        if mult > 0 {
            *self.counts.entry(x).or_insert(0) += mult;
        }
    }

    /// Multiset union.
    pub fn merge(&mut self, other: &GMultiset) {
        for (&x, &m) in &other.counts {
            self.insert(x, m);
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn multiplicity(&self, x: usize) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    /// Distinct elements with their multiplicities, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&x, &m)| (x, m))
    }

    /// Sorted element list with repeats.
    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.counts
            .iter()
            .flat_map(|(&x, &m)| std::iter::repeat_n(x, m))
            .collect()
    }

    pub fn is_set(&self) -> bool {
        self.counts.values().all(|&m| m == 1)
    }

    /// Sum counting multiplicities.
    pub fn sum(&self) -> usize {
        self.group.sum(self.to_sorted_vec())
    }

    pub fn is_zero_sum(&self) -> bool {
        self.sum() == 0
    }
}

/// `Delta B`: all `b_i - b_j` over ordered pairs of distinct positions.
pub fn delta_block(group: &AbelianGroup, block: &[usize]) -> Result<GMultiset> {
    if block.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "list of differences needs at least 2 elements, got {}",
            block.len()
        )));
    }
    let mut out = GMultiset::new(group);
    for (i, &a) in block.iter().enumerate() {
        if !group.contains_index(a) {
            return Err(Error::InvalidElement(format!("index {a} outside {group}")));
        }
        for (j, &b) in block.iter().enumerate() {
            if i != j {
                out.insert(group.sub(a, b), 1);
            }
        }
    }
    Ok(out)
}

/// Multiset union of the per-block lists of differences.
pub fn delta_family(group: &AbelianGroup, blocks: &[Vec<usize>]) -> Result<GMultiset> {
    let parts: Vec<GMultiset> = blocks
        .par_iter()
        .map(|b| delta_block(group, b))
        .collect::<Result<_>>()?;
    let mut out = GMultiset::new(group);
    for p in &parts {
        out.merge(p);
    }
    Ok(out)
}

/// Multiplicity of every element of the carrier, zeros included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMap {
    counts: Vec<usize>,
    total: usize,
}

impl CoverageMap {
    pub fn of(delta: &GMultiset) -> Self {
        let mut counts = vec![0usize; delta.group().order()];
        for (x, m) in delta.iter() {
            counts[x] = m;
        }
        CoverageMap {
            total: delta.size(),
            counts,
        }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, x: usize) -> usize {
        self.counts[x]
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

/// Coverage verdict of a list of differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub map: CoverageMap,
    /// The common multiplicity outside the excluded set when it is constant
    /// and every excluded element is uncovered. `None` when the multiplicities
    /// differ, an excluded element is hit, or nothing lies outside the
    /// excluded set.
    pub constant_lambda: Option<usize>,
    pub excluded_clean: bool,
    /// First element (outside the excluded set) whose multiplicity differs
    /// from the first one seen, or first covered excluded element.
    pub witness: Option<usize>,
    excluded: Vec<bool>,
}

impl Coverage {
    /// True iff everything outside the excluded set is hit exactly `lambda`
    /// times and nothing inside it is hit. Vacuously true when the excluded
    /// set is the whole carrier.
    pub fn is_constant(&self, lambda: usize) -> bool {
        self.excluded_clean
            && self
                .map
                .counts
                .iter()
                .zip(&self.excluded)
                .all(|(&c, &ex)| ex || c == lambda)
    }

    pub fn is_excluded(&self, x: usize) -> bool {
        self.excluded[x]
    }
}

/// Coverage of `delta` over its carrier, with an optional excluded mask.
pub fn coverage(delta: &GMultiset, excluded: Option<&[bool]>) -> Coverage {
    let map = CoverageMap::of(delta);
    let n = map.counts.len();
    let mask: Vec<bool> = match excluded {
        Some(m) => {
            assert_eq!(m.len(), n, "excluded mask must cover the carrier");
            m.to_vec()
        }
        None => vec![false; n],
    };
    let mut excluded_clean = true;
    let mut witness = None;
    let mut first: Option<usize> = None;
    let mut uniform = true;
    for (x, (&c, &masked)) in map.counts.iter().zip(&mask).enumerate() {
        if masked {
            if c != 0 && excluded_clean {
                excluded_clean = false;
                witness.get_or_insert(x);
            }
        } else {
            match first {
                None => first = Some(c),
                Some(f) if f != c => {
                    if uniform {
                        witness.get_or_insert(x);
                    }
                    uniform = false;
                }
                _ => {}
            }
        }
    }
    let constant_lambda = if uniform && excluded_clean {
        first
    } else {
        None
    };
    Coverage {
        map,
        constant_lambda,
        excluded_clean,
        witness,
        excluded: mask,
    }
}

/// `Delta F = U_g {g} x Delta_g` for a product carrier with second factor of
/// order `q`: groups the multiset by first coordinate, yielding for every
/// `g` the second coordinates (as additive ids) with multiplicities.
pub fn split_by_first(delta: &GMultiset, q: usize) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut out: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, m) in delta.iter() {
        out.entry(x / q).or_default().push((x % q, m));
    }
    out
}
