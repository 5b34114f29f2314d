//! Turning liftings into relative difference families: multiplier sets,
//! expansion to an extension field, the zero-sum translate, and the simple
//! lifting by one fixed zero-sum set.

use std::sync::Arc;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::families::{
    verify_rdf, KSet, PartialSpread, RdfVerdict, RelativeDifferenceFamily, StrongDifferenceFamily,
};
use crate::gf::{FieldElement, FiniteField, SubfieldEmbedding, SubgroupSpec};

use super::cyclotomic::signed_shape;
use super::{Lifting, Strategy};

/// A set of nonzero field elements used to multiply second coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierSet {
    field: Arc<FiniteField>,
    elements: Vec<FieldElement>,
}

impl MultiplierSet {
    pub fn new(field: Arc<FiniteField>, elements: Vec<FieldElement>) -> Result<Self> {
        if elements.iter().any(|x| x.is_zero() || !field.contains(*x)) {
            return Err(Error::InvalidElement(
                "multipliers must be nonzero field elements".into(),
            ));
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated multiplier".into()));
        }
        Ok(MultiplierSet { field, elements })
    }

    pub fn from_spec(field: Arc<FiniteField>, spec: SubgroupSpec) -> Result<Self> {
        let elements = field.coset_reps(spec)?;
        MultiplierSet::new(field, elements)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Result of multiplying a lifting by `M`.
#[derive(Clone, Debug)]
pub struct MultiplierOutcome {
    /// First `g` for which `Delta_g . M` is not `lambda_out` times `F_q^*`.
    pub failing_g: Option<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub verdict: RdfVerdict,
    pub family: Option<RelativeDifferenceFamily>,
}

impl MultiplierOutcome {
    pub fn is_valid(&self) -> bool {
        self.failing_g.is_none() && self.family.is_some()
    }
}

/// `{l(B_h) o m}` with `|M| = (q-1)/lambda`; a `(G x F_q, G x {0}, k, 1)`-DF
/// exactly when every `Delta_g . M = F_q^*`.
pub fn apply_multipliers(lifting: &Lifting, m: &MultiplierSet) -> Result<MultiplierOutcome> {
    apply_multipliers_with(lifting, m, 1)
}

/// As [`apply_multipliers`] with target multiplicity `lambda_out`:
/// requires `|M| lambda = lambda_out (q - 1)`.
pub fn apply_multipliers_with(
    lifting: &Lifting,
    m: &MultiplierSet,
    lambda_out: usize,
) -> Result<MultiplierOutcome> {
    let field = lifting.field();
    if m.field().as_ref() != field.as_ref() {
        return Err(Error::CarrierMismatch(
            "multipliers live in another field".into(),
        ));
    }
    let q1 = field.order() as usize - 1;
    let lambda = lifting.sdf().lambda();
    if m.len() * lambda != lambda_out * q1 {
        return Err(Error::InvalidArgument(format!(
            "|M| = {} but {} is required for lambda {lambda}",
            m.len(),
            (lambda_out * q1) / lambda.max(1)
        )));
    }
    let mut failing_g = None;
    for (g, d) in lifting.differences().iter().enumerate() {
        let mut counts = vec![0usize; q1 + 1];
        for &x in d {
            for &y in m.elements() {
                counts[field.mul(x, y).id()] += 1;
            }
        }
        if counts[0] != 0 || counts[1..].iter().any(|&c| c != lambda_out) {
            failing_g = Some(g);
            break;
        }
    }
    let carrier = lifting.carrier()?;
    let q = field.order() as usize;
    let mut blocks = Vec::with_capacity(lifting.second().len() * m.len());
    for (b, l) in lifting.sdf().blocks().iter().zip(lifting.second()) {
        for &y in m.elements() {
            let mut nb: Vec<usize> = b
                .iter()
                .zip(l)
                .map(|(&g, &x)| g * q + field.mul(x, y).id())
                .collect();
            nb.sort_unstable();
            blocks.push(nb);
        }
    }
    let spread = PartialSpread::single(carrier.base_subgroup()?);
    let verdict = verify_rdf(
        carrier.flat(),
        &blocks,
        &spread,
        lifting.sdf().k(),
        lambda_out,
    )?;
    let family = if verdict.is_rdf {
        let sets = blocks
            .iter()
            .map(|b| KSet::new(b.clone()))
            .collect::<Result<Vec<_>>>()?;
        Some(RelativeDifferenceFamily::new(
            carrier,
            spread,
            lifting.sdf().k(),
            lambda_out,
            sets,
        )?)
    } else {
        None
    };
    Ok(MultiplierOutcome {
        failing_g,
        blocks,
        verdict,
        family,
    })
}

fn require_base_forbidden(rdf: &RelativeDifferenceFamily) -> Result<Arc<FiniteField>> {
    let field = rdf.carrier().require_field()?.clone();
    let base = rdf.carrier().base_subgroup()?;
    match rdf.forbidden().members() {
        [h] if *h == base => Ok(field),
        _ => Err(Error::Precondition(
            "the family must be relative to G x {0}".into(),
        )),
    }
}

/// `F o S` with `S` a system of representatives of `F_q^*` in
/// `F_{q^n}^*`: a family over `G x F_{q^n}` with `|S|` times as many blocks.
pub fn extend_field(rdf: &RelativeDifferenceFamily, n: u32) -> Result<RelativeDifferenceFamily> {
    let field = require_base_forbidden(rdf)?;
    if n == 0 {
        return Err(Error::InvalidArgument("extension degree 0".into()));
    }
    if n == 1 {
        return Ok(rdf.clone());
    }
    let degree = field
        .degree()
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidArgument("extension degree overflow".into()))?;
    let big = Arc::new(FiniteField::new(field.characteristic(), degree, None)?);
    let emb = SubfieldEmbedding::new(&big, &field)?;
    let reps = big.coset_reps(SubgroupSpec::SubfieldUnits {
        degree: field.degree(),
    })?;
    let base = rdf.carrier().base().clone();
    let carrier = Carrier::product(base, big.clone())?;
    let mut blocks = Vec::with_capacity(rdf.blocks().len() * reps.len());
    for b in rdf.blocks() {
        for &s in &reps {
            let nb: Vec<usize> = b
                .as_slice()
                .iter()
                .map(|&x| {
                    let (g, y) = rdf.carrier().split(x);
                    carrier.pair(g, big.mul(emb.apply(y), s))
                })
                .collect();
            blocks.push(KSet::new(nb)?);
        }
    }
    let spread = PartialSpread::single(carrier.base_subgroup()?);
    RelativeDifferenceFamily::new(carrier, spread, rdf.k(), rdf.lambda(), blocks)
}

/// `B' = B + (0, -sigma_B / k)` for every block, making the second
/// coordinates zero-sum. Needs `k` invertible in the field.
pub fn zero_sum_adjust(rdf: &RelativeDifferenceFamily) -> Result<RelativeDifferenceFamily> {
    let field = require_base_forbidden(rdf)?;
    let k = rdf.k();
    if (k as u64).is_multiple_of(field.characteristic()) {
        return Err(Error::Precondition(format!(
            "k = {k} is zero in a field of characteristic {}",
            field.characteristic()
        )));
    }
    let k_inv = field.inv(field.from_int(k as i64))?;
    let c = rdf.carrier();
    let mut blocks = Vec::with_capacity(rdf.blocks().len());
    for b in rdf.blocks() {
        let sigma = b
            .as_slice()
            .iter()
            .fold(FieldElement::ZERO, |acc, &x| field.add(acc, c.split(x).1));
        let shift = field.neg(field.mul(sigma, k_inv));
        let nb: Vec<usize> = b
            .as_slice()
            .iter()
            .map(|&x| {
                let (g, y) = c.split(x);
                c.pair(g, field.add(y, shift))
            })
            .collect();
        blocks.push(KSet::new(nb)?);
    }
    RelativeDifferenceFamily::new(c.clone(), rdf.forbidden().clone(), k, rdf.lambda(), blocks)
}

fn default_zero_sum_set(field: &FiniteField, k: usize) -> Result<Vec<FieldElement>> {
    let q = field.order() as usize;
    if k > q {
        return Err(Error::Precondition(format!("no {k}-subset of GF({q})")));
    }
    let sum = |s: &[FieldElement]| s.iter().fold(FieldElement::ZERO, |a, &x| field.add(a, x));
    // one exchange x -> x - sum(S) fixes the sum unless S is stable under it
    let fix = |s: &[FieldElement]| -> Option<Vec<FieldElement>> {
        let t = sum(s);
        if t.is_zero() {
            return Some(s.to_vec());
        }
        s.iter().enumerate().find_map(|(i, &x)| {
            let y = field.sub(x, t);
            (!s.contains(&y)).then(|| {
                let mut out = s.to_vec();
                out[i] = y;
                out
            })
        })
    };
    let start: Vec<FieldElement> = (0..k).map(|i| FieldElement(i as u32)).collect();
    if let Some(s) = fix(&start) {
        return Ok(s);
    }
    for i in 0..k {
        for y in (k..q).map(|y| FieldElement(y as u32)) {
            let mut s = start.clone();
            s[i] = y;
            if let Some(out) = fix(&s) {
                return Ok(out);
            }
        }
    }
    Err(Error::NoSolution {
        deepest: k,
        empty_set: "zero-sum k-subset".into(),
    })
}

fn default_symmetric_set(field: &FiniteField, k: usize) -> Result<Vec<FieldElement>> {
    let m = (k - 1) / 2;
    if 2 * m + 1 != k || m as u64 > (field.order() - 1) / 2 {
        return Err(Error::Precondition(format!(
            "no symmetric {k}-subset of GF({})",
            field.order()
        )));
    }
    let mut out = vec![FieldElement::ZERO];
    for i in 0..m as u64 {
        let y = field.exp(i);
        out.push(y);
        out.push(field.neg(y));
    }
    Ok(out)
}

/// Lifts every block positionally by one zero-sum `k`-set `L` and multiplies
/// by all of `F_q^*` (unsigned, multiplicity `lambda`), or, for blocks
/// `{0} u 2A` and `L = {0} u +-Y`, by representatives of `{1,-1}` in
/// `F_q^*` (signed, multiplicity `lambda/2`).
pub fn simple_lift(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    set: Option<&[FieldElement]>,
    signed: bool,
) -> Result<(Lifting, RelativeDifferenceFamily)> {
    let k = sdf.k();
    let q = field.order();
    if q <= k as u64 {
        return Err(Error::Precondition(format!("q = {q} must exceed k = {k}")));
    }
    if !sdf.is_additive() {
        return Err(Error::Precondition("the family is not additive".into()));
    }
    let l: Vec<FieldElement> = match set {
        Some(s) => s.to_vec(),
        None if signed => default_symmetric_set(&field, k)?,
        None => default_zero_sum_set(&field, k)?,
    };
    if l.len() != k {
        return Err(Error::Shape(format!(
            "L has {} elements, expected {k}",
            l.len()
        )));
    }
    let mut sorted = l.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Shape("L repeats an element".into()));
    }
    if !l
        .iter()
        .fold(FieldElement::ZERO, |a, &x| field.add(a, x))
        .is_zero()
    {
        return Err(Error::Precondition("L is not zero-sum".into()));
    }
    let (second, multipliers, lambda_out) = if signed {
        if sdf.lambda() % 2 == 1 {
            return Err(Error::Precondition(
                "signed lifting needs an even lambda".into(),
            ));
        }
        if !l.contains(&FieldElement::ZERO) {
            return Err(Error::Shape("a symmetric L must contain 0".into()));
        }
        let ys: Vec<FieldElement> = {
            let mut seen: Vec<FieldElement> = Vec::new();
            for &x in &l {
                if x.is_zero() || seen.contains(&field.neg(x)) {
                    continue;
                }
                if !l.contains(&field.neg(x)) {
                    return Err(Error::Shape("L is not closed under negation".into()));
                }
                seen.push(x);
            }
            seen
        };
        let mut second = Vec::with_capacity(sdf.blocks().len());
        for b in sdf.blocks() {
            let shape = signed_shape(b)?;
            let mut row = vec![FieldElement::ZERO; k];
            for (&(_, i, j), &y) in shape.pairs.iter().zip(&ys) {
                row[i] = y;
                row[j] = field.neg(y);
            }
            second.push(row);
        }
        let m = MultiplierSet::from_spec(field.clone(), SubgroupSpec::PlusMinusOneIn(1))?;
        (second, m, sdf.lambda() / 2)
    } else {
        let second = sdf.blocks().iter().map(|_| l.clone()).collect();
        let all: Vec<FieldElement> = field.nonzero_elements().collect();
        (
            second,
            MultiplierSet::new(field.clone(), all)?,
            sdf.lambda(),
        )
    };
    let lifting = Lifting::new(sdf.clone(), field, second, Strategy::Simple)?;
    let out = apply_multipliers_with(&lifting, &multipliers, lambda_out)?;
    if let Some(g) = out.failing_g {
        return Err(Error::NotVerified(format!(
            "Delta_g . M is not uniform at {}",
            sdf.group().display(g)
        )));
    }
    let family = out.family.ok_or_else(|| {
        Error::NotVerified("multiplied blocks do not form a relative family".into())
    })?;
    Ok((lifting, family))
}
