//! Cyclotomic liftings: the greedy one prescribing the class of every
//! difference, the zero-sum variant that fixes the last four coordinates with
//! care, and the signed one lifting `{0} u 2A` to `{(0,0)} u {(a, +-y_a)}`.

use std::sync::Arc;

use log::{debug, info};
use rayon::prelude::*;

use super::psi::PsiAssignment;
use super::search::{backtrack, order_candidates, Budget, Level, SearchStats};
use super::{check_class_condition, Lifting, Strategy};
use crate::error::{Error, Result};
use crate::families::StrongDifferenceFamily;
use crate::gf::{ClassTable, FieldElement, FiniteField};

fn require_congruence(field: &FiniteField, lambda: u64) -> Result<()> {
    let q = field.order();
    if field.characteristic() == 2 || lambda == 0 || q % (2 * lambda) != (lambda + 1) % (2 * lambda)
    {
        return Err(Error::Precondition(format!(
            "q = {q} is not congruent to lambda + 1 = {} modulo 2 lambda = {}",
            lambda + 1,
            2 * lambda
        )));
    }
    Ok(())
}

fn check_psi_shape(sdf: &StrongDifferenceFamily, psi: &PsiAssignment) -> Result<()> {
    if psi.blocks() != sdf.blocks().len() || psi.k() != sdf.k() {
        return Err(Error::Shape("psi does not match the family".into()));
    }
    Ok(())
}

fn x_level(
    field: &FiniteField,
    table: &ClassTable,
    constraints: &[(FieldElement, u64)],
    seed: Option<u64>,
    name: String,
) -> Result<Level> {
    let mut values = field.x_set_with(table, constraints)?;
    order_candidates(field, &mut values, seed);
    Ok(Level { values, name })
}

fn block_seed(seed: Option<u64>, h: usize) -> Option<u64> {
    seed.map(|s| super::search::splitmix(s ^ (h as u64 + 1)))
}

fn finish_search(
    sdf: &StrongDifferenceFamily,
    field: &Arc<FiniteField>,
    results: Vec<Result<Vec<FieldElement>>>,
    budget: &Budget,
    strategy: Strategy,
) -> Result<(Lifting, SearchStats)> {
    let second = results.into_iter().collect::<Result<Vec<_>>>()?;
    let stats = budget.stats();
    info!(
        "{strategy} lifting found: {} nodes, deepest level {}",
        stats.nodes, stats.deepest
    );
    Ok((
        Lifting::new(sdf.clone(), field.clone(), second, strategy)?,
        stats,
    ))
}

/// Chooses `l_{h,1} = 0` and then every `l_{h,i}` in
/// `X_{h,i} = {x : x - l_{h,j} in C^lambda_{psi(h,i,j)}, j < i}`, backtracking
/// when a set is empty. Requires `q = lambda + 1 (mod 2 lambda)`.
pub fn greedy_lift(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    psi: &PsiAssignment,
    budget: u64,
    seed: Option<u64>,
) -> Result<(Lifting, SearchStats)> {
    check_psi_shape(sdf, psi)?;
    let lambda = psi.lambda();
    require_congruence(&field, lambda)?;
    let table = field.class_table(lambda)?;
    let k = sdf.k();
    let shared = Budget::new(budget);
    let results: Vec<Result<Vec<FieldElement>>> = (0..sdf.blocks().len())
        .into_par_iter()
        .map(|h| {
            let s = block_seed(seed, h);
            backtrack(
                &[FieldElement::ZERO],
                k - 1,
                &shared,
                |chosen| {
                    let i = chosen.len();
                    let cons: Vec<(FieldElement, u64)> = chosen
                        .iter()
                        .enumerate()
                        .map(|(j, &c)| (c, psi.get(h, i, j)))
                        .collect();
                    x_level(&field, &table, &cons, s, format!("X(h={h},i={i})"))
                },
                |chosen| Some(chosen.to_vec()),
            )
        })
        .collect();
    debug!("greedy search stats: {:?}", shared.stats());
    let out = finish_search(sdf, &field, results, &shared, Strategy::Greedy)?;
    if let Some(t) = check_class_condition(&out.0, psi)? {
        return Err(Error::NotVerified(format!(
            "greedy lifting violates the class condition at {t:?}"
        )));
    }
    Ok(out)
}

/// Runs [`greedy_lift`] under the assignments `build_psi(sdf, lambda, seed + t)`
/// for `t < attempts`, returning the first assignment that admits a lifting.
/// Small fields leave most assignments without one.
pub fn greedy_lift_any_psi(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    lambda: u64,
    attempts: u64,
    budget: u64,
    seed: u64,
) -> Result<(PsiAssignment, Lifting, SearchStats)> {
    require_congruence(&field, lambda)?;
    let mut last = None;
    for t in 0..attempts {
        let psi = super::psi::build_psi(sdf, lambda, seed.wrapping_add(t))?;
        match greedy_lift(sdf, field.clone(), &psi, budget, None) {
            Ok((l, stats)) => {
                info!("psi seed {} admits a greedy lifting", seed.wrapping_add(t));
                return Ok((psi, l, stats));
            }
            Err(e @ (Error::NoSolution { .. } | Error::BudgetExhausted { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::InvalidArgument("no psi attempts requested".into())))
}

/// The zero-sum lifting for `rad(q) | k`, `k != 3`: free choices up to
/// position `k-4`; position `k-3` avoids `-sigma_{k-4}` in characteristic 3;
/// position `k-2` avoids `Y = Y1 u Y2 u Y3 (u Y4)`; position `k-1` lies in
/// `X'` with `2k-3` constraints; position `k` is `-sigma_{k-1}`.
pub fn zero_sum_lift(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    psi: &PsiAssignment,
    budget: u64,
    seed: Option<u64>,
) -> Result<(Lifting, SearchStats)> {
    check_psi_shape(sdf, psi)?;
    let lambda = psi.lambda();
    require_congruence(&field, lambda)?;
    let k = sdf.k();
    let p = field.characteristic();
    if k == 3 || k < 4 {
        return Err(Error::Precondition(format!(
            "zero-sum lifting needs k >= 4, got {k}"
        )));
    }
    if !(k as u64).is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "the characteristic {p} does not divide k = {k}; use the zero-sum adjustment"
        )));
    }
    let table = field.class_table(lambda)?;
    let f: &FiniteField = &field;
    let minus_two = f.neg(f.from_int(2));
    let alpha = f.class_index(minus_two, lambda)?.index;
    let half_inv = f.inv(f.from_int(2))?;
    let third_inv = if p != 3 {
        Some(f.inv(f.from_int(3))?)
    } else {
        None
    };
    let sum = |xs: &[FieldElement]| xs.iter().fold(FieldElement::ZERO, |a, &x| f.add(a, x));
    let shared = Budget::new(budget);
    let results: Vec<Result<Vec<FieldElement>>> = (0..sdf.blocks().len())
        .into_par_iter()
        .map(|h| {
            let s = block_seed(seed, h);
            let level = |chosen: &[FieldElement]| -> Result<Level> {
                let i = chosen.len();
                let standard: Vec<(FieldElement, u64)> = chosen
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| (c, psi.get(h, i, j)))
                    .collect();
                if i + 4 < k {
                    return x_level(f, &table, &standard, s, format!("X(h={h},i={i})"));
                }
                if i + 4 == k {
                    let mut lv = x_level(f, &table, &standard, s, format!("X(h={h},i={i})"))?;
                    if p == 3 {
                        let avoid = f.neg(sum(chosen));
                        lv.values.retain(|&x| x != avoid);
                    }
                    return Ok(lv);
                }
                if i + 3 == k {
                    let sigma = sum(chosen);
                    let base = f.neg(sigma);
                    let mut y: Vec<FieldElement> = Vec::new();
                    for a in 0..chosen.len() {
                        for b in a..chosen.len() {
                            y.push(f.sub(f.sub(base, chosen[a]), chosen[b]));
                        }
                    }
                    for &c in chosen {
                        let y2 = f.sub(base, c);
                        y.push(y2);
                        y.push(f.mul(y2, half_inv));
                    }
                    if let Some(t) = third_inv {
                        y.push(f.mul(base, t));
                    }
                    let mut lv = x_level(f, &table, &standard, s, format!("X(h={h},i={i})\\Y"))?;
                    lv.values.retain(|x| !y.contains(x));
                    return Ok(lv);
                }
                // i + 2 == k: the augmented set X'
                let sigma = sum(chosen);
                let neg_sigma = f.neg(sigma);
                let mut cons = standard;
                for (j, &c) in chosen.iter().enumerate() {
                    cons.push((
                        f.sub(neg_sigma, c),
                        (psi.get(h, k - 1, j) + lambda / 2) % lambda,
                    ));
                }
                cons.push((
                    f.mul(neg_sigma, half_inv),
                    (psi.get(h, k - 1, k - 2) + lambda - alpha) % lambda,
                ));
                debug_assert_eq!(cons.len(), 2 * k - 3);
                for (a, (c, _)) in cons.iter().enumerate() {
                    if cons[..a].iter().any(|(d, _)| d == c) {
                        return Err(Error::NotVerified(format!(
                            "constraint points of X'(h={h}) coincide at {a}; the Y exclusion failed"
                        )));
                    }
                }
                x_level(f, &table, &cons, s, format!("X'(h={h},i={i})"))
            };
            backtrack(&[FieldElement::ZERO], k - 2, &shared, level, |chosen| {
                let mut full = chosen.to_vec();
                full.push(f.neg(sum(chosen)));
                let ok = (0..k).all(|i| {
                    (0..k).all(|j| {
                        i == j
                            || table.class(f.sub(full[i], full[j])) == Some(psi.get(h, i, j) as u32)
                    })
                });
                ok.then_some(full)
            })
        })
        .collect();
    let out = finish_search(sdf, &field, results, &shared, Strategy::ZeroSum)?;
    if let Some(t) = check_class_condition(&out.0, psi)? {
        return Err(Error::NotVerified(format!(
            "zero-sum lifting violates the class condition at {t:?}"
        )));
    }
    if !out.0.is_zero_sum() {
        return Err(Error::NotVerified(
            "zero-sum lifting produced a block with nonzero sum".into(),
        ));
    }
    Ok(out)
}

/// Positions of a block `{0} u 2A`: where 0 sits and, for every `a` in `A`,
/// the two positions holding it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedShape {
    pub zero: usize,
    pub pairs: Vec<(usize, usize, usize)>,
}

/// Recognises `{0} u 2A` in a sorted block: 0 exactly once, every other
/// element exactly twice.
pub fn signed_shape(block: &[usize]) -> Result<SignedShape> {
    let mut zero = None;
    let mut pairs = Vec::new();
    let mut i = 0;
    while i < block.len() {
        let x = block[i];
        let run = block[i..].iter().take_while(|&&y| y == x).count();
        match (x, run) {
            (0, 1) => zero = Some(i),
            (0, _) => return Err(Error::Shape(format!("0 occurs {run} times"))),
            (_, 2) => pairs.push((x, i, i + 1)),
            _ => {
                return Err(Error::Shape(format!(
                    "element index {x} occurs {run} times, expected 2"
                )))
            }
        }
        i += run;
    }
    let zero = zero.ok_or_else(|| Error::Shape("0 does not occur".into()))?;
    Ok(SignedShape { zero, pairs })
}

fn require_signed_field(field: &FiniteField, half_lambda: u64) -> Result<()> {
    let q = field.order();
    if field.characteristic() == 2 {
        return Err(Error::Precondition("signed liftings need odd q".into()));
    }
    if half_lambda == 0 || !(q - 1).is_multiple_of(2 * half_lambda) {
        return Err(Error::Precondition(format!(
            "2 * {half_lambda} does not divide q - 1 = {}, so -1 is outside C^{half_lambda}",
            q - 1
        )));
    }
    Ok(())
}

/// Checks a signed lifting: every block lifts as `(0,0)` and `(a, +-y_a)`,
/// and every `Delta_g` meets each class of order `half_lambda` exactly twice
/// (its half list is a transversal). Returns the first failing `g`.
pub fn check_signed(lifting: &Lifting, half_lambda: u64) -> Result<Option<usize>> {
    let sdf = lifting.sdf();
    let field = lifting.field();
    require_signed_field(field, half_lambda)?;
    if sdf.lambda() as u64 != 2 * half_lambda {
        return Err(Error::Precondition(format!(
            "the family has lambda {}, not 2 * {half_lambda}",
            sdf.lambda()
        )));
    }
    for (h, (b, l)) in sdf.blocks().iter().zip(lifting.second()).enumerate() {
        let shape = signed_shape(b)?;
        if !l[shape.zero].is_zero() {
            return Err(Error::Shape(format!("block {h}: 0 is not lifted to 0")));
        }
        for &(_, i, j) in &shape.pairs {
            if l[i] != field.neg(l[j]) {
                return Err(Error::Shape(format!(
                    "block {h}: positions {i},{j} are not lifted to +-y"
                )));
            }
        }
    }
    let table = field.class_table(half_lambda)?;
    for (g, d) in lifting.differences().iter().enumerate() {
        let mut counts = vec![0usize; half_lambda as usize];
        for &x in d {
            match table.class(x) {
                Some(c) => counts[c as usize] += 1,
                None => return Ok(Some(g)),
            }
        }
        if counts.iter().any(|&c| c != 2) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Searches `y_a` (up to sign) for every `a` of every block `{0} u 2A` so that
/// the half lists of differences are transversals of the classes of order
/// `half_lambda`. The result is zero-sum by construction.
pub fn signed_lift(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    half_lambda: u64,
    budget: u64,
    seed: Option<u64>,
) -> Result<(Lifting, SearchStats)> {
    require_signed_field(&field, half_lambda)?;
    if sdf.lambda() as u64 != 2 * half_lambda {
        return Err(Error::Precondition(format!(
            "the family has lambda {}, not 2 * {half_lambda}",
            sdf.lambda()
        )));
    }
    let shapes: Vec<SignedShape> = sdf
        .blocks()
        .iter()
        .map(|b| signed_shape(b))
        .collect::<Result<_>>()?;
    let f: &FiniteField = &field;
    let g = sdf.group();
    let table = f.class_table(half_lambda)?;
    let hl = half_lambda as usize;
    // levels: (block, element a, index into shape.pairs)
    let slots: Vec<(usize, usize)> = shapes
        .iter()
        .enumerate()
        .flat_map(|(h, s)| (0..s.pairs.len()).map(move |t| (h, t)))
        .collect();
    let mut reps: Vec<FieldElement> = (0..(f.order() - 1) / 2).map(|i| f.exp(i)).collect();
    order_candidates(f, &mut reps, seed);
    // lifted elements (group part, field part) of block h given its chosen ys
    let partial = |h: usize, ys: &[FieldElement]| -> Vec<(usize, FieldElement)> {
        let mut out = vec![(0usize, FieldElement::ZERO)];
        for (t, &y) in ys.iter().enumerate() {
            let a = shapes[h].pairs[t].0;
            out.push((a, y));
            out.push((a, f.neg(y)));
        }
        out
    };
    let ys_of = |chosen: &[FieldElement], h: usize| -> Vec<FieldElement> {
        slots
            .iter()
            .zip(chosen)
            .filter(|((bh, _), _)| *bh == h)
            .map(|(_, &y)| y)
            .collect()
    };
    let add = |counts: &mut [u8],
               elems: &[(usize, FieldElement)],
               new: &[(usize, FieldElement)]|
     -> bool {
        let mut bump = |gx: usize, x: FieldElement| -> bool {
            match table.class(x) {
                None => false,
                Some(c) => {
                    let cell = &mut counts[gx * hl + c as usize];
                    *cell += 1;
                    *cell <= 2
                }
            }
        };
        let mut ok = true;
        for &(ga, xa) in new {
            for &(gb, xb) in elems {
                ok &= bump(g.sub(ga, gb), f.sub(xa, xb));
                ok &= bump(g.sub(gb, ga), f.sub(xb, xa));
            }
        }
        if new.len() == 2 {
            let (ga, xa) = new[0];
            let (gb, xb) = new[1];
            ok &= bump(g.sub(ga, gb), f.sub(xa, xb));
            ok &= bump(g.sub(gb, ga), f.sub(xb, xa));
        }
        ok
    };
    let shared = Budget::new(budget);
    let depth = slots.len();
    let result = backtrack(
        &[],
        depth,
        &shared,
        |chosen| {
            let (h, t) = slots[chosen.len()];
            let mut counts = vec![0u8; g.order() * hl];
            for (bh, shape) in shapes.iter().enumerate() {
                let ys = ys_of(chosen, bh);
                let mut elems = vec![(0usize, FieldElement::ZERO)];
                for (s, &y) in ys.iter().enumerate() {
                    let a = shape.pairs[s].0;
                    let new = [(a, y), (a, f.neg(y))];
                    add(&mut counts, &elems, &new);
                    elems.extend_from_slice(&new);
                }
            }
            let current = partial(h, &ys_of(chosen, h));
            let a = shapes[h].pairs[t].0;
            let values = reps
                .iter()
                .copied()
                .filter(|&y| {
                    let mut trial = counts.clone();
                    add(&mut trial, &current, &[(a, y), (a, f.neg(y))])
                })
                .collect();
            Ok(Level {
                values,
                name: format!("signed(h={h},a={})", g.display(a)),
            })
        },
        |chosen| Some(chosen.to_vec()),
    )?;
    let mut second: Vec<Vec<FieldElement>> = sdf
        .blocks()
        .iter()
        .map(|b| vec![FieldElement::ZERO; b.len()])
        .collect();
    for (&(h, t), &y) in slots.iter().zip(&result) {
        let (_, i, j) = shapes[h].pairs[t];
        second[h][i] = y;
        second[h][j] = f.neg(y);
    }
    let stats = shared.stats();
    info!(
        "signed lifting found: {} nodes, deepest level {}",
        stats.nodes, stats.deepest
    );
    let lifting = Lifting::new(sdf.clone(), field.clone(), second, Strategy::Signed)?;
    if let Some(bad) = check_signed(&lifting, half_lambda)? {
        return Err(Error::NotVerified(format!(
            "signed lifting fails at {}",
            g.display(bad)
        )));
    }
    Ok((lifting, stats))
}
