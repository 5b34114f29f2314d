//! From strong difference families over `G` to relative difference families
//! over `G x F_q`: liftings of the blocks into the field, multiplier sets,
//! field extension and the zero-sum adjustment.

mod cyclotomic;
mod expand;
mod psi;
mod search;

use std::fmt;
use std::sync::Arc;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::families::StrongDifferenceFamily;
use crate::gf::{FieldElement, FiniteField};

pub use cyclotomic::{
    check_signed, greedy_lift, greedy_lift_any_psi, signed_lift, signed_shape, zero_sum_lift,
    SignedShape,
};
pub use expand::{
    apply_multipliers, apply_multipliers_with, extend_field, simple_lift, zero_sum_adjust,
    MultiplierOutcome, MultiplierSet,
};
pub use psi::{build_psi, verify_psi, PsiAssignment};
pub use search::{Budget, SearchStats};

/// Default node budget of the searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Greedy,
    ZeroSum,
    Signed,
    Simple,
    Given,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Greedy => "greedy",
            Strategy::ZeroSum => "zero-sum",
            Strategy::Signed => "signed",
            Strategy::Simple => "simple",
            Strategy::Given => "given",
        })
    }
}

/// Second coordinates `l_{h,i}` for every position of every (sorted) block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifting {
    sdf: StrongDifferenceFamily,
    field: Arc<FiniteField>,
    second: Vec<Vec<FieldElement>>,
    strategy: Strategy,
}

impl Lifting {
    /// Checks shapes and that every lifted block is a set.
    pub fn new(
        sdf: StrongDifferenceFamily,
        field: Arc<FiniteField>,
        second: Vec<Vec<FieldElement>>,
        strategy: Strategy,
    ) -> Result<Self> {
        if second.len() != sdf.blocks().len() {
            return Err(Error::Shape(format!(
                "{} lifted blocks for {} base blocks",
                second.len(),
                sdf.blocks().len()
            )));
        }
        for (h, (b, l)) in sdf.blocks().iter().zip(&second).enumerate() {
            if b.len() != l.len() {
                return Err(Error::Shape(format!(
                    "block {h}: {} second coordinates for {} entries",
                    l.len(),
                    b.len()
                )));
            }
            if let Some(&x) = l.iter().find(|x| !field.contains(**x)) {
                return Err(Error::InvalidElement(format!(
                    "id {} outside GF({})",
                    x.0,
                    field.order()
                )));
            }
            let mut pairs: Vec<(usize, FieldElement)> =
                b.iter().copied().zip(l.iter().copied()).collect();
            pairs.sort_unstable();
            if pairs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Shape(format!("lifted block {h} repeats a pair")));
            }
        }
        Ok(Lifting {
            sdf,
            field,
            second,
            strategy,
        })
    }

    pub fn sdf(&self) -> &StrongDifferenceFamily {
        &self.sdf
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn second(&self) -> &[Vec<FieldElement>] {
        &self.second
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn carrier(&self) -> Result<Carrier> {
        Carrier::product(self.sdf.group().clone(), self.field.clone())
    }

    /// The blocks `l(B_h)` as carrier indices of `G x F_q`.
    pub fn lifted_blocks(&self) -> Vec<Vec<usize>> {
        let q = self.field.order() as usize;
        self.sdf
            .blocks()
            .iter()
            .zip(&self.second)
            .map(|(b, l)| {
                let mut out: Vec<usize> = b.iter().zip(l).map(|(&g, x)| g * q + x.id()).collect();
                out.sort_unstable();
                out
            })
            .collect()
    }

    /// `Delta_g` for every `g`: the field parts of the differences of the
    /// lifted blocks whose group part is `g`.
    pub fn differences(&self) -> Vec<Vec<FieldElement>> {
        let g = self.sdf.group();
        let mut out = vec![Vec::new(); g.order()];
        for (b, l) in self.sdf.blocks().iter().zip(&self.second) {
            for i in 0..b.len() {
                for j in 0..b.len() {
                    if i != j {
                        out[g.sub(b[i], b[j])].push(self.field.sub(l[i], l[j]));
                    }
                }
            }
        }
        out
    }

    /// True iff the second coordinates of every lifted block sum to zero.
    pub fn is_zero_sum(&self) -> bool {
        self.second.iter().all(|l| {
            l.iter()
                .fold(FieldElement::ZERO, |acc, &x| self.field.add(acc, x))
                .is_zero()
        })
    }
}

/// First triple `(h, i, j)` with `l_hi - l_hj` outside `C^lambda_{psi(h,i,j)}`.
pub fn check_class_condition(
    lifting: &Lifting,
    psi: &PsiAssignment,
) -> Result<Option<(usize, usize, usize)>> {
    let field = lifting.field();
    let table = field.class_table(psi.lambda())?;
    if psi.blocks() != lifting.second().len() || psi.k() != lifting.sdf().k() {
        return Err(Error::Shape("psi does not match the lifting".into()));
    }
    for (h, l) in lifting.second().iter().enumerate() {
        for i in 0..l.len() {
            for j in 0..l.len() {
                if i != j && table.class(field.sub(l[i], l[j])) != Some(psi.get(h, i, j) as u32) {
                    return Ok(Some((h, i, j)));
                }
            }
        }
    }
    Ok(None)
}
