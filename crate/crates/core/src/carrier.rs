//! Carriers of families: a plain group, or a product `G x F_q` whose elements
//! are pairs `(g, x)`. The product is flattened to the group
//! `G x Z_p^n` so that every group operation applies unchanged; pair
//! `(g, x)` sits at index `g * q + id(x)`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AbelianGroup, Subgroup};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Group(AbelianGroup),
    Product {
        base: AbelianGroup,
        field: Arc<FiniteField>,
        flat: AbelianGroup,
    },
}

impl Carrier {
    pub fn product(base: AbelianGroup, field: Arc<FiniteField>) -> Result<Self> {
        let flat = base.product(&field.additive_group());
        if flat.order() as u64 != base.order() as u64 * field.order() {
            return Err(Error::InvalidGroup("product carrier too large".into()));
        }
        Ok(Carrier::Product { base, field, flat })
    }

    /// The carrier as an abelian group.
    pub fn flat(&self) -> &AbelianGroup {
        match self {
            Carrier::Group(g) => g,
            Carrier::Product { flat, .. } => flat,
        }
    }

    /// The first factor `G` (the whole group for a plain carrier).
    pub fn base(&self) -> &AbelianGroup {
        match self {
            Carrier::Group(g) => g,
            Carrier::Product { base, .. } => base,
        }
    }

    pub fn field(&self) -> Option<&Arc<FiniteField>> {
        match self {
            Carrier::Group(_) => None,
            Carrier::Product { field, .. } => Some(field),
        }
    }

    pub fn require_field(&self) -> Result<&Arc<FiniteField>> {
        self.field()
            .ok_or_else(|| Error::CarrierMismatch("expected a product carrier G x F_q".into()))
    }

    pub fn order(&self) -> usize {
        self.flat().order()
    }

    /// Index of the pair `(g, x)`.
    pub fn pair(&self, g: usize, x: FieldElement) -> usize {
        match self {
            Carrier::Group(_) => panic!("pair() on a plain group carrier"),
            Carrier::Product { field, .. } => g * field.order() as usize + x.id(),
        }
    }

    /// Inverse of [`Carrier::pair`].
    pub fn split(&self, idx: usize) -> (usize, FieldElement) {
        match self {
            Carrier::Group(_) => panic!("split() on a plain group carrier"),
            Carrier::Product { field, .. } => {
                let q = field.order() as usize;
                (idx / q, FieldElement((idx % q) as u32))
            }
        }
    }

    /// `G x {0}` inside a product carrier.
    pub fn base_subgroup(&self) -> Result<Subgroup> {
        self.require_field()?;
        let elems: Vec<usize> = self
            .base()
            .elements()
            .map(|g| self.pair(g, FieldElement::ZERO))
            .collect();
        Ok(Subgroup::new(self.flat(), &elems).expect("G x {0} is a subgroup"))
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Group(g) => write!(f, "{g}"),
            Carrier::Product { base, field, .. } if base.rank() == 0 => {
                write!(f, "F_{}", field.order())
            }
            Carrier::Product { base, field, .. } => write!(f, "{base}xF_{}", field.order()),
        }
    }
}
