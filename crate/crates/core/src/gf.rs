//! Arithmetic in GF(p^n) with log/exp tables, and the cyclotomic-class
//! queries the lifting constructions are built on.
//!
//! An element is stored as its additive id `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! where `c_i` are the coefficients with respect to the power basis of a
//! root `r` of the modulus. As an element of `Z_p^n` (descending coefficient
//! order) the id coincides with the lexicographic index used by
//! [`AbelianGroup`], so the additive group of the field can be used directly
//! as a carrier.

use std::fmt;

use crate::algebra::{factorize, is_prime, AbelianGroup};
use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `C^lambda_index`, the coset `r^index C^lambda` of the `lambda`-th powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicClass {
    pub lambda: u64,
    pub index: u64,
}

/// Which multiplicative subgroup `coset_reps` should split by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// The subgroup `C^d` of index `d` in `F_q^*`; cosets are taken in `F_q^*`.
    Index(u64),
    /// The units of the subfield of order `p^degree`; cosets in `F_q^*`.
    SubfieldUnits { degree: u32 },
    /// `{1, -1}` as a subgroup of `C^m`; cosets are taken inside `C^m`.
    PlusMinusOneIn(u64),
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    powers: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {}", self.q, render_polynomial(&self.modulus))
    }
}

/// Parses ascending comma-separated coefficients, e.g. `"2,1,1"` for `x^2+x+2`.
pub fn parse_polynomial(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut column = 1;
    for part in text.split(',') {
        let trimmed = part.trim();
        let value = trimmed.parse::<u64>().map_err(|_| Error::Parse {
            line: 1,
            column,
            message: format!("expected a non-negative integer coefficient, found {trimmed:?}"),
        })?;
        out.push(value);
        column += part.len() + 1;
    }
    Ok(out)
}

pub fn render_polynomial(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

// Polynomials over Z_p below are coefficient vectors of length n (reduced
// modulo the monic `modulus` of degree n).
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (n..2 * n).rev() {
        let top = prod[d];
        if top == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..n {
            let sub = top * modulus[i] % p;
            prod[d - n + i] = (prod[d - n + i] + p - sub) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn poly_pow_x(exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len() - 1;
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    let mut base = vec![0u64; n];
    if n == 1 {
        base[0] = (p - modulus[0] % p) % p;
    } else {
        base[1] = 1;
    }
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, modulus, p);
        }
        base = poly_mul_mod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

/// True iff `x` has multiplicative order `p^n - 1` modulo `modulus`, which
/// forces the modulus to be irreducible as well.
fn is_primitive(modulus: &[u64], p: u64) -> bool {
    let n = modulus.len() - 1;
    if modulus[0].is_multiple_of(p) {
        return false;
    }
    let q_minus_one = p.pow(n as u32) - 1;
    let mut one = vec![0u64; n];
    one[0] = 1;
    if poly_pow_x(q_minus_one, modulus, p) != one {
        return false;
    }
    factorize(q_minus_one)
        .iter()
        .all(|&(r, _)| poly_pow_x(q_minus_one / r, modulus, p) != one)
}

impl FiniteField {
    /// Builds GF(p^n). A supplied modulus must be monic of degree `n` and
    /// primitive; without one, the least primitive modulus is chosen (for
    /// `n = 1` the one whose root is the least primitive root, otherwise the
    /// lexicographically least coefficient tuple `(c_0, ..., c_{n-1})`).
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument(
                "field degree must be at least 1".into(),
            ));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge {
                q: p.saturating_pow(n),
                cap: MAX_FIELD_ORDER,
            })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 || m[n as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "{} is not monic of degree {n}",
                        render_polynomial(m)
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {c} not reduced mod {p}"
                    )));
                }
                if !is_primitive(m, p) {
                    return Err(Error::InvalidModulus(format!(
                        "{} is not primitive over GF({p})",
                        render_polynomial(m)
                    )));
                }
                m.to_vec()
            }
            None => Self::least_primitive(p, n),
        };
        Ok(Self::build(p, n, q, modulus))
    }

    fn least_primitive(p: u64, n: u32) -> Vec<u64> {
        if n == 1 {
            let r = (1..p)
                .find(|&r| is_primitive(&[(p - r) % p, 1], p))
                .expect("every prime field has a primitive root");
            return vec![(p - r) % p, 1];
        }
        let count = p.pow(n);
        for code in 0..count {
            // lexicographic order on (c_0, ..., c_{n-1}): c_0 is most significant
            let mut m = vec![0u64; n as usize + 1];
            let mut rest = code;
            for i in (0..n as usize).rev() {
                m[i] = rest % p;
                rest /= p;
            }
            m[n as usize] = 1;
            if is_primitive(&m, p) {
                return m;
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn build(p: u64, n: u32, q: u64, modulus: Vec<u64>) -> Self {
        let powers: Vec<u64> = (0..n).map(|i| p.pow(i)).collect();
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u64; n as usize];
        cur[0] = 1;
        let nn = n as usize;
        for i in 0..(q - 1) {
            let id: u64 = cur.iter().zip(&powers).map(|(c, w)| c * w).sum();
            exp.push(id as u32);
            log[id as usize] = i as u32;
            // multiply by x
            let top = cur[nn - 1];
            for j in (1..nn).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..nn {
                    let sub = top * modulus[j] % p;
                    cur[j] = (cur[j] + p - sub) % p;
                }
            }
        }
        FiniteField {
            p,
            n,
            q,
            modulus,
            powers,
            exp,
            log,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The additive group `Z_p^n`, with coordinates in descending coefficient order.
    pub fn additive_group(&self) -> AbelianGroup {
        AbelianGroup::from_factors(&vec![self.p; self.n as usize]).expect("field order fits")
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q as u32).map(FieldElement)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        (x.0 as u64) < self.q
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.n
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.p
            )));
        }
        let id: u64 = coeffs.iter().zip(&self.powers).map(|(c, w)| c * w).sum();
        Ok(FieldElement(id as u32))
    }

    /// Ascending coefficients, always `n` of them.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let id = x.0 as u64;
        self.powers.iter().map(|&w| (id / w) % self.p).collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        let (a, b) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for &w in &self.powers {
            out += (((a / w) % self.p + (b / w) % self.p) % self.p) * w;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((self.p - a.0 as u64) % self.p) as u32);
        }
        let a = a.0 as u64;
        let mut out = 0u64;
        for &w in &self.powers {
            out += ((self.p - (a / w) % self.p) % self.p) * w;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((a.0 as u64 + self.p - b.0 as u64) % self.p) as u32);
        }
        let (a, b) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for &w in &self.powers {
            out += (((a / w) % self.p + self.p - (b / w) % self.p) % self.p) * w;
        }
        FieldElement(out as u32)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let e = (self.log[a.id()] as u64 + self.log[b.id()] as u64) % (self.q - 1);
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let l = self.log(a)? as u64;
        Ok(FieldElement(
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.id()] as u128 * e as u128 % (self.q - 1) as u128;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm with respect to the root of the modulus.
    pub fn log(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.log[a.id()])
    }

    /// `r^i`, exponent taken modulo `q - 1`.
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % (self.q - 1)) as usize])
    }

    /// The primitive element `r` (root of the modulus).
    pub fn generator(&self) -> FieldElement {
        self.exp(1)
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        let l = self.log(a)? as u64;
        let m = self.q - 1;
        Ok(m / num_integer::gcd(l, m))
    }

    fn check_lambda(&self, lambda: u64) -> Result<()> {
        if lambda == 0 || !(self.q - 1).is_multiple_of(lambda) {
            return Err(Error::NotADivisor {
                lambda,
                q_minus_one: self.q - 1,
            });
        }
        Ok(())
    }

    /// The class `i` with `x` in `C^lambda_i`, i.e. `log(x) mod lambda`.
    pub fn class_index(&self, x: FieldElement, lambda: u64) -> Result<CyclotomicClass> {
        self.check_lambda(lambda)?;
        let l = self.log(x)? as u64;
        Ok(CyclotomicClass {
            lambda,
            index: l % lambda,
        })
    }

    /// Class index of every element for a fixed `lambda` (`None` at zero).
    pub fn class_table(&self, lambda: u64) -> Result<ClassTable> {
        self.check_lambda(lambda)?;
        let classes = self
            .log
            .iter()
            .map(|&l| {
                if l == u32::MAX {
                    u32::MAX
                } else {
                    (l as u64 % lambda) as u32
                }
            })
            .collect();
        Ok(ClassTable { lambda, classes })
    }

    /// The `(q-1)/2` elements of even log index, sorted by id.
    pub fn nonzero_squares(&self) -> Result<Vec<FieldElement>> {
        if self.p == 2 {
            return Err(Error::InvalidArgument(
                "squares requested in characteristic 2".into(),
            ));
        }
        let mut out: Vec<FieldElement> = (0..(self.q - 1) / 2).map(|i| self.exp(2 * i)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// All `x` with `x - c_i` in `C^lambda_{gamma_i}` for every constraint, by
    /// a full scan of the field.
    pub fn x_set(
        &self,
        constraints: &[(FieldElement, u64)],
        lambda: u64,
    ) -> Result<Vec<FieldElement>> {
        let table = self.class_table(lambda)?;
        self.x_set_with(&table, constraints)
    }

    pub fn x_set_with(
        &self,
        table: &ClassTable,
        constraints: &[(FieldElement, u64)],
    ) -> Result<Vec<FieldElement>> {
        for (i, (c, _)) in constraints.iter().enumerate() {
            if constraints[..i].iter().any(|(d, _)| d == c) {
                return Err(Error::RepeatedConstraint(i));
            }
        }
        let lambda = table.lambda;
        let wanted: Vec<(FieldElement, u32)> = constraints
            .iter()
            .map(|&(c, g)| (c, (g % lambda) as u32))
            .collect();
        Ok(self
            .elements()
            .filter(|&x| {
                wanted
                    .iter()
                    .all(|&(c, g)| table.class(self.sub(x, c)) == Some(g))
            })
            .collect())
    }

    /// The elements of the multiplicative subgroup of order `d`.
    pub fn subgroup_of_order(&self, d: u64) -> Result<Vec<FieldElement>> {
        self.check_lambda(d)?;
        let step = (self.q - 1) / d;
        let mut out: Vec<FieldElement> = (0..d).map(|i| self.exp(i * step)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// One representative per coset, each of least log index.
    pub fn coset_reps(&self, spec: SubgroupSpec) -> Result<Vec<FieldElement>> {
        let m = self.q - 1;
        match spec {
            SubgroupSpec::Index(d) => {
                self.check_lambda(d)?;
                Ok((0..d).map(|i| self.exp(i)).collect())
            }
            SubgroupSpec::SubfieldUnits { degree } => {
                if degree == 0 || !self.n.is_multiple_of(degree) {
                    return Err(Error::InvalidArgument(format!(
                        "GF({}^{degree}) is not a subfield of GF({}^{})",
                        self.p, self.p, self.n
                    )));
                }
                let sub = self.p.pow(degree) - 1;
                self.coset_reps(SubgroupSpec::Index(m / sub))
            }
            SubgroupSpec::PlusMinusOneIn(c) => {
                self.check_lambda(c)?;
                if self.p == 2 {
                    return Err(Error::InvalidArgument(
                        "{1,-1} is trivial in characteristic 2".into(),
                    ));
                }
                // -1 = r^{m/2} lies in C^c iff c divides m/2
                if !(m / 2).is_multiple_of(c) {
                    return Err(Error::InvalidArgument(format!(
                        "-1 is not in C^{c} of GF({})",
                        self.q
                    )));
                }
                Ok((0..m / (2 * c)).map(|i| self.exp(c * i)).collect())
            }
        }
    }

    /// Human-readable element: an integer in prime fields, `[c0,c1,...]` otherwise.
    pub fn format(&self, x: FieldElement) -> String {
        if self.n == 1 {
            x.0.to_string()
        } else {
            format!("[{}]", render_polynomial(&self.coeffs(x)))
        }
    }
}

/// Precomputed `log(x) mod lambda` for every element.
#[derive(Clone, Debug)]
pub struct ClassTable {
    lambda: u64,
    classes: Vec<u32>,
}

impl ClassTable {
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn class(&self, x: FieldElement) -> Option<u32> {
        match self.classes[x.id()] {
            u32::MAX => None,
            c => Some(c),
        }
    }
}

/// An injective ring homomorphism `GF(p^d) -> GF(p^n)`, `d | n`.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    images: Vec<FieldElement>,
}

impl SubfieldEmbedding {
    /// Sends the root of `base`'s modulus to a root of the same polynomial
    /// inside `field`, found among the primitive elements of the subfield.
    pub fn new(field: &FiniteField, base: &FiniteField) -> Result<Self> {
        if field.p != base.p || !field.n.is_multiple_of(base.n) {
            return Err(Error::InvalidArgument(format!(
                "GF({}) does not embed in GF({})",
                base.q, field.q
            )));
        }
        let step = (field.q - 1) / (base.q - 1);
        let m = base.q - 1;
        let eval = |beta: FieldElement| {
            let mut acc = FieldElement::ZERO;
            for &c in base.modulus.iter().rev() {
                acc = field.add(field.mul(acc, beta), field.from_int(c as i64));
            }
            acc
        };
        let beta = (1..m)
            .filter(|j| num_integer::gcd(*j, m) == 1)
            .map(|j| field.exp(step * j))
            .chain(std::iter::once(field.exp(step)).filter(|_| m == 1))
            .find(|&b| eval(b).is_zero())
            .ok_or_else(|| Error::InvalidArgument("no root of the base modulus found".into()))?;
        let mut images = vec![FieldElement::ZERO; base.q as usize];
        for x in base.elements() {
            let mut acc = FieldElement::ZERO;
            let mut power = FieldElement::ONE;
            for c in base.coeffs(x) {
                acc = field.add(acc, field.mul(field.from_int(c as i64), power));
                power = field.mul(power, beta);
            }
            images[x.id()] = acc;
        }
        Ok(SubfieldEmbedding { images })
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        self.images[x.id()]
    }

    pub fn image(&self) -> &[FieldElement] {
        &self.images
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf25() -> FiniteField {
        FiniteField::new(5, 2, Some(&[2, 1, 1])).unwrap()
    }

    #[test]
    fn modulus_x2_x_2_is_primitive() {
        let f = gf25();
        assert_eq!(f.multiplicative_order(f.generator()).unwrap(), 24);
        // default choice coincides with x^2 + x + 2
        assert_eq!(FiniteField::new(5, 2, None).unwrap().modulus(), &[2, 1, 1]);
    }

    #[test]
    fn prime_field_root() {
        let f = FiniteField::new(7, 1, None).unwrap();
        assert_eq!(f.generator(), FieldElement(3));
        // r = 3 is a primitive root: orders of 2..6 mod 7 by exhaustion
        let orders: Vec<u64> = (2..7)
            .map(|a| {
                (1..=6)
                    .find(|&e| (a as u64).pow(e as u32) % 7 == 1)
                    .unwrap()
            })
            .collect();
        assert_eq!(orders, vec![3, 6, 3, 6, 2]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            FiniteField::new(4, 1, None).unwrap_err(),
            Error::NotPrime(4)
        );
        // x^2 + 1 is reducible over GF(5)
        assert!(FiniteField::new(5, 2, Some(&[1, 0, 1])).is_err());
        // x^2 + x + 1 is irreducible over GF(5) but not primitive
        assert!(FiniteField::new(5, 2, Some(&[1, 1, 1])).is_err());
        assert!(FiniteField::new(5, 2, Some(&[2, 1])).is_err());
        assert!(matches!(
            FiniteField::new(2, 23, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn tables_are_inverse() {
        let f = FiniteField::new(3, 4, None).unwrap();
        for x in f.nonzero_elements() {
            assert_eq!(f.exp(f.log(x).unwrap() as u64), x);
        }
        for i in 0..80 {
            assert_eq!(f.log(f.exp(i)).unwrap() as u64, i);
        }
    }

    #[test]
    fn class_index_examples() {
        let f = gf25();
        let minus_one = f.neg(FieldElement::ONE);
        assert_eq!(f.log(minus_one).unwrap(), 12);
        assert_eq!(f.class_index(minus_one, 4).unwrap().index, 0);
        assert_eq!(f.class_index(FieldElement::ONE, 4).unwrap().index, 0);
        let g7 = FiniteField::new(7, 1, None).unwrap();
        assert_eq!(g7.class_index(FieldElement(3), 2).unwrap().index, 1);
        assert_eq!(
            f.class_index(FieldElement::ZERO, 2).unwrap_err(),
            Error::ZeroElement
        );
        assert!(f.class_index(FieldElement::ONE, 5).is_err());
    }

    #[test]
    fn squares() {
        let sq = |p| {
            FiniteField::new(p, 1, None)
                .unwrap()
                .nonzero_squares()
                .unwrap()
                .iter()
                .map(|x| x.0)
                .collect::<Vec<_>>()
        };
        assert_eq!(sq(5), vec![1, 4]);
        assert_eq!(sq(7), vec![1, 2, 4]);
        assert_eq!(sq(11), vec![1, 3, 4, 5, 9]);
        assert!(FiniteField::new(2, 3, None)
            .unwrap()
            .nonzero_squares()
            .is_err());
    }

    #[test]
    fn x_set_single_constraint() {
        let f = gf25();
        let x = f.x_set(&[(FieldElement::ZERO, 0)], 2).unwrap();
        assert_eq!(x, f.nonzero_squares().unwrap());
        let err = f
            .x_set(&[(FieldElement::ONE, 0), (FieldElement::ONE, 1)], 2)
            .unwrap_err();
        assert_eq!(err, Error::RepeatedConstraint(1));
    }

    #[test]
    fn coset_representatives() {
        let f = gf25();
        let reps = f.coset_reps(SubgroupSpec::PlusMinusOneIn(2)).unwrap();
        let expected: Vec<FieldElement> = (0..6).map(|i| f.exp(2 * i)).collect();
        assert_eq!(reps, expected);
        assert_eq!(
            f.coset_reps(SubgroupSpec::Index(1)).unwrap(),
            vec![FieldElement::ONE]
        );
        let big = FiniteField::new(5, 4, None).unwrap();
        assert_eq!(
            big.coset_reps(SubgroupSpec::SubfieldUnits { degree: 2 })
                .unwrap()
                .len(),
            26
        );
        assert!(f.coset_reps(SubgroupSpec::Index(5)).is_err());
        // -1 is a non-square in GF(7)
        let g7 = FiniteField::new(7, 1, None).unwrap();
        assert!(g7.coset_reps(SubgroupSpec::PlusMinusOneIn(2)).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let base = gf25();
        let big = FiniteField::new(5, 4, None).unwrap();
        let emb = SubfieldEmbedding::new(&big, &base).unwrap();
        let mut image: Vec<_> = emb.image().to_vec();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image.len(), 25);
        assert_eq!(emb.apply(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(emb.apply(FieldElement::ONE), FieldElement::ONE);
        for x in base.elements() {
            for y in base.elements() {
                assert_eq!(
                    emb.apply(base.mul(x, y)),
                    big.mul(emb.apply(x), emb.apply(y))
                );
                assert_eq!(
                    emb.apply(base.add(x, y)),
                    big.add(emb.apply(x), emb.apply(y))
                );
            }
        }
        // image = {0} and the logs divisible by (625-1)/(25-1)
        for &y in emb.image() {
            if !y.is_zero() {
                assert_eq!(big.log(y).unwrap() % 26, 0);
            }
        }
        assert!(SubfieldEmbedding::new(&FiniteField::new(5, 3, None).unwrap(), &base).is_err());
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(parse_polynomial("2,1,1").unwrap(), vec![2, 1, 1]);
        assert_eq!(render_polynomial(&[2, 1, 1]), "2,1,1");
        match parse_polynomial("2,x,1").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 3),
            e => panic!("{e:?}"),
        }
    }
}
