//! Arithmetic admissibility and nonexistence checks for additive,
//! super-regular and strictly additive Steiner 2-designs, plus the
//! classification of block sizes.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{factorize, multiplicative_order, prime_power, AbelianGroup};
use crate::error::{Error, Result};

/// One named condition with the numbers needed to recheck it by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    pub certificate: String,
}

/// A list of conditions on `(v, k)` or on `k` alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamVerdict {
    pub subject: String,
    pub conditions: Vec<Condition>,
}

impl ParamVerdict {
    fn new(subject: String) -> Self {
        ParamVerdict {
            subject,
            conditions: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, pass: bool, certificate: String) {
        self.conditions.push(Condition {
            name: name.to_string(),
            pass,
            certificate,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// One line per condition: `name: PASS|FAIL (certificate)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.conditions {
            out.push_str(&format!(
                "{}: {} ({})\n",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.certificate
            ));
        }
        out
    }
}

impl fmt::Display for ParamVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The trivial 2-(k,k,1) design is additive iff `k` is not `2 (mod 4)`.
pub fn trivial_additive(k: u64) -> bool {
    k % 4 != 2
}

/// `v` with every prime of `k` divided out. It is 1 iff `rad(v) | k`.
pub fn strip_primes_of(v: &BigUint, k: u64) -> BigUint {
    let mut rest = v.clone();
    for (p, _) in factorize(k) {
        let p = BigUint::from(p);
        while !rest.is_zero() && (&rest % &p).is_zero() {
            rest /= &p;
        }
    }
    rest
}

fn singly_even(v: &BigUint) -> bool {
    (v % 4u32) == BigUint::from(2u32)
}

/// Necessary conditions for a strictly additive 2-(v,k,1) design:
/// `rad(v) | k` and `v` not singly even.
pub fn strict_additive_necessary(v: &BigUint, k: u64) -> ParamVerdict {
    let mut out = ParamVerdict::new(format!("v={v}, k={k}"));
    let rest = strip_primes_of(v, k);
    out.push(
        "rad(v) divides k",
        rest.is_one(),
        format!("v stripped of the primes of k leaves {rest}"),
    );
    let r = v % 4u32;
    out.push(
        "v not singly even",
        !singly_even(v),
        format!("v mod 4 = {r}"),
    );
    out
}

/// Necessary conditions for a super-regular 2-(v,k,1) design: `v = k (mod
/// k(k-1))`, `rad(v) = rad(k)`, `k` not singly even and, when a group is
/// given, every element order divides `k`.
pub fn super_regular_necessary(v: &BigUint, k: u64, group: Option<&AbelianGroup>) -> ParamVerdict {
    let mut out = ParamVerdict::new(format!("v={v}, k={k}"));
    if let Some(g) = group {
        let e = g.exponent();
        out.push(
            "element orders divide k",
            k > 0 && k.is_multiple_of(e),
            format!("exponent of {g} is {e}"),
        );
        let order_ok = BigUint::from(g.order()) == *v;
        out.push(
            "group order equals v",
            order_ok,
            format!("|G| = {}", g.order()),
        );
    }
    let modulus = BigUint::from(k) * BigUint::from(k.saturating_sub(1));
    let (ok, cert) = if modulus.is_zero() {
        (false, "k(k-1) = 0".to_string())
    } else {
        let r = v % &modulus;
        let kr = BigUint::from(k) % &modulus;
        (
            r == kr,
            format!("v mod {modulus} = {r}, k mod {modulus} = {kr}"),
        )
    };
    out.push("v = k mod k(k-1)", ok, cert);
    let rest = strip_primes_of(v, k);
    let missing: Vec<u64> = factorize(k)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| !(v % p).is_zero())
        .collect();
    out.push(
        "rad(v) = rad(k)",
        rest.is_one() && missing.is_empty(),
        format!("cofactor of v prime to k = {rest}, primes of k not dividing v = {missing:?}"),
    );
    out.push(
        "k not singly even",
        k % 4 != 2,
        format!("k mod 4 = {}", k % 4),
    );
    out
}

/// How the two mod-3 nonexistence results apply to `(v, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mod3Status {
    /// `3 | k`, `9 !| k` and `v/k = 2 (mod 3)`: no super-regular design.
    Nonexistent,
    /// The block-size hypothesis holds and `v/k = 1 (mod 3)`: nothing excluded.
    NotExcluded,
    /// The block-size hypothesis fails.
    NotApplicable,
    /// `3 | k`, `9 !| k` and `v/k = 0 (mod 3)`, which already violates `rad`
    /// or congruence admissibility; nothing more is claimed.
    QuotientDivisibleBy3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod3Report {
    pub v: String,
    pub k: u64,
    pub k_mod_9: u64,
    pub hypothesis: bool,
    pub quotient_mod_3: u64,
    pub status: Mod3Status,
    pub verdict: ParamVerdict,
}

/// Evaluates the mod-3 obstruction. The block-size hypothesis is read as
/// `3 | k` and `9 !| k`, i.e. `k = +-3 (mod 9)`.
pub fn mod3_obstruction(v: &BigUint, k: u64) -> Result<Mod3Report> {
    if k == 0 || !(v % k).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} does not divide v = {v}"
        )));
    }
    let quotient = v / k;
    let quotient_mod_3 = (&quotient % 3u32).to_u64().expect("residue fits");
    let k_mod_9 = k % 9;
    let hypothesis = k.is_multiple_of(3) && !k.is_multiple_of(9);
    let status = match (hypothesis, quotient_mod_3) {
        (false, _) => Mod3Status::NotApplicable,
        (true, 2) => Mod3Status::Nonexistent,
        (true, 1) => Mod3Status::NotExcluded,
        _ => Mod3Status::QuotientDivisibleBy3,
    };
    let mut verdict = ParamVerdict::new(format!("v={v}, k={k}"));
    verdict.push("k = +-3 mod 9", hypothesis, format!("k mod 9 = {k_mod_9}"));
    verdict.push(
        "v/k not 2 mod 3",
        status != Mod3Status::Nonexistent,
        format!("v/k mod 3 = {quotient_mod_3}"),
    );
    Ok(Mod3Report {
        v: v.to_string(),
        k,
        k_mod_9,
        hypothesis,
        quotient_mod_3,
        status,
        verdict,
    })
}

/// Admissible orders for `k = 2^n 3` designs generated by a single-orbit
/// additive family: `v = 2^{oi+n} 3` for `0 <= i <= (n^2-n)/o`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPowThreeOrders {
    pub n: u32,
    pub k: u64,
    /// Order of 2 in the units mod `k - 1`.
    pub o: u64,
    pub bound: u64,
    pub values: Vec<String>,
}

pub fn two_pow_three_orders(n: u32) -> Result<TwoPowThreeOrders> {
    if n == 0 || n > 50 {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..=50")));
    }
    let k = 3u64 << n;
    let o = if k - 1 == 1 {
        1
    } else {
        multiplicative_order(2, k - 1)?
    };
    let bound = (n as u64) * (n as u64) - n as u64;
    let values = (0..=bound / o)
        .map(|i| (BigUint::from(3u32) << (o * i + n as u64) as usize).to_string())
        .collect();
    Ok(TwoPowThreeOrders {
        n,
        k,
        o,
        bound,
        values,
    })
}

/// Which existence result covers super-regular Steiner 2-designs with block size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MainStatus {
    /// `k` is a prime power: the affine geometry designs.
    PrimePower,
    /// `k = 2 (mod 4)`: no design exists.
    SinglyEven,
    /// `k = 2^n 3` with `n >= 2`: open.
    TwoPowTimesThree,
    /// Every other `k`: constructed from the Paley-union family.
    Constructible,
}

impl fmt::Display for MainStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MainStatus::PrimePower => "prime_power",
            MainStatus::SinglyEven => "singly_even",
            MainStatus::TwoPowTimesThree => "two_pow_times_three",
            MainStatus::Constructible => "constructible",
        })
    }
}

pub fn main_status(k: u64) -> Result<MainStatus> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("block size {k} below 3")));
    }
    if prime_power(k).is_some() {
        return Ok(MainStatus::PrimePower);
    }
    if k % 4 == 2 {
        return Ok(MainStatus::SinglyEven);
    }
    let odd = k >> k.trailing_zeros();
    if odd == 3 && k.trailing_zeros() >= 2 {
        return Ok(MainStatus::TwoPowTimesThree);
    }
    Ok(MainStatus::Constructible)
}

/// A row of the table of admissible but excluded `(v, k)`, both as prime
/// factorisations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionRow {
    pub v: Vec<(u64, u32)>,
    pub k: Vec<(u64, u32)>,
}

impl ExclusionRow {
    pub fn v_value(&self) -> BigUint {
        expand(&self.v)
    }

    pub fn k_value(&self) -> u64 {
        expand(&self.k).to_u64().expect("block sizes are small")
    }
}

fn expand(f: &[(u64, u32)]) -> BigUint {
    f.iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}

pub fn exclusion_table() -> Vec<ExclusionRow> {
    let row = |v: &[(u64, u32)], k: &[(u64, u32)]| ExclusionRow {
        v: v.to_vec(),
        k: k.to_vec(),
    };
    vec![
        row(&[(3, 1), (2, 6), (5, 10)], &[(3, 1), (2, 2), (5, 1)]),
        row(&[(3, 1), (2, 18), (11, 10)], &[(3, 1), (2, 2), (11, 1)]),
        row(&[(3, 1), (5, 1), (11, 7)], &[(3, 1), (5, 1), (11, 1)]),
        row(&[(3, 1), (2, 21), (7, 3)], &[(3, 1), (2, 3), (7, 1)]),
        row(&[(3, 1), (5, 22), (13, 4)], &[(3, 1), (5, 1), (13, 1)]),
        row(&[(3, 1), (2, 26), (5, 6)], &[(3, 1), (2, 4), (5, 1)]),
    ]
}

/// True iff `(v, k)` meets the two admissibility conditions of
/// the table header: `v = k (mod k(k-1))` and `rad(v) = rad(k)`.
pub fn table_admissible(v: &BigUint, k: u64) -> bool {
    let verdict = super_regular_necessary(v, k, None);
    ["v = k mod k(k-1)", "rad(v) = rad(k)"]
        .iter()
        .all(|n| verdict.condition(n).is_some_and(|c| c.pass))
}

/// Largest value accepted by [`parse_factored`], in bits.
pub const MAX_FACTORED_BITS: u64 = 1 << 16;

/// Parses `a`, `a^e` and products of those joined by `*`, e.g. `3*2^6*5^10`.
pub fn parse_factored(text: &str) -> Result<BigUint> {
    let bad = |m: String| Error::InvalidArgument(m);
    let mut acc = BigUint::one();
    for factor in text.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| bad(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor.trim(), 1),
        };
        if base.is_empty() || !base.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad(format!("bad integer {base:?}")));
        }
        let b: BigUint = base
            .parse()
            .map_err(|_| bad(format!("bad integer {base:?}")))?;
        let bits = acc.bits() + b.bits().saturating_mul(exp as u64);
        if bits > MAX_FACTORED_BITS {
            return Err(bad(format!("{text:?} exceeds {MAX_FACTORED_BITS} bits")));
        }
        acc *= b.pow(exp);
    }
    if acc.is_zero() {
        return Err(bad("v must be positive".into()));
    }
    Ok(acc)
}

/// `v mod m` for a big `v`, used by reports.
pub fn residue(v: &BigUint, m: u64) -> u64 {
    (v % m).to_u64().unwrap_or(0)
}
