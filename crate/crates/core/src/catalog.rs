//! Explicit objects shipped with the library: the `(5,5,4)` Paley family,
//! the additive Steiner families over `Z_5 x F_25` and `Z_7^3`, the
//! `(15,15,42)` family `Sigma'`, and the table of excluded parameters.

use std::fmt::Write as _;

use crate::analysis::{exclusion_table, mod3_obstruction};
use crate::error::{Error, Result};
use crate::format::{CarrierSpec, FamilyFile, Role};

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "example51",
        description: "{0,1,1,4,4}: additive (5,5,4)-SDF over Z_5",
    },
    CatalogEntry {
        name: "thm62-z5",
        description: "six blocks: additive (Z_5 x F_25, Z_5 x {0}, 5, 1)-DF",
    },
    CatalogEntry {
        name: "thm62-z7",
        description: "eight blocks: additive (Z_7^3, <(1,0,0)>, 7, 1)-DF",
    },
    CatalogEntry {
        name: "sigma-prime",
        description: "three blocks {0} u 2A: additive (15,15,42)-SDF over Z_15",
    },
    CatalogEntry {
        name: "exclusion-table",
        description: "parameter pairs (v,k) excluded by the mod 3 obstruction",
    },
];

// (g, a, b) stands for (g, a*x + b) in Z_5 x GF(5^2), GF(25) = Z_5[x]/(x^2+x+2).
const Z5_BLOCKS: [[(usize, usize, usize); 5]; 6] = [
    [(0, 0, 0), (1, 0, 1), (1, 0, 4), (4, 1, 0), (4, 4, 0)],
    [(0, 0, 0), (1, 4, 3), (1, 1, 2), (4, 4, 2), (4, 1, 3)],
    [(0, 0, 0), (1, 3, 2), (1, 2, 3), (4, 4, 4), (4, 1, 1)],
    [(0, 0, 0), (1, 0, 2), (1, 0, 3), (4, 2, 0), (4, 3, 0)],
    [(0, 0, 0), (1, 3, 1), (1, 2, 4), (4, 3, 4), (4, 2, 1)],
    [(0, 0, 0), (1, 1, 4), (1, 4, 1), (4, 3, 3), (4, 2, 2)],
];

const Z7_BLOCKS: [[(usize, usize, usize); 7]; 8] = [
    [
        (0, 0, 0),
        (1, 1, 0),
        (1, 6, 0),
        (2, 2, 1),
        (2, 5, 6),
        (4, 2, 0),
        (4, 5, 0),
    ],
    [
        (0, 0, 0),
        (1, 2, 4),
        (1, 5, 3),
        (2, 0, 3),
        (2, 0, 4),
        (4, 4, 1),
        (4, 3, 6),
    ],
    [
        (0, 0, 0),
        (1, 2, 2),
        (1, 5, 5),
        (2, 2, 6),
        (2, 5, 1),
        (4, 4, 4),
        (4, 3, 3),
    ],
    [
        (0, 0, 0),
        (1, 3, 5),
        (1, 4, 2),
        (2, 1, 6),
        (2, 6, 1),
        (4, 6, 3),
        (4, 1, 4),
    ],
    [
        (0, 0, 0),
        (1, 0, 1),
        (1, 0, 6),
        (2, 6, 2),
        (2, 1, 5),
        (4, 0, 2),
        (4, 0, 5),
    ],
    [
        (0, 0, 0),
        (1, 3, 2),
        (1, 4, 5),
        (2, 4, 0),
        (2, 3, 0),
        (4, 6, 4),
        (4, 1, 3),
    ],
    [
        (0, 0, 0),
        (1, 5, 2),
        (1, 2, 5),
        (2, 1, 2),
        (2, 6, 5),
        (4, 3, 4),
        (4, 4, 3),
    ],
    [
        (0, 0, 0),
        (1, 2, 3),
        (1, 5, 4),
        (2, 1, 1),
        (2, 6, 6),
        (4, 4, 6),
        (4, 3, 1),
    ],
];

const SIGMA_PRIME_HALVES: [[usize; 7]; 3] = [
    [1, 2, 3, 7, 9, 11, 12],
    [1, 3, 4, 5, 7, 12, 13],
    [1, 5, 8, 10, 11, 12, 13],
];

fn triple(n: usize, (a, b, c): (usize, usize, usize)) -> usize {
    (a * n + b) * n + c
}

pub fn example51() -> FamilyFile {
    FamilyFile {
        role: Role::Sdf,
        carrier: CarrierSpec::Group(vec![5]),
        k: 5,
        lambda: 4,
        forbidden: Vec::new(),
        blocks: vec![vec![0, 1, 1, 4, 4]],
        multiplicity: None,
    }
}

pub fn thm62_z5() -> FamilyFile {
    FamilyFile {
        role: Role::Rdf,
        carrier: CarrierSpec::Product {
            group: vec![5],
            p: 5,
            n: 2,
            modulus: vec![2, 1, 1],
        },
        k: 5,
        lambda: 1,
        forbidden: vec![(0..5).map(|g| g * 25).collect()],
        blocks: Z5_BLOCKS
            .iter()
            .map(|b| b.iter().map(|&t| triple(5, t)).collect())
            .collect(),
        multiplicity: None,
    }
}

pub fn thm62_z7() -> FamilyFile {
    FamilyFile {
        role: Role::Rdf,
        carrier: CarrierSpec::Group(vec![7, 7, 7]),
        k: 7,
        lambda: 1,
        forbidden: vec![(0..7).map(|g| g * 49).collect()],
        blocks: Z7_BLOCKS
            .iter()
            .map(|b| b.iter().map(|&t| triple(7, t)).collect())
            .collect(),
        multiplicity: None,
    }
}

pub fn sigma_prime() -> FamilyFile {
    FamilyFile {
        role: Role::Sdf,
        carrier: CarrierSpec::Group(vec![15]),
        k: 15,
        lambda: 42,
        forbidden: Vec::new(),
        blocks: SIGMA_PRIME_HALVES
            .iter()
            .map(|a| {
                std::iter::once(0)
                    .chain(a.iter().flat_map(|&x| [x, x]))
                    .collect()
            })
            .collect(),
        multiplicity: None,
    }
}

/// One line per row: factorisations, `v/k mod 3` and the obstruction status.
pub fn exclusion_report() -> Result<String> {
    let mut out = String::new();
    for row in exclusion_table() {
        let fmt = |f: &[(u64, u32)]| {
            f.iter()
                .map(|&(p, e)| {
                    if e == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let r = mod3_obstruction(&row.v_value(), row.k_value())?;
        let _ = writeln!(
            out,
            "v={} k={} v/k mod 3={} status={:?}",
            fmt(&row.v),
            fmt(&row.k),
            r.quotient_mod_3,
            r.status
        );
    }
    Ok(out)
}

pub fn family(name: &str) -> Result<FamilyFile> {
    match name {
        "example51" => Ok(example51()),
        "thm62-z5" => Ok(thm62_z5()),
        "thm62-z7" => Ok(thm62_z7()),
        "sigma-prime" => Ok(sigma_prime()),
        _ => Err(Error::InvalidArgument(format!(
            "no catalog family named {name:?}"
        ))),
    }
}

/// Text of an entry: a family file, or the exclusion report.
pub fn emit(name: &str) -> Result<String> {
    match name {
        "exclusion-table" => exclusion_report(),
        _ => family(name)?.render(),
    }
}
