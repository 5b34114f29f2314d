//! Assignments `psi: (h, i, j) -> Z_lambda` that are bijective on every
//! `T_g = {(h, i, j) : b_hi - b_hj = g}` and antisymmetric up to `lambda/2`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::StrongDifferenceFamily;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiAssignment {
    lambda: u64,
    k: usize,
    /// Per block a row-major `k x k` table; the diagonal is unused.
    tables: Vec<Vec<u32>>,
}

impl PsiAssignment {
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> usize {
        self.tables.len()
    }

    pub fn get(&self, h: usize, i: usize, j: usize) -> u64 {
        debug_assert!(i != j);
        self.tables[h][i * self.k + j] as u64
    }

    /// Builds an assignment from explicit tables, then checks it.
    pub fn from_tables(
        sdf: &StrongDifferenceFamily,
        lambda: u64,
        tables: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let k = sdf.k();
        if tables.len() != sdf.blocks().len() || tables.iter().any(|t| t.len() != k * k) {
            return Err(Error::Shape("psi tables do not match the family".into()));
        }
        let psi = PsiAssignment { lambda, k, tables };
        verify_psi(sdf, &psi)?;
        Ok(psi)
    }
}

/// Pairs `T_g` with `T_{-g}` through transposition and hands out the residues
/// of `Z_lambda` in an order drawn from `seed`.
pub fn build_psi(sdf: &StrongDifferenceFamily, lambda: u64, seed: u64) -> Result<PsiAssignment> {
    if lambda == 0 || lambda % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "psi needs an even lambda, got {lambda}"
        )));
    }
    if lambda != sdf.lambda() as u64 {
        return Err(Error::InvalidArgument(format!(
            "lambda {lambda} differs from the family's {}",
            sdf.lambda()
        )));
    }
    let g = sdf.group();
    let k = sdf.k();
    let half = (lambda / 2) as u32;
    let mut by_g: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); g.order()];
    for (h, b) in sdf.blocks().iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    by_g[g.sub(b[i], b[j])].push((h, i, j));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tables = vec![vec![UNSET; k * k]; sdf.blocks().len()];
    for x in g.elements() {
        let nx = g.neg(x);
        if nx < x {
            continue;
        }
        let cell = &by_g[x];
        if cell.len() as u64 != lambda {
            return Err(Error::NotVerified(format!(
                "{} is covered {} times, not {lambda}",
                g.display(x),
                cell.len()
            )));
        }
        if nx == x {
            let mut pairs: Vec<(usize, usize, usize)> =
                cell.iter().copied().filter(|&(_, i, j)| i < j).collect();
            pairs.shuffle(&mut rng);
            let mut residues: Vec<u32> = (0..half).collect();
            residues.shuffle(&mut rng);
            for ((h, i, j), c) in pairs.into_iter().zip(residues) {
                let (a, b) = if rand::Rng::gen::<bool>(&mut rng) {
                    (c, c + half)
                } else {
                    (c + half, c)
                };
                tables[h][i * k + j] = a;
                tables[h][j * k + i] = b;
            }
        } else {
            let mut order = cell.clone();
            order.shuffle(&mut rng);
            for (c, (h, i, j)) in order.into_iter().enumerate() {
                let c = c as u32;
                tables[h][i * k + j] = c;
                tables[h][j * k + i] = (c + half) % lambda as u32;
            }
        }
    }
    let psi = PsiAssignment { lambda, k, tables };
    verify_psi(sdf, &psi)?;
    Ok(psi)
}

/// Checks bijectivity on every `T_g` and `psi(h,j,i) = psi(h,i,j) + lambda/2`.
pub fn verify_psi(sdf: &StrongDifferenceFamily, psi: &PsiAssignment) -> Result<()> {
    let g = sdf.group();
    let k = sdf.k();
    let lambda = psi.lambda;
    if lambda % 2 == 1 || psi.k != k || psi.tables.len() != sdf.blocks().len() {
        return Err(Error::Shape("psi does not match the family".into()));
    }
    let mut seen = vec![vec![false; lambda as usize]; g.order()];
    for (h, b) in sdf.blocks().iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let c = psi.get(h, i, j);
                if c >= lambda {
                    return Err(Error::NotVerified(format!(
                        "psi({h},{i},{j}) = {c} outside Z_{lambda}"
                    )));
                }
                if psi.get(h, j, i) != (c + lambda / 2) % lambda {
                    return Err(Error::NotVerified(format!(
                        "psi({h},{j},{i}) is not psi({h},{i},{j}) + lambda/2"
                    )));
                }
                let x = g.sub(b[i], b[j]);
                if std::mem::replace(&mut seen[x][c as usize], true) {
                    return Err(Error::NotVerified(format!(
                        "psi repeats residue {c} on T_{}",
                        g.display(x)
                    )));
                }
            }
        }
    }
    Ok(())
}
