//! Depth-first search over field elements, one level per chosen coordinate,
//! with a node budget shared between independent searches.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

/// Telemetry of a finished or abandoned search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub deepest: usize,
    pub empty_set: Option<String>,
}

/// A node budget shared by concurrent searches.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    deepest: AtomicU64,
    empty_set: Mutex<Option<String>>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            deepest: AtomicU64::new(0),
            empty_set: Mutex::new(None),
        }
    }

    fn spend(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.limit
    }

    fn reach(&self, depth: usize) {
        self.deepest.fetch_max(depth as u64, Ordering::Relaxed);
    }

    fn record_empty(&self, name: &str) {
        *self.empty_set.lock().expect("budget lock") = Some(name.to_string());
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.used.load(Ordering::Relaxed).min(self.limit),
            deepest: self.deepest.load(Ordering::Relaxed) as usize,
            empty_set: self.empty_set.lock().expect("budget lock").clone(),
        }
    }

    pub(crate) fn exhausted(&self) -> Error {
        let s = self.stats();
        Error::BudgetExhausted {
            nodes: s.nodes,
            deepest: s.deepest,
            empty_set: s.empty_set.unwrap_or_else(|| "none".into()),
        }
    }

    pub(crate) fn no_solution(&self) -> Error {
        let s = self.stats();
        Error::NoSolution {
            deepest: s.deepest,
            empty_set: s.empty_set.unwrap_or_else(|| "none".into()),
        }
    }
}

/// Orders candidates by discrete log (zero first), or by a keyed hash of the
/// element id when a seed is given.
pub(crate) fn order_candidates(field: &FiniteField, xs: &mut [FieldElement], seed: Option<u64>) {
    match seed {
        None => xs.sort_by_key(|&x| {
            if x.is_zero() {
                0
            } else {
                field.log(x).expect("nonzero") as u64 + 1
            }
        }),
        Some(s) => {
            xs.sort_by_key(|&x| splitmix(s ^ (x.0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
        }
    }
}

pub(crate) fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Candidate values at one level together with the name of the set they
/// were drawn from (used in failure reports).
pub(crate) struct Level {
    pub values: Vec<FieldElement>,
    pub name: String,
}

/// Fills `depth` levels after the fixed `prefix`. `level(chosen)` lists the
/// candidates for the next position; `finish(chosen)` turns a full choice
/// into a result or rejects it.
pub(crate) fn backtrack<L, F, T>(
    prefix: &[FieldElement],
    depth: usize,
    budget: &Budget,
    mut level: L,
    mut finish: F,
) -> Result<T>
where
    L: FnMut(&[FieldElement]) -> Result<Level>,
    F: FnMut(&[FieldElement]) -> Option<T>,
{
    let mut chosen: Vec<FieldElement> = prefix.to_vec();
    let mut stack: Vec<(Vec<FieldElement>, usize)> = Vec::with_capacity(depth);
    if depth == 0 {
        return finish(&chosen).ok_or_else(|| budget.no_solution());
    }
    let first = level(&chosen)?;
    if first.values.is_empty() {
        budget.record_empty(&first.name);
    }
    stack.push((first.values, 0));
    while let Some((values, next)) = stack.last_mut() {
        if *next == values.len() {
            stack.pop();
            continue;
        }
        let x = values[*next];
        *next += 1;
        if !budget.spend() {
            return Err(budget.exhausted());
        }
        let level_index = stack.len();
        chosen.truncate(prefix.len() + level_index - 1);
        chosen.push(x);
        budget.reach(level_index);
        if level_index == depth {
            if let Some(out) = finish(&chosen) {
                return Ok(out);
            }
            continue;
        }
        let lv = level(&chosen)?;
        if lv.values.is_empty() {
            budget.record_empty(&lv.name);
            continue;
        }
        stack.push((lv.values, 0));
    }
    Err(budget.no_solution())
}
