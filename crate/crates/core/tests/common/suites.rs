//! Exhaustive checks shared by the property tests and the acceptance run.
//! Each panics with a description of the first failure.

use std::sync::Arc;

use additive_designs::algebra::AbelianGroup;
use additive_designs::catalog;
use additive_designs::designs::{ag_design, develop, verify_design, SteinerIndex};
use additive_designs::differences::delta_block;
use additive_designs::families::{verify_rdf, KSet, RelativeDifferenceFamily};
use additive_designs::gf::FiniteField;
use additive_designs::lifting::simple_lift;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

/// Random blocks in random small groups: `Delta` is unchanged by translation,
/// agrees with the oracle, and every involution occurs an even number of times.
/// Returns the number of blocks checked.
pub fn delta_samples(draws: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let orders: Vec<u64> = (0..rng.gen_range(1..4))
            .map(|_| rng.gen_range(2..8))
            .collect();
        let n: u64 = orders.iter().product();
        let group = AbelianGroup::new(&orders).unwrap();
        let block: Vec<usize> = (0..rng.gen_range(2..7))
            .map(|_| rng.gen_range(0..n as usize))
            .collect();
        let t = rng.gen_range(0..n as usize);
        let moved: Vec<usize> = block.iter().map(|&x| group.add(x, t)).collect();
        let d1 = delta_block(&group, &block).unwrap();
        let d2 = delta_block(&group, &moved).unwrap();
        assert_eq!(
            d1.to_sorted_vec(),
            d2.to_sorted_vec(),
            "{orders:?} {block:?} + {t}"
        );
        let oracle = delta_counts(&orders, std::slice::from_ref(&block));
        for (x, &count) in oracle.iter().enumerate() {
            assert_eq!(d1.multiplicity(x), count, "{orders:?} {block:?} at {x}");
            let c = coords(&orders, x);
            if x != 0 && add(&orders, &c, &c).iter().all(|&v| v == 0) {
                assert_eq!(count % 2, 0, "{orders:?} {block:?} involution {x}");
            }
        }
    }
    draws
}

/// Every nontrivial subgroup of every `F_q^*` with `q <= max_q` sums to zero,
/// generated by oracle powers of the library's generator and compared with
/// the library's listing. Returns the number of subgroups checked.
pub fn multiplicative_subgroups_sum_to_zero(max_q: u64) -> usize {
    let mut checked = 0;
    for q in 3..=max_q {
        let Some((p, n)) = prime_power(q) else {
            continue;
        };
        let f = FiniteField::new(p, n, None).unwrap();
        let poly = PolyField {
            p,
            modulus: f.modulus().to_vec(),
        };
        let g = f.generator().0 as u64;
        assert_eq!(poly.order_of(g), q - 1, "GF({q}) generator");
        for d in (2..q).filter(|d| (q - 1) % d == 0) {
            let h = poly.pow(g, (q - 1) / d);
            let mut x = 1u64;
            let mut sum = 0u64;
            let mut elems = Vec::new();
            for _ in 0..d {
                sum = poly.add(sum, x);
                elems.push(x);
                x = poly.mul(x, h);
            }
            assert_eq!(x, 1, "GF({q}) element of order dividing {d}");
            assert_eq!(sum, 0, "GF({q}) subgroup of order {d}");
            elems.sort_unstable();
            let lib: Vec<u64> = f
                .subgroup_of_order(d)
                .unwrap()
                .into_iter()
                .map(|e| e.0 as u64)
                .collect();
            assert_eq!(lib, elems, "GF({q}) subgroup of order {d}");
            checked += 1;
        }
    }
    checked
}

/// A finite abelian group is zero-sum iff it does not have exactly one
/// involution, over every abelian group of order at most `max_n`. Returns
/// the number of groups checked.
pub fn zero_sum_iff_not_binary(max_n: u64) -> usize {
    let mut checked = 0;
    for n in 1..=max_n {
        for orders in abelian_groups(n) {
            let g = AbelianGroup::new(&orders).unwrap();
            let all: Vec<usize> = (0..n as usize).collect();
            let zero_sum = is_zero_sum(&orders, &all);
            let involutions = (1..n as usize)
                .filter(|&x| {
                    let c = coords(&orders, x);
                    add(&orders, &c, &c).iter().all(|&v| v == 0)
                })
                .count();
            assert_eq!(zero_sum, involutions != 1, "{orders:?}");
            assert_eq!(g.is_zero_sum_group(), zero_sum, "{orders:?}");
            assert_eq!(
                g.involution_subgroup().is_binary,
                involutions == 1,
                "{orders:?}"
            );
            checked += 1;
        }
    }
    checked
}

/// Any two intersecting lines of `AG(n, p)` close up to `p^2` points.
/// Returns the number of line pairs checked.
pub fn affine_closures(n: u32, p: u64) -> usize {
    let d = ag_design(n, p).unwrap();
    let idx = SteinerIndex::new(&d).unwrap();
    let mut through = vec![Vec::new(); d.v()];
    for (i, b) in d.blocks().enumerate() {
        for &x in b {
            through[x as usize].push(i);
        }
    }
    let mut pairs = 0;
    for list in &through {
        for (s, &i) in list.iter().enumerate() {
            for &j in &list[s + 1..] {
                let c = idx.closure(d.block(i), d.block(j)).unwrap();
                assert_eq!(c.len() as u64, p * p, "AG({n},{p}) blocks {i},{j}");
                pairs += 1;
            }
        }
    }
    let per_point = ((p.pow(n) - 1) / (p - 1)) as usize;
    assert_eq!(pairs, d.v() * per_point * (per_point - 1) / 2);
    let blocks: Vec<Vec<u32>> = d.blocks().map(<[u32]>::to_vec).collect();
    let first = d.block(0);
    let other = through[first[0] as usize][1];
    assert_eq!(closure(&blocks, first, d.block(other)).len() as u64, p * p);
    pairs
}

fn perturbed(rdf: &RelativeDifferenceFamily) -> Vec<Vec<usize>> {
    let mut blocks = rdf.raw_blocks();
    let g = rdf.group();
    let last = blocks[0].len() - 1;
    let old = blocks[0][last];
    blocks[0][last] = (1..g.order())
        .map(|t| g.add(old, t))
        .find(|x| !blocks[0].contains(x))
        .unwrap();
    blocks
}

pub fn fixtures() -> Vec<RelativeDifferenceFamily> {
    let sigma = catalog::sigma_prime().to_sdf().unwrap();
    let f25 = Arc::new(FiniteField::new(5, 2, Some(&[2, 1, 1])).unwrap());
    let (_, lifted) = simple_lift(&sigma, f25, None, true).unwrap();
    vec![
        catalog::thm62_z5().to_rdf().unwrap(),
        catalog::thm62_z7().to_rdf().unwrap(),
        lifted,
    ]
}

/// Development of every fixture is a 2-design by oracle pair counts, and a
/// single moved point makes both the library and the oracle reject the
/// family. Returns the number of fixtures.
pub fn develop_verify_agree() -> usize {
    let fixtures = fixtures();
    for rdf in &fixtures {
        let d = develop(rdf).unwrap();
        assert!(verify_design(&d).is_design, "{}", rdf.carrier());
        let blocks: Vec<Vec<u32>> = d.blocks().map(<[u32]>::to_vec).collect();
        assert!(
            is_2_design(d.v(), &blocks, rdf.lambda() as u16),
            "{}",
            rdf.carrier()
        );

        let bad = perturbed(rdf);
        let verdict =
            verify_rdf(rdf.group(), &bad, rdf.forbidden(), rdf.k(), rdf.lambda()).unwrap();
        assert!(!verdict.is_rdf, "{}", rdf.carrier());
        let forbidden: Vec<usize> = rdf
            .forbidden()
            .members()
            .iter()
            .flat_map(|h| h.elements().to_vec())
            .collect();
        assert!(!is_relative_family(
            rdf.group().cyclic_orders(),
            &bad,
            &forbidden,
            rdf.lambda()
        ));
        let sets: Vec<KSet> = bad.into_iter().map(|b| KSet::new(b).unwrap()).collect();
        assert!(RelativeDifferenceFamily::new(
            rdf.carrier().clone(),
            rdf.forbidden().clone(),
            rdf.k(),
            rdf.lambda(),
            sets
        )
        .is_err());
    }
    fixtures.len()
}
