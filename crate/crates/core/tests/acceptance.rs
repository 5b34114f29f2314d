//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use additive_designs::algebra::AbelianGroup;
use additive_designs::analysis::{
    exclusion_table, mod3_obstruction, strict_additive_necessary, super_regular_necessary,
    table_admissible, trivial_additive, two_pow_three_orders, Mod3Status,
};
use additive_designs::catalog;
use additive_designs::designs::{
    anomaly_witness, develop, verify_design, verify_super_regular, AnomalyVerdict, Design,
    DEFAULT_ANOMALY_CAP,
};
use additive_designs::families::zero_sum_dm;
use additive_designs::families::{
    jungnickel_compose, paley_sdf, paley_union_closed_forms, paley_union_sdf, verify_dm,
    verify_sdf, DifferenceMatrix,
};
use additive_designs::gf::SubgroupSpec;
use additive_designs::lifting::{
    apply_multipliers, check_class_condition, check_signed, extend_field, greedy_lift_any_psi,
    simple_lift, Lifting, MultiplierSet, Strategy,
};
use additive_designs::{FieldElement, FiniteField, RelativeDifferenceFamily};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(label: &str, t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure!(e <= limit, "{label} took {e:.2?}, limit {limit:?}");
    Ok(e)
}

fn forbidden_elements(rdf: &RelativeDifferenceFamily) -> Vec<usize> {
    rdf.forbidden()
        .members()
        .iter()
        .flat_map(|h| h.elements().to_vec())
        .collect()
}

fn oracle_accepts(rdf: &RelativeDifferenceFamily) -> bool {
    common::is_relative_family(
        rdf.group().cyclic_orders(),
        &rdf.raw_blocks(),
        &forbidden_elements(rdf),
        rdf.lambda(),
    )
}

/// Developed design of a catalog family: Steiner, simple, super-regular, anomalous.
fn steiner_pipeline(rdf: &RelativeDifferenceFamily, p: u64, blocks: usize) -> Check {
    ensure!(
        rdf.verdict().is_rdf && rdf.is_additive(),
        "family does not verify as additive"
    );
    ensure!(oracle_accepts(rdf), "oracle rejects the family");
    let d = develop(rdf).map_err(|e| e.to_string())?;
    let v = verify_design(&d);
    ensure!(
        v.is_design && v.lambda_found == Some(1),
        "not a Steiner design: {v:?}"
    );
    ensure!(v.is_simple, "design not simple");
    ensure!(
        d.block_count() == blocks,
        "{} blocks, expected {blocks}",
        d.block_count()
    );
    let sr = verify_super_regular(&d, rdf.group()).map_err(|e| e.to_string())?;
    ensure!(sr.is_super_regular, "not super-regular: {sr:?}");
    let plane = (p * p) as usize;
    match anomaly_witness(&d, p, DEFAULT_ANOMALY_CAP).map_err(|e| e.to_string())? {
        AnomalyVerdict::Anomalous {
            blocks: (i, j),
            size,
        } => {
            ensure!(size > plane, "witness closure {size} not above {plane}");
            let all: Vec<Vec<u32>> = d.blocks().map(<[u32]>::to_vec).collect();
            let oracle = common::closure(&all, d.block(i), d.block(j)).len();
            ensure!(
                oracle == size,
                "oracle closure {oracle} differs from {size}"
            );
            Ok(format!(
                "2-({},{p},1), {} blocks, super-regular, closure of blocks {i},{j} has {size} points",
                d.v(),
                d.block_count()
            ))
        }
        other => Err(format!("no anomaly witness: {other:?}")),
    }
}

fn c01_five_point_sdf() -> Check {
    let g = AbelianGroup::new(&[5]).map_err(|e| e.to_string())?;
    let blocks = vec![vec![0, 1, 1, 4, 4]];
    let t = Instant::now();
    let v = verify_sdf(&g, &blocks, 5, 4).map_err(|e| e.to_string())?;
    let e = within("verify_sdf", t, Duration::from_millis(1))?;
    ensure!(v.is_sdf && v.is_additive, "verdict {v:?}");
    ensure!(
        common::delta_counts(&[5], &blocks).iter().all(|&c| c == 4),
        "oracle coverage not constant 4"
    );
    Ok(format!("(5,5,4)-SDF, additive, verified in {e:.2?}"))
}

fn c02_z5_family() -> Check {
    let t = Instant::now();
    let out = steiner_pipeline(
        &catalog::thm62_z5().to_rdf().map_err(|e| e.to_string())?,
        5,
        775,
    )?;
    within("Z_5 pipeline", t, Duration::from_secs(5))?;
    Ok(out)
}

fn c03_z7_family() -> Check {
    let t = Instant::now();
    let rdf = catalog::thm62_z7().to_rdf().map_err(|e| e.to_string())?;
    ensure!(
        rdf.blocks().len() == 8,
        "{} base blocks",
        rdf.blocks().len()
    );
    let out = steiner_pipeline(&rdf, 7, 343 * 57 / 7)?;
    within("Z_7^3 pipeline", t, Duration::from_secs(30))?;
    Ok(out)
}

fn c04_sigma_prime() -> Check {
    let sigma = catalog::sigma_prime().to_sdf().map_err(|e| e.to_string())?;
    let t = Instant::now();
    let v = verify_sdf(sigma.group(), sigma.blocks(), 15, 42).map_err(|e| e.to_string())?;
    within("verify_sdf", t, Duration::from_millis(10))?;
    ensure!(v.is_sdf && v.is_additive, "verdict {v:?}");
    ensure!(
        v.coverage.map.total() == 630,
        "Delta total {}",
        v.coverage.map.total()
    );
    let counts = common::delta_counts(sigma.group().cyclic_orders(), sigma.blocks());
    ensure!(
        counts.iter().all(|&c| c == 42),
        "oracle coverage not constant 42"
    );
    Ok("(15,15,42)-SDF, additive, Delta total 630".into())
}

fn c05_field_extension() -> Check {
    let t = Instant::now();
    let rdf = catalog::thm62_z5().to_rdf().map_err(|e| e.to_string())?;
    let ext = extend_field(&rdf, 2).map_err(|e| e.to_string())?;
    ensure!(
        ext.blocks().len() == 156,
        "{} base blocks",
        ext.blocks().len()
    );
    ensure!(ext.is_additive(), "extended family not additive");
    let d = develop(&ext).map_err(|e| e.to_string())?;
    let v = verify_design(&d);
    ensure!(v.is_design && v.lambda_found == Some(1), "verdict {v:?}");
    ensure!(
        v.pair_incidences == 4_881_250,
        "{} pair incidences",
        v.pair_incidences
    );
    let sr = verify_super_regular(&d, ext.group()).map_err(|e| e.to_string())?;
    ensure!(sr.is_super_regular, "not super-regular: {sr:?}");
    let e = within("extension pipeline", t, Duration::from_secs(300))?;
    Ok(format!(
        "156 base blocks, 2-(3125,5,1), 4881250 pair incidences, super-regular, {e:.2?}"
    ))
}

fn coset_multiplicity(d: &Design, rdf: &RelativeDifferenceFamily) -> Result<usize, String> {
    let mult = d.block_multiplicities();
    let mut seen = None;
    for h in rdf.forbidden().members() {
        for coset in h.cosets() {
            let c: Vec<u32> = coset.iter().map(|&x| x as u32).collect();
            let m = mult
                .iter()
                .find(|(b, _)| *b == c)
                .map(|(_, m)| *m)
                .unwrap_or(0);
            ensure!(seen.is_none_or(|s| s == m), "coset multiplicities differ");
            seen = Some(m);
        }
    }
    seen.ok_or_else(|| "no cosets".to_string())
}

fn c06_sigma_lift() -> Check {
    let t = Instant::now();
    let sigma = catalog::sigma_prime().to_sdf().map_err(|e| e.to_string())?;
    let f = Arc::new(FiniteField::new(5, 2, Some(&[2, 1, 1])).map_err(|e| e.to_string())?);
    let (_, signed) = simple_lift(&sigma, f.clone(), None, true).map_err(|e| e.to_string())?;
    ensure!(
        signed.lambda() == 21 && signed.is_additive(),
        "signed lift lambda {}",
        signed.lambda()
    );
    ensure!(oracle_accepts(&signed), "oracle rejects the signed lift");
    let d = develop(&signed).map_err(|e| e.to_string())?;
    let v = verify_design(&d);
    ensure!(v.is_design && v.lambda_found == Some(21), "verdict {v:?}");
    ensure!(!v.is_simple, "design is simple");
    let m = coset_multiplicity(&d, &signed)?;
    ensure!(m == 21, "coset blocks repeated {m} times");
    let sr = verify_super_regular(&d, signed.group()).map_err(|e| e.to_string())?;
    ensure!(sr.is_super_regular, "not super-regular: {sr:?}");
    let (_, unsigned) = simple_lift(&sigma, f, None, false).map_err(|e| e.to_string())?;
    let du = develop(&unsigned).map_err(|e| e.to_string())?;
    let vu = verify_design(&du);
    ensure!(vu.lambda_found == Some(42), "unsigned variant {vu:?}");
    let e = within("simple lifts", t, Duration::from_secs(120))?;
    Ok(format!(
        "2-(375,15,21), cosets x21, super-regular; unsigned lambda 42; {e:.2?}"
    ))
}

fn c07_paley_union() -> Check {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (k, q, r) in [(15u64, 5u64, 3u64), (45, 9, 5)] {
        let u = paley_union_sdf(k).map_err(|e| e.to_string())?;
        ensure!(u.q == q && u.r == r, "k={k}: (q,r) = ({},{})", u.q, u.r);
        let lambda = ((k - 1) * r * r) as usize;
        let v = verify_sdf(u.sdf.group(), u.sdf.blocks(), k as usize, lambda)
            .map_err(|e| e.to_string())?;
        ensure!(v.is_sdf && v.is_additive, "k={k}: verdict {v:?}");
        let orders = u.sdf.group().cyclic_orders().to_vec();
        let (a0, ax, b0, bx, s) = paley_union_closed_forms(q, r);
        let alpha = common::delta_counts(&orders, &u.sdf.blocks()[..1]);
        let beta = common::delta_counts(&orders, &u.sdf.blocks()[1..2]);
        let sigma = common::delta_counts(&orders, u.sdf.blocks());
        for x in 0..q as usize {
            let (ea, eb) = if x == 0 { (a0, b0) } else { (ax, bx) };
            ensure!(
                alpha[x] as u64 == ea,
                "k={k}: alpha({x}) = {}, expected {ea}",
                alpha[x]
            );
            ensure!(
                beta[x] as u64 == eb,
                "k={k}: beta({x}) = {}, expected {eb}",
                beta[x]
            );
            ensure!(
                sigma[x] as u64 == s,
                "k={k}: sigma({x}) = {}, expected {s}",
                sigma[x]
            );
            ensure!(
                u.alpha.get(x) == alpha[x] && u.beta.get(x) == beta[x],
                "k={k}: library map differs at {x}"
            );
        }
        ensure!(
            u.matches_closed_forms(),
            "k={k}: library closed-form check fails"
        );
        notes.push(format!(
            "k={k}: alpha=({a0},{ax}) beta=({b0},{bx}) sigma={s}"
        ));
    }
    within("closed forms", t, Duration::from_secs(1))?;
    Ok(notes.join("; "))
}

fn c08_composition() -> Check {
    let t = Instant::now();
    let sdf = paley_sdf(5).map_err(|e| e.to_string())?;
    let z3 = AbelianGroup::new(&[3]).map_err(|e| e.to_string())?;
    let dm = zero_sum_dm(&z3, 5, 1 << 20).map_err(|e| e.to_string())?;
    let c = jungnickel_compose(&sdf, &dm).map_err(|e| e.to_string())?;
    ensure!(
        c.group().order() == 15 && c.k() == 5 && c.lambda() == 108,
        "parameters ({},{},{})",
        c.group().order(),
        c.k(),
        c.lambda()
    );
    let v = verify_sdf(c.group(), c.blocks(), 5, 108).map_err(|e| e.to_string())?;
    ensure!(v.is_sdf && v.is_additive, "verdict {v:?}");
    let counts = common::delta_counts(c.group().cyclic_orders(), c.blocks());
    ensure!(
        counts.iter().all(|&n| n == 108),
        "oracle coverage not constant 108"
    );
    within("composition", t, Duration::from_secs(1))?;
    Ok(format!("additive (15,5,108)-SDF over {}", c.group()))
}

fn dm_by_oracle(columns: &[Vec<usize>], n: usize, k: usize, mu: usize) -> bool {
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let mut counts = vec![0; n];
            for c in columns {
                counts[(c[i] + n - c[j]) % n] += 1;
            }
            counts.iter().all(|&x| x == mu)
        })
    })
}

fn c09_difference_matrices() -> Check {
    let z3 = AbelianGroup::new(&[3]).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (k, mu) in [(3usize, 3usize), (5, 27)] {
        let dm = zero_sum_dm(&z3, k, 1 << 20).map_err(|e| e.to_string())?;
        ensure!(dm.mu() == mu, "k={k}: mu {}", dm.mu());
        let v = verify_dm(&z3, dm.columns(), k, mu).map_err(|e| e.to_string())?;
        ensure!(v.is_dm && v.is_additive, "k={k}: verdict {v:?}");
        ensure!(
            dm_by_oracle(dm.columns(), 3, k, mu),
            "k={k}: oracle rejects"
        );
        let mut bad = dm.columns().to_vec();
        bad[0][0] = (bad[0][0] + 1) % 3;
        let vb = verify_dm(&z3, &bad, k, mu).map_err(|e| e.to_string())?;
        ensure!(!vb.is_dm, "k={k}: perturbed matrix accepted");
        ensure!(
            !dm_by_oracle(&bad, 3, k, mu),
            "k={k}: oracle accepts the perturbation"
        );
        ensure!(
            DifferenceMatrix::new(&z3, k, mu, bad).is_err(),
            "k={k}: constructor accepts the perturbation"
        );
        notes.push(format!("(3,{k},{mu})"));
    }
    Ok(format!(
        "{} verified, perturbations rejected",
        notes.join(" and ")
    ))
}

fn c10_lifting_searches() -> Check {
    let mut notes = Vec::new();

    let t = Instant::now();
    let f25 = Arc::new(FiniteField::new(5, 2, Some(&[2, 1, 1])).map_err(|e| e.to_string())?);
    let one = FieldElement(1);
    let ell = f25.generator();
    let second = vec![vec![
        FieldElement::ZERO,
        one,
        f25.neg(one),
        ell,
        f25.neg(ell),
    ]];
    let sdf = paley_sdf(5).map_err(|e| e.to_string())?;
    let l = Lifting::new(sdf.clone(), f25.clone(), second, Strategy::Given)
        .map_err(|e| e.to_string())?;
    ensure!(
        check_signed(&l, 2).map_err(|e| e.to_string())?.is_none(),
        "signed GF(25) lifting rejected"
    );
    let m = MultiplierSet::from_spec(f25, SubgroupSpec::PlusMinusOneIn(2))
        .map_err(|e| e.to_string())?;
    let out = apply_multipliers(&l, &m).map_err(|e| e.to_string())?;
    let fam = out.family.ok_or("signed multiples do not verify")?;
    ensure!(oracle_accepts(&fam), "oracle rejects the signed multiples");
    let e = within("(a)", t, Duration::from_secs(10))?;
    notes.push(format!(
        "(a) transversal, {} blocks, {e:.2?}",
        fam.blocks().len()
    ));

    let t = Instant::now();
    let f13 = Arc::new(FiniteField::new(13, 1, None).map_err(|e| e.to_string())?);
    let (psi, l, _) =
        greedy_lift_any_psi(&sdf, f13.clone(), 4, 10_000, 100_000, 0).map_err(|e| e.to_string())?;
    ensure!(
        check_class_condition(&l, &psi)
            .map_err(|e| e.to_string())?
            .is_none(),
        "class condition fails"
    );
    let poly = common::PolyField {
        p: 13,
        modulus: f13.modulus().to_vec(),
    };
    let logs = poly.logs(f13.generator().0 as u64);
    let mut pairs = 0;
    for (h, s) in l.second().iter().enumerate() {
        for i in 0..s.len() {
            for j in (0..s.len()).filter(|&j| j != i) {
                let d = poly.sub(s[i].0 as u64, s[j].0 as u64);
                ensure!(
                    d != 0 && logs[&d] % 4 == psi.get(h, i, j),
                    "oracle class mismatch at ({h},{i},{j})"
                );
                pairs += 1;
            }
        }
    }
    ensure!(pairs == 20, "{pairs} ordered pairs");
    let e = within("(b)", t, Duration::from_secs(10))?;
    notes.push(format!("(b) {pairs} ordered pairs pass, {e:.2?}"));

    let t = Instant::now();
    let m = MultiplierSet::new(
        f13.clone(),
        f13.subgroup_of_order(3).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let out = apply_multipliers(&l, &m).map_err(|e| e.to_string())?;
    let fam = out.family.ok_or("greedy multiples do not verify")?;
    let again = additive_designs::families::verify_rdf(
        fam.group(),
        &fam.raw_blocks(),
        fam.forbidden(),
        fam.k(),
        fam.lambda(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        again.is_rdf && oracle_accepts(&fam),
        "multiplied family fails re-verification"
    );
    let e = within("(c)", t, Duration::from_secs(10))?;
    notes.push(format!("(c) re-verified, {e:.2?}"));
    Ok(notes.join("; "))
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn c11_admissibility() -> Check {
    let t = Instant::now();
    // designs developed from additive fixtures: (v, k)
    for (v, k) in [(125u64, 5u64), (343, 7), (3125, 5), (375, 15), (15625, 5)] {
        ensure!(trivial_additive(k), "k={k} flagged as singly even");
        let verdict = strict_additive_necessary(&big(v), k);
        ensure!(verdict.all_pass(), "({v},{k}) fails:\n{verdict}");
    }
    let groups = [
        (125u64, 5u64, vec![5u64, 5, 5]),
        (343, 7, vec![7, 7, 7]),
        (3125, 5, vec![5; 5]),
    ];
    for (v, k, orders) in groups {
        let g = AbelianGroup::new(&orders).map_err(|e| e.to_string())?;
        let verdict = super_regular_necessary(&big(v), k, Some(&g));
        ensure!(verdict.all_pass(), "({v},{k}) fails:\n{verdict}");
    }
    ensure!(
        !trivial_additive(6) && !strict_additive_necessary(&big(126), 15).all_pass(),
        "negative controls pass"
    );
    let verdict = super_regular_necessary(&big(234_375), 15, None);
    ensure!(verdict.all_pass(), "(234375,15) fails:\n{verdict}");

    let rows = exclusion_table();
    ensure!(rows.len() == 6, "{} table rows", rows.len());
    let report = catalog::exclusion_report().map_err(|e| e.to_string())?;
    let lines: Vec<&str> = report.lines().collect();
    let mut inadmissible = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let (v, k) = (row.v_value(), row.k_value());
        if !table_admissible(&v, k) {
            inadmissible.push((i + 1).to_string());
        }
        // v/k mod 3 from the exponents alone
        let mut residue = 1u64;
        for &(p, e) in &row.v {
            let ek = row.k.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e);
            residue = residue * (p % 3).pow(e - ek) % 3;
        }
        let r = mod3_obstruction(&v, k).map_err(|e| e.to_string())?;
        ensure!(
            r.quotient_mod_3 == residue,
            "row {}: residue {} vs {residue}",
            i + 1,
            r.quotient_mod_3
        );
        let (want_status, want_residue) = if i == 2 || i == 3 {
            (Mod3Status::NotExcluded, 1)
        } else {
            (Mod3Status::Nonexistent, 2)
        };
        ensure!(
            r.status == want_status && residue == want_residue,
            "row {}: {:?} with residue {residue}",
            i + 1,
            r.status
        );
        ensure!(
            lines[i].contains(&format!("{want_status:?}")),
            "report line {} is {:?}",
            i + 1,
            lines[i]
        );
    }
    within("admissibility", t, Duration::from_secs(1))?;
    Ok(format!(
        "fixtures agree; (234375,15) admissible; rows 1,2,5,6 nonexistent (residue 2); rows 3,4 reported (residue 1); \
         rows failing the congruence: [{}]",
        inadmissible.join(",")
    ))
}

fn c12_order_of_two() -> Check {
    let t = Instant::now();
    for n in 1..=40u32 {
        let r = two_pow_three_orders(n).map_err(|e| e.to_string())?;
        let bound = (n * n - n) as u64;
        ensure!(r.o > bound, "n={n}: order {} not above {bound}", r.o);
        let m = (3u64 << n) - 1;
        ensure!(
            common::order_of_two_exceeds(m, r.o, bound),
            "n={n}: oracle disagrees on modulus {m}"
        );
    }
    let e = within("orders", t, Duration::from_secs(30))?;
    Ok(format!("n = 1..40, {e:.2?}"))
}

fn c13_x_set_sizes() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut notes = Vec::new();
    for (tt, lambda, q) in [(1usize, 2u64, 25u64), (1, 2, 81), (2, 2, 81)] {
        ensure!(
            q > (tt * tt) as u64 * lambda.pow(2 * tt as u32),
            "q={q} below the bound"
        );
        let (p, n) = common::prime_power(q).unwrap();
        let f = FiniteField::new(p, n, None).map_err(|e| e.to_string())?;
        let poly = common::PolyField {
            p,
            modulus: f.modulus().to_vec(),
        };
        let logs = poly.logs(f.generator().0 as u64);
        let floor = 2 * lambda.pow(tt as u32 - 1) as usize;
        let mut smallest = usize::MAX;
        let all: Vec<u64> = (0..q).collect();
        for _ in 0..1000 {
            let cs: Vec<u64> = all.choose_multiple(&mut rng, tt).copied().collect();
            let cons: Vec<(FieldElement, u64)> = cs
                .iter()
                .map(|&c| (FieldElement(c as u32), rng.gen_range(0..lambda)))
                .collect();
            let x = f.x_set(&cons, lambda).map_err(|e| e.to_string())?;
            let oracle: Vec<u32> = (0..q)
                .filter(|&x| {
                    cons.iter().all(|&(c, g)| {
                        let y = poly.sub(x, c.0 as u64);
                        y != 0 && logs[&y] % lambda == g
                    })
                })
                .map(|x| x as u32)
                .collect();
            ensure!(
                x.iter().map(|e| e.0).collect::<Vec<_>>() == oracle,
                "q={q}: scan disagrees for {cons:?}"
            );
            ensure!(
                x.len() > floor,
                "q={q}, t={tt}: |X| = {} for {cons:?}",
                x.len()
            );
            smallest = smallest.min(x.len());
        }
        notes.push(format!("(t={tt},q={q}) min |X| {smallest} > {floor}"));
    }
    within("x sets", t, Duration::from_secs(30))?;
    Ok(notes.join("; "))
}

fn c14_property_suites() -> Check {
    let t = Instant::now();
    let deltas = common::suites::delta_samples(1000, 14);
    let subgroups = common::suites::multiplicative_subgroups_sum_to_zero(2000);
    let groups = common::suites::zero_sum_iff_not_binary(512);
    let mut planes = 0;
    for (n, p) in [(2u32, 3u64), (2, 5), (3, 3), (3, 5)] {
        planes += common::suites::affine_closures(n, p);
    }
    let fixtures = common::suites::develop_verify_agree();
    Ok(format!(
        "{deltas} Delta samples, {subgroups} subgroups, {groups} groups, {planes} line pairs, {fixtures} fixtures, {:.2?}",
        t.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("five-point SDF over Z_5", c01_five_point_sdf),
        ("Z_5 x F_25 family and design", c02_z5_family),
        ("Z_7^3 family and design", c03_z7_family),
        ("Sigma' over Z_15", c04_sigma_prime),
        ("field extension to F_625", c05_field_extension),
        ("simple lift of Sigma' over GF(25)", c06_sigma_lift),
        ("Paley-union closed forms", c07_paley_union),
        ("SDF and DM composition", c08_composition),
        ("zero-sum difference matrices", c09_difference_matrices),
        ("lifting searches", c10_lifting_searches),
        ("admissibility suite", c11_admissibility),
        ("order of 2 mod 2^n 3 - 1", c12_order_of_two),
        ("X-set sizes", c13_x_set_sizes),
        ("property suites", c14_property_suites),
    ];
    let quiet: Box<dyn Fn(&panic::PanicHookInfo<'_>) + Send + Sync> = Box::new(|_| {});
    panic::set_hook(quiet);
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
