use std::path::Path;
use std::sync::Arc;

use additive_designs::algebra::AbelianGroup;
use additive_designs::analysis::{
    main_status, mod3_obstruction, parse_factored, strict_additive_necessary,
    super_regular_necessary, trivial_additive, two_pow_three_orders, MainStatus, Mod3Status,
};
use additive_designs::carrier::Carrier;
use additive_designs::catalog;
use additive_designs::designs::{
    ag_design, anomaly_witness, develop, verify_design, verify_super_regular, AnomalyVerdict,
    Design,
};
use additive_designs::error::Error;
use additive_designs::families::{
    jungnickel_compose, paley_sdf, paley_union_sdf, verify_dm, verify_rdf, verify_sdf, zero_sum_dm,
    RelativeDifferenceFamily, StrongDifferenceFamily,
};
use additive_designs::format::{parse_family, FamilyFile, Role};
use additive_designs::gf::{parse_polynomial, FiniteField, SubgroupSpec};
use additive_designs::lifting::{
    apply_multipliers, build_psi, extend_field, greedy_lift_any_psi, signed_lift, simple_lift,
    zero_sum_adjust, zero_sum_lift, Lifting, MultiplierSet,
};
use anyhow::{anyhow, bail, Context};
use log::info;
use num_traits::Zero;
use serde_json::json;

use crate::certificate::{self, coverage_summary};
use crate::{BuildCommand, CatalogCommand, Command, LiftStrategy, Outcome, VerifyRole};

pub fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Verify {
            role,
            file,
            no_cert,
        } => verify(role, &file, !no_cert),
        Command::Build { what } => build(what),
        Command::Lift {
            file,
            strategy,
            q,
            modulus,
            seed,
            budget,
            psi_attempts,
            signed,
            output,
        } => {
            let sdf = read(&file)?
                .to_sdf()
                .map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let field = field_of(q, modulus.as_deref())?;
            let opts = LiftOptions {
                seed,
                budget,
                psi_attempts,
                signed,
            };
            match lift(&sdf, field, strategy, &opts) {
                Ok(rdf) => emit(&FamilyFile::from_rdf(&rdf), output.as_deref()),
                Err(e @ (Error::NoSolution { .. } | Error::BudgetExhausted { .. })) => {
                    println!("no lifting found: {e}");
                    Ok(Outcome::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Develop { file, output } => {
            let rdf = read(&file)?
                .to_rdf()
                .map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let d = develop(&rdf)?;
            info!("developed {} blocks on {} points", d.block_count(), d.v());
            emit(&FamilyFile::from_design(&d), output.as_deref())
        }
        Command::Extend {
            file,
            degree,
            zero_sum,
            output,
        } => {
            let rdf = read(&file)?
                .to_rdf()
                .map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let mut out = extend_field(&rdf, degree)?;
            if zero_sum {
                out = zero_sum_adjust(&out)?;
            }
            emit(&FamilyFile::from_rdf(&out), output.as_deref())
        }
        Command::Anomaly {
            file,
            p,
            cap,
            no_cert,
        } => anomaly(&file, p, cap, !no_cert),
        Command::Admissibility { v, k } => admissibility(v.as_deref(), k),
        Command::Catalog { what } => match what {
            CatalogCommand::List => {
                for e in catalog::ENTRIES {
                    println!("{:<16} {}", e.name, e.description);
                }
                Ok(Outcome::Positive)
            }
            CatalogCommand::Emit { name, output } => {
                let text = catalog::emit(&name)?;
                write_text(&text, output.as_deref())?;
                Ok(Outcome::Positive)
            }
        },
    }
}

fn read(path: &Path) -> anyhow::Result<FamilyFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => anyhow!("{}:{line}:{column}: {message}", path.display()),
        e => anyhow!("{}: {e}", path.display()),
    })
}

fn write_text(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(file: &FamilyFile, output: Option<&Path>) -> anyhow::Result<Outcome> {
    write_text(&file.render()?, output)?;
    Ok(Outcome::Positive)
}

fn field_of(q: u64, modulus: Option<&str>) -> anyhow::Result<Arc<FiniteField>> {
    let (p, n) = additive_designs::algebra::prime_power(q)
        .ok_or_else(|| anyhow!("{q} is not a prime power"))?;
    let modulus = modulus.map(parse_polynomial).transpose()?;
    Ok(Arc::new(FiniteField::new(p, n, modulus.as_deref())?))
}

fn display_element(carrier: &Carrier, x: usize) -> String {
    match carrier {
        Carrier::Group(g) => g.display(x),
        Carrier::Product { base, field, .. } => {
            let (g, f) = carrier.split(x);
            format!("({}, {})", base.display(g), field.format(f))
        }
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish(ok: bool, input: &Path, cert: Option<serde_json::Value>) -> anyhow::Result<Outcome> {
    if let Some(body) = cert {
        let path = certificate::write(input, body)?;
        info!("certificate written to {}", path.display());
    }
    Ok(if ok {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn verify(role: VerifyRole, path: &Path, write_cert: bool) -> anyhow::Result<Outcome> {
    let file = read(path)?;
    let expected = match role {
        VerifyRole::Sdf => Role::Sdf,
        VerifyRole::Df | VerifyRole::Rdf => Role::Rdf,
        VerifyRole::Dm => Role::Dm,
        VerifyRole::Design => Role::Design,
    };
    if file.role != expected {
        bail!(
            "{}: file has role {}, expected {}",
            path.display(),
            file.role.as_str(),
            expected.as_str()
        );
    }
    let subject = path.display().to_string();
    match expected {
        Role::Sdf => {
            let carrier = file.carrier.build()?.expect("sdf carriers are groups");
            let v = verify_sdf(carrier.flat(), &file.blocks, file.k, file.lambda)?;
            let params = format!("({},{},{})", carrier.order(), file.k, file.lambda);
            if v.is_sdf {
                println!(
                    "SDF{params} {}",
                    if v.is_additive {
                        "additive"
                    } else {
                        "not additive"
                    }
                );
            } else {
                println!("not an SDF{params}");
            }
            let cov = coverage_summary(&v.coverage, |x| display_element(&carrier, x));
            finish(
                v.is_sdf,
                path,
                write_cert.then(|| {
                    json!({
                        "subject": subject, "role": "sdf", "verdict": pass_fail(v.is_sdf),
                        "carrier": carrier.to_string(), "k": file.k, "lambda": file.lambda,
                        "block_sizes": pass_fail(v.sizes_ok), "additive": v.is_additive, "coverage": cov,
                    })
                }),
            )
        }
        Role::Rdf => {
            let carrier = file.carrier.build()?.expect("rdf carriers are groups");
            let spread = file.spread(&carrier)?;
            let v = verify_rdf(carrier.flat(), &file.blocks, &spread, file.k, file.lambda)?;
            let orders: Vec<String> = spread
                .members()
                .iter()
                .map(|h| h.order().to_string())
                .collect();
            let params = format!(
                "({}, {{{}}}, {}, {})",
                carrier,
                orders.join(","),
                file.k,
                file.lambda
            );
            if v.is_rdf {
                println!(
                    "DF{params} {}",
                    if v.is_additive {
                        "additive"
                    } else {
                        "not additive"
                    }
                );
            } else {
                println!("not a DF{params}");
            }
            let cov = coverage_summary(&v.coverage, |x| display_element(&carrier, x));
            finish(
                v.is_rdf,
                path,
                write_cert.then(|| {
                    json!({
                        "subject": subject, "role": "rdf", "verdict": pass_fail(v.is_rdf),
                        "carrier": carrier.to_string(), "forbidden_orders": orders, "k": file.k,
                        "lambda": file.lambda, "block_sizes": pass_fail(v.sizes_ok), "sets": pass_fail(v.sets_ok),
                        "blocks": file.blocks.len(), "expected_blocks": v.expected_blocks,
                        "additive": v.is_additive, "coverage": cov,
                    })
                }),
            )
        }
        Role::Dm => {
            let carrier = file.carrier.build()?.expect("dm carriers are groups");
            let v = verify_dm(carrier.flat(), &file.blocks, file.k, file.lambda)?;
            let params = format!("({},{},{})", carrier.order(), file.k, file.lambda);
            if v.is_dm {
                println!(
                    "DM{params} {}",
                    if v.is_additive {
                        "additive"
                    } else {
                        "not additive"
                    }
                );
            } else {
                println!("not a DM{params}");
            }
            let failure = v
                .failure
                .map(|(i, j, x)| json!({"rows": [i, j], "element": display_element(&carrier, x)}));
            finish(
                v.is_dm,
                path,
                write_cert.then(|| {
                    json!({
                        "subject": subject, "role": "dm", "verdict": pass_fail(v.is_dm),
                        "group": carrier.to_string(), "k": file.k, "mu": file.lambda,
                        "column_count": pass_fail(v.column_count_ok), "additive": v.is_additive,
                        "failure": failure,
                    })
                }),
            )
        }
        Role::Design => verify_design_file(&file, path, write_cert),
    }
}

fn verify_design_file(file: &FamilyFile, path: &Path, write_cert: bool) -> anyhow::Result<Outcome> {
    let d: Design = file.to_design()?;
    let v = verify_design(&d);
    let params = format!("2-({},{},{})", d.v(), d.k(), d.lambda());
    let sr = d.group().map(|g| verify_super_regular(&d, g)).transpose()?;
    if v.is_design {
        let mut words = vec![if v.is_simple { "simple" } else { "not simple" }.to_string()];
        if let Some(r) = v.replication {
            words.push(format!("r={r}"));
        }
        if let Some(sr) = &sr {
            words.push(
                if sr.is_super_regular {
                    "super-regular"
                } else {
                    "not super-regular"
                }
                .into(),
            );
        }
        println!(
            "{params} design, {} blocks, {}",
            d.block_count(),
            words.join(", ")
        );
    } else {
        println!("not a {params} design");
    }
    let witness = v
        .witness_pair
        .map(|(a, b, c)| json!({"points": [a, b], "blocks": c}));
    let sr_json = sr.as_ref().map(|s| {
        json!({
            "regular": s.is_regular,
            "strictly_additive": s.is_strictly_additive,
            "super_regular": s.is_super_regular,
            "witness_block": s.witness_block,
        })
    });
    finish(
        v.is_design,
        path,
        write_cert.then(|| {
            json!({
                "subject": path.display().to_string(), "role": "design", "verdict": pass_fail(v.is_design),
                "v": d.v(), "k": d.k(), "lambda": d.lambda(), "blocks": d.block_count(),
                "lambda_found": v.lambda_found, "simple": v.is_simple, "replication": v.replication,
                "pair_incidences": v.pair_incidences, "witness_pair": witness, "super_regular": sr_json,
            })
        }),
    )
}

struct LiftOptions {
    seed: Option<u64>,
    budget: u64,
    psi_attempts: u64,
    signed: bool,
}

fn multiply_out(
    lifting: &Lifting,
    m: &MultiplierSet,
) -> additive_designs::error::Result<RelativeDifferenceFamily> {
    let out = apply_multipliers(lifting, m)?;
    match (out.failing_g, out.family) {
        (None, Some(f)) => Ok(f),
        (g, _) => Err(Error::NotVerified(format!(
            "multipliers fail to cover F_q^* (group element {g:?})"
        ))),
    }
}

fn lift(
    sdf: &StrongDifferenceFamily,
    field: Arc<FiniteField>,
    strategy: LiftStrategy,
    opts: &LiftOptions,
) -> additive_designs::error::Result<RelativeDifferenceFamily> {
    let lambda = sdf.lambda() as u64;
    let seed = opts.seed.unwrap_or(0);
    let index_subgroup = |f: &Arc<FiniteField>| -> additive_designs::error::Result<MultiplierSet> {
        MultiplierSet::new(f.clone(), f.subgroup_of_order((f.order() - 1) / lambda)?)
    };
    match strategy {
        LiftStrategy::Greedy => {
            let (_, l, stats) = greedy_lift_any_psi(
                sdf,
                field.clone(),
                lambda,
                opts.psi_attempts,
                opts.budget,
                seed,
            )?;
            info!("greedy search: {stats:?}");
            multiply_out(&l, &index_subgroup(&field)?)
        }
        LiftStrategy::ZeroSum => {
            let mut last = None;
            for t in 0..opts.psi_attempts {
                let psi = build_psi(sdf, lambda, seed.wrapping_add(t))?;
                match zero_sum_lift(sdf, field.clone(), &psi, opts.budget, opts.seed) {
                    Ok((l, stats)) => {
                        info!(
                            "zero-sum search with psi seed {}: {stats:?}",
                            seed.wrapping_add(t)
                        );
                        return multiply_out(&l, &index_subgroup(&field)?);
                    }
                    Err(e @ (Error::NoSolution { .. } | Error::BudgetExhausted { .. })) => {
                        last = Some(e)
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(last.unwrap_or(Error::InvalidArgument("no psi attempts requested".into())))
        }
        LiftStrategy::Signed => {
            let hl = lambda / 2;
            let (l, stats) = signed_lift(sdf, field.clone(), hl, opts.budget, opts.seed)?;
            info!("signed search: {stats:?}");
            multiply_out(
                &l,
                &MultiplierSet::from_spec(field, SubgroupSpec::PlusMinusOneIn(hl))?,
            )
        }
        LiftStrategy::Simple => Ok(simple_lift(sdf, field, None, opts.signed)?.1),
    }
}

fn build(what: BuildCommand) -> anyhow::Result<Outcome> {
    match what {
        BuildCommand::Paley { q, output } => {
            emit(&FamilyFile::from_sdf(&paley_sdf(q)?), output.as_deref())
        }
        BuildCommand::Theorem82 { k, output } => {
            let u = paley_union_sdf(k)?;
            info!(
                "q = {}, r = {}, closed forms match: {}",
                u.q,
                u.r,
                u.matches_closed_forms()
            );
            emit(&FamilyFile::from_sdf(&u.sdf), output.as_deref())
        }
        BuildCommand::ZeroSumDm {
            group,
            k,
            cap,
            output,
        } => {
            let g = AbelianGroup::new(&group)?;
            emit(
                &FamilyFile::from_dm(&zero_sum_dm(&g, k, cap)?),
                output.as_deref(),
            )
        }
        BuildCommand::Ag { n, q, output } => emit(
            &FamilyFile::from_design(&ag_design(n, q)?),
            output.as_deref(),
        ),
        BuildCommand::Jungnickel { sdf, dm, output } => {
            let s = read(&sdf)?
                .to_sdf()
                .map_err(|e| anyhow!("{}: {e}", sdf.display()))?;
            let m = read(&dm)?
                .to_dm()
                .map_err(|e| anyhow!("{}: {e}", dm.display()))?;
            emit(
                &FamilyFile::from_sdf(&jungnickel_compose(&s, &m)?),
                output.as_deref(),
            )
        }
    }
}

fn anomaly(path: &Path, p: u64, cap: usize, write_cert: bool) -> anyhow::Result<Outcome> {
    let d = read(path)?.to_design()?;
    let verdict = anomaly_witness(&d, p, cap)?;
    let body = match &verdict {
        AnomalyVerdict::Anomalous {
            blocks: (i, j),
            size,
        } => {
            println!(
                "anomalous: blocks {:?} and {:?} close up to {size} points, not {}",
                d.block(*i),
                d.block(*j),
                p * p
            );
            json!({"verdict": "anomalous", "blocks": [d.block(*i), d.block(*j)], "closure_size": size})
        }
        AnomalyVerdict::Inconclusive { pairs_scanned } => {
            println!(
                "inconclusive: {pairs_scanned} intersecting block pairs all close up to {} points",
                p * p
            );
            json!({"verdict": "inconclusive", "pairs_scanned": pairs_scanned})
        }
    };
    let cert = write_cert.then(|| {
        let mut b = body;
        b["subject"] = json!(path.display().to_string());
        b["v"] = json!(d.v());
        b["p"] = json!(p);
        b
    });
    finish(verdict.is_anomalous(), path, cert)
}

fn admissibility(v: Option<&str>, k: u64) -> anyhow::Result<Outcome> {
    match v {
        None => {
            let status = main_status(k)?;
            println!("k={k}");
            println!(
                "trivial design additive: {}",
                pass_fail(trivial_additive(k))
            );
            println!("classification: {status}");
            if status == MainStatus::TwoPowTimesThree {
                let n = k.trailing_zeros();
                let t = two_pow_three_orders(n)?;
                println!(
                    "order of 2 mod {}: {} (bound n^2-n = {}); admissible v: {}",
                    k - 1,
                    t.o,
                    t.bound,
                    t.values.join(", ")
                );
            }
            Ok(if status == MainStatus::SinglyEven {
                Outcome::Negative
            } else {
                Outcome::Positive
            })
        }
        Some(v) => {
            let v = parse_factored(v)?;
            let strict = strict_additive_necessary(&v, k);
            let sr = super_regular_necessary(&v, k, None);
            println!("strictly additive 2-({v},{k},1):");
            print!("{}", strict.render());
            println!("super-regular 2-({v},{k},1):");
            print!("{}", sr.render());
            let mut ok = strict.all_pass() && sr.all_pass();
            if (&v % k).is_zero() {
                let r = mod3_obstruction(&v, k)?;
                println!("mod 3 obstruction:");
                print!("{}", r.verdict.render());
                ok &= r.status != Mod3Status::Nonexistent;
            }
            Ok(if ok {
                Outcome::Positive
            } else {
                Outcome::Negative
            })
        }
    }
}
