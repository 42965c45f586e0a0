//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use mlcheck::hunt::{self, HuntOutcome};
use mlcheck::manifest::CorpusManifest;
use mlcheck::runner::{self, Verdict};
use mlcheck_core::analysis::LatticeAnalysis;
use mlcheck_core::classify::{check_one_absorbing, check_primary, check_two_absorbing, primes, Failure};
use mlcheck_core::constructions::{direct_product, divisor_lattice, flat_diamond};
use mlcheck_core::enumerate::{enumerate_with, Strategy, DEFAULT_BUDGET};
use mlcheck_core::factor::FactorClass;
use mlcheck_core::ring::{ideal_lattice, ring_zn};
use mlcheck_core::{Elem, Lattice};

type Criterion = Result<String, String>;
type Named = (&'static str, fn() -> Criterion);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn flat_diamond_facts() -> Criterion {
    let start = Instant::now();
    let l = flat_diamond();
    let by = |s: &str| l.lookup(s).unwrap();
    let mut ps = primes(&l);
    ps.sort_unstable();
    ensure(ps == vec![by("0"), by("d")], format!("primes {}", l.describe(&ps)))?;
    let b = by("b");
    ensure(common::one_absorbing(&l, b), "b is not OA")?;
    ensure(common::two_absorbing(&l, b), "b is not TA")?;
    ensure(common::primary(&l, b), "b is not primary")?;
    ensure(!common::prime(&l, b), "b is prime")?;
    let a = LatticeAnalysis::new(&l);
    let c = a.element(b);
    ensure(
        c.is_one_absorbing && c.is_two_absorbing && c.is_primary && !c.is_prime,
        "library classification of b disagrees",
    )?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("primes {} ; b OA, TA, primary, not prime", l.describe(&ps)))
}

fn divisor_240_surrogate() -> Criterion {
    let start = Instant::now();
    let l = divisor_lattice(240).unwrap();
    let x15 = l.lookup("15").unwrap();
    let x8 = l.lookup("8").unwrap();
    ensure(check_two_absorbing(&l, x15).is_ok(), "15 is not TA")?;
    let Err(Failure::Triple(a, b, c)) = check_one_absorbing(&l, x15) else {
        return Err("15 has no OA failure triple".into());
    };
    ensure(common::is_oa_failure(&l, x15, (a, b, c)), "triple for 15 does not refute OA")?;
    ensure(check_primary(&l, x8).is_ok(), "8 is not primary")?;
    let Err(Failure::Triple(d, e, f)) = check_one_absorbing(&l, x8) else {
        return Err("8 has no OA failure triple".into());
    };
    ensure(common::is_oa_failure(&l, x8, (d, e, f)), "triple for 8 does not refute OA")?;
    ensure(common::two_absorbing(&l, x15) && !common::one_absorbing(&l, x15), "oracle disagrees on 15")?;
    ensure(common::primary(&l, x8) && !common::one_absorbing(&l, x8), "oracle disagrees on 8")?;
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "15 TA not OA via {} ; 8 primary not OA via {}",
        l.describe(&[a, b, c]),
        l.describe(&[d, e, f])
    ))
}

fn corpus_suite() -> Criterion {
    let start = Instant::now();
    let m = CorpusManifest::default();
    let corpus = m.resolve().map_err(|e| e.to_string())?;
    let props = runner::select(None).unwrap();
    let report = runner::run_corpus(&corpus, &props, None, m.effective_cap().unwrap()).map_err(|e| e.to_string())?;
    let violations: Vec<String> = report
        .properties
        .iter()
        .filter(|p| !p.violations.is_empty())
        .map(|p| format!("{}: {:?}", p.id, p.violations[0]))
        .collect();
    ensure(violations.is_empty(), violations.join("; "))?;
    let vacuous = report.vacuous_mandatory();
    ensure(vacuous.is_empty(), format!("vacuous mandatory {vacuous:?}"))?;
    ensure(report.verdict == Verdict::Pass, format!("verdict {:?}", report.verdict))?;
    within(Duration::from_secs(300), start)?;
    let min_mandatory = report
        .properties
        .iter()
        .filter(|p| p.mandatory)
        .map(|p| p.hypothesis_hits)
        .min()
        .unwrap_or(0);
    Ok(format!(
        "{} properties over {} lattices, 0 violations, min mandatory hits {min_mandatory}, {:?}",
        report.properties.len(),
        corpus.entries.len(),
        start.elapsed()
    ))
}

fn fast_path_agreement() -> Criterion {
    let corpus = CorpusManifest::default().resolve().map_err(|e| e.to_string())?;
    let (mut oafl_checked, mut tafl_checked) = (0, 0);
    for e in &corpus.entries {
        let l = &e.lattice;
        let a = LatticeAnalysis::new(l);
        let oafl = common::factorizes_all(l, common::one_absorbing);
        let tafl = common::factorizes_all(l, common::two_absorbing);
        let oc = a.oafl_characterization(l);
        if oc.applicable {
            oafl_checked += 1;
            ensure(oc.fast_path() == oafl, format!("{}: OAFL fast path {} vs oracle {oafl}", e.id, oc.fast_path()))?;
        }
        let tc = a.local_tafl_characterization(l);
        if tc.applicable {
            tafl_checked += 1;
            ensure(tc.predicted() == tafl, format!("{}: TAFL criterion {} vs oracle {tafl}", e.id, tc.predicted()))?;
            let principal: Vec<Elem> = common::elems(l).into_iter().filter(|&x| common::principal(l, x)).collect();
            let ta: Vec<Elem> = common::elems(l).into_iter().filter(|&x| common::two_absorbing(l, x)).collect();
            let reach = common::products_of(l, &ta);
            let ptafl = principal.iter().all(|&x| reach[x]);
            ensure(tc.ptafl == ptafl, format!("{}: PTAFL {} vs oracle {ptafl}", e.id, tc.ptafl))?;
        }
    }
    ensure(oafl_checked > 0 && tafl_checked > 0, "no applicable lattices")?;
    Ok(format!(
        "OAFL characterization on {oafl_checked} lattices, local TAFL criterion on {tafl_checked}, all agree"
    ))
}

fn structural_cross_checks() -> Criterion {
    let mut tested = 0;
    for n in (2..=200u64).chain([240]) {
        let ideals = ideal_lattice(&ring_zn(n).unwrap()).unwrap().lattice;
        ensure(ideals.is_isomorphic(&divisor_lattice(n).unwrap()), format!("Z/{n}"))?;
        tested += 1;
    }
    let prod = direct_product(&divisor_lattice(4).unwrap(), &divisor_lattice(9).unwrap()).unwrap();
    ensure(prod.is_isomorphic(&divisor_lattice(36).unwrap()), "D4 x D9 vs D36")?;
    let order_first = enumerate_with(Strategy::OrderFirst, 5, DEFAULT_BUDGET, |_| {}).map_err(|e| e.to_string())?;
    let table_first = enumerate_with(Strategy::TableFirst, 5, DEFAULT_BUDGET, |_| {}).map_err(|e| e.to_string())?;
    ensure(order_first.per_order[2] == 1, "order 2 count")?;
    ensure(order_first.per_order[3] == 2, "order 3 count")?;
    ensure(
        order_first.per_order == table_first.per_order,
        format!("strategies differ: {:?} vs {:?}", order_first.per_order, table_first.per_order),
    )?;
    Ok(format!(
        "Z/n vs D_n for {tested} moduli; D4 x D9 = D36; counts {:?} under both strategies",
        &order_first.per_order[2..]
    ))
}

fn counterexample_retrieval() -> Criterion {
    let meet = hunt::conjecture("meet-of-OA-is-OA").unwrap();
    let HuntOutcome::Counterexample { lattice, witness, lattice_id, .. } = hunt::hunt(&meet, 5, 10_000_000).unwrap() else {
        return Err("meet-of-OA-is-OA: no counterexample".into());
    };
    ensure(lattice.size() <= 6, format!("counterexample has {} elements", lattice.size()))?;
    let (x, y) = (witness[0], witness[1]);
    let m = common::meet(&lattice, &[x, y]);
    ensure(
        common::one_absorbing(&lattice, x) && common::one_absorbing(&lattice, y) && !common::one_absorbing(&lattice, m),
        "oracle rejects the meet witness",
    )?;

    let ta = hunt::conjecture("ta-implies-oa").unwrap();
    let HuntOutcome::Counterexample {
        lattice: tl,
        witness: tw,
        lattice_id: tid,
        ..
    } = hunt::hunt(&ta, 5, 10_000_000).unwrap()
    else {
        return Err("ta-implies-oa: no counterexample".into());
    };
    ensure(
        common::two_absorbing(&tl, tw[0]) && !common::one_absorbing(&tl, tw[0]),
        "oracle rejects the TA witness",
    )?;
    let corpus = CorpusManifest::default().resolve().map_err(|e| e.to_string())?;
    let home = corpus
        .entries
        .iter()
        .find(|e| e.lattice.is_isomorphic(&tl))
        .ok_or("TA counterexample lattice not in the default corpus")?;
    Ok(format!(
        "meet: {lattice_id} ({} elements) x,y={} ; TA: {tid} = {} x={}",
        lattice.size(),
        lattice.describe(&[x, y]),
        home.id,
        tl.name(tw[0])
    ))
}

fn class_member(l: &Lattice, class: FactorClass, x: Elem) -> bool {
    match class {
        FactorClass::Prime => common::prime(l, x),
        FactorClass::Primary => common::primary(l, x),
        FactorClass::TwoAbsorbing => common::two_absorbing(l, x),
        FactorClass::OneAbsorbing => common::one_absorbing(l, x),
        FactorClass::PrincipalOneAbsorbing => common::one_absorbing(l, x) && common::principal(l, x),
    }
}

fn witness_validity() -> Criterion {
    let corpus = CorpusManifest::default().resolve().map_err(|e| e.to_string())?;
    let mut count = 0usize;
    for e in &corpus.entries {
        let l = &e.lattice;
        let a = LatticeAnalysis::new(l);
        for class in FactorClass::ALL {
            let members: Vec<bool> = common::elems(l).into_iter().map(|x| class_member(l, class, x)).collect();
            let reach = a.closures.get(class);
            for x in l.elements() {
                let Some(w) = reach.witness(x) else { continue };
                count += 1;
                let product = w.factors.iter().fold(common::top(l), |acc, &f| l.mul(acc, f));
                ensure(product == x, format!("{} {class}: factors of {} multiply to {}", e.id, l.name(x), l.name(product)))?;
                if let Some(&f) = w.factors.iter().find(|&&f| !members[f]) {
                    return Err(format!("{} {class}: factor {} of {} fails the predicate", e.id, l.name(f), l.name(x)));
                }
            }
        }
    }
    Ok(format!("{count} witnesses re-multiplied and re-checked"))
}

fn strip_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

fn json_determinism() -> Criterion {
    let run = || -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_mlcheck"))
            .args(["corpus", "run", "--format", "json"])
            .env_remove("MLCHECK_SIZE_CAP")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    serde_json::from_str::<serde_json::Value>(&a).map_err(|e| e.to_string())?;
    ensure(strip_timing(&a) == strip_timing(&b), "reports differ")?;
    Ok(format!("two runs identical modulo elapsed_ms ({} bytes)", a.len()))
}

fn main() {
    let criteria: [Named; 8] = [
        ("1 flat diamond facts", flat_diamond_facts),
        ("2 divisor-240 surrogate", divisor_240_surrogate),
        ("3 corpus theorem suite", corpus_suite),
        ("4 fast-path/oracle agreement", fast_path_agreement),
        ("5 structural cross-checks", structural_cross_checks),
        ("6 counterexample retrieval", counterexample_retrieval),
        ("7 witness validity", witness_validity),
        ("8 JSON determinism", json_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
