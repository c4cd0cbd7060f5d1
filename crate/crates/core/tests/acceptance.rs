//! Acceptance gate: one pass/fail line per criterion, nonzero exit on any failure.

use std::time::Instant;

use monoreg::betti::{betti_table_with, regularity_with, upper_koszul_complex, BettiOptions};
use monoreg::degree_complex::{
    check_delta_stability, degree_complex, reg_witness_search_capped, witness_box,
};
use monoreg::harness::{
    check_rrad, document, generate, run_items, CorpusItem, CorpusSpec, HarnessConfig,
    IdealContext, Suite, TheoremId,
};
use monoreg::homology::{reduced_homology, CoefficientField};
use monoreg::powers::{
    integral_closure_power, newton_member, power_membership_witness, NewtonMembershipQuery,
};
use monoreg::stanley_reisner::{link, SimplicialComplex};
use monoreg::{regularity, Monomial, MonomialIdeal, Regularity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const Q: CoefficientField = CoefficientField::Rationals;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if !failures.is_empty() {
        detail.push_str(&format!("; {} failure(s), first: {}", failures.len(), failures[0]));
    }
    Outcome {
        pass: failures.is_empty(),
        detail,
    }
}

fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, rows).unwrap()
}

fn corpus() -> Vec<CorpusItem> {
    generate(&CorpusSpec::acceptance()).expect("acceptance corpus")
}

fn oracle_agreement(items: &[CorpusItem]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for item in items {
        let betti = regularity_with(&item.ideal, Q, &BettiOptions::default());
        let witness = reg_witness_search_capped(&item.ideal, Q, u64::MAX);
        match (betti, witness) {
            (Ok(r), Ok(w)) if r == Regularity::Finite(w.value) => {}
            (b, w) => failures.push(format!(
                "{} {}: betti {:?}, witness {:?}",
                item.name,
                item.ideal,
                b.map(|r| r.to_string()),
                w.map(|w| w.value)
            )),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 300.0 {
        failures.push(format!("took {secs:.1}s, limit 300s"));
    }
    outcome(&failures, format!("{} ideals in {secs:.2}s", items.len()))
}

fn anchors() -> Outcome {
    let mut cases = vec![
        ("(x,y)", MonomialIdeal::prime(2, 0b11), 1),
        ("(x^2,y^2)", ideal(2, &[&[2, 0], &[0, 2]]), 3),
        ("(x^2,xy,y^2)", ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]), 2),
    ];
    for d in 1..=3u32 {
        cases.push(("(x,y)^d", MonomialIdeal::prime(2, 0b11).power(d).unwrap(), d as i64));
    }
    let mut failures = Vec::new();
    for (label, i, expected) in &cases {
        let taylor = regularity(i, Q).unwrap();
        let koszul = regularity_with(i, Q, &BettiOptions::upper_koszul()).unwrap();
        let witness = reg_witness_search_capped(i, Q, u64::MAX).unwrap().value;
        let want = Regularity::Finite(*expected);
        if taylor != want || koszul != want || witness != *expected {
            failures.push(format!(
                "{label} = {i}: taylor {taylor}, koszul {koszul}, witness {witness}, want {expected}"
            ));
        }
    }
    outcome(&failures, format!("{} anchors", cases.len()))
}

fn default_run(items: &[CorpusItem], jobs: usize) -> monoreg::harness::RunOutput {
    run_items(items, &Suite::all(), &HarnessConfig::default(), jobs).expect("corpus run")
}

fn theorem_suites(run: &monoreg::harness::RunOutput) -> Outcome {
    let mut failures: Vec<String> = run.summary.failures.clone();
    failures.extend(run.summary.oracle_mismatches.iter().cloned());
    for r in &run.reports {
        if r.is_skipped() && r.skip_reason().is_none_or(str::is_empty) {
            failures.push(format!("unexplained skip: {}", r.label()));
        }
    }
    for id in TheoremId::ALL {
        if !run.reports.iter().any(|r| r.theorem_id == id && r.holds == Some(true)) {
            failures.push(format!("no passing {id} record"));
        }
    }
    let cfg = HarnessConfig::default();
    let sq = ideal(2, &[&[2, 0], &[0, 2]]);
    let tight = check_rrad(&mut IdealContext::new(&sq, "tightness", &cfg)).unwrap();
    if (tight.lhs, tight.rhs, tight.slack) != (Some(3), Some(3), Some(0)) {
        failures.push(format!("RRAD on {sq}: {:?} {:?} {:?}", tight.lhs, tight.rhs, tight.slack));
    }
    let c = &run.summary.counts;
    outcome(
        &failures,
        format!(
            "{} records: {} passed, {} failed, {} skipped; RRAD slack {} on {sq}",
            c.total,
            c.passed,
            c.failed,
            c.skipped,
            tight.slack.unwrap_or(i64::MIN)
        ),
    )
}

fn delta_stability(items: &[CorpusItem]) -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0u64;
    for item in items {
        let i = &item.ideal;
        let gamma = i.gamma().unwrap() as u64;
        for s in 1..=2u32 {
            for closed in [false, true] {
                let power = if closed {
                    integral_closure_power(i, s).unwrap()
                } else {
                    i.power(s).unwrap()
                };
                let bound = witness_box(&power).unwrap();
                for a in box_points(&bound) {
                    if a.degree() + 1 > gamma * s as u64 {
                        continue;
                    }
                    cells += 1;
                    if !check_delta_stability(i, s, &a, closed).unwrap() {
                        failures.push(format!("{} s={s} closed={closed} a={a}", item.name));
                    }
                }
            }
        }
    }
    outcome(&failures, format!("{cells} cells"))
}

fn proof_identities(run: &monoreg::harness::RunOutput) -> Outcome {
    let mut failures = Vec::new();
    let mut per_kind = std::collections::BTreeMap::<String, i64>::new();
    for r in run.reports.iter().filter(|r| r.theorem_id == TheoremId::ProofIdentity) {
        let kind = r.params["kind"].as_str().unwrap_or("?").to_string();
        *per_kind.entry(kind).or_default() += r.rhs.unwrap_or(0);
        if r.holds != Some(true) {
            failures.push(r.label());
        }
    }
    let total: i64 = per_kind.values().sum();
    if total < 50 {
        failures.push(format!("only {total} cells sampled"));
    }
    for kind in ["symbolic", "normal", "closure"] {
        if per_kind.get(kind).copied().unwrap_or(0) == 0 {
            failures.push(format!("no {kind} cells"));
        }
    }
    outcome(&failures, format!("{total} cells {per_kind:?}"))
}

fn box_points(bound: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

fn euler_poincare(c: &SimplicialComplex, field: CoefficientField) -> bool {
    let chi: i64 = c
        .f_vector()
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum();
    chi == reduced_homology(c, field).euler_characteristic()
}

fn homology_conventions(items: &[CorpusItem]) -> Outcome {
    let mut failures = Vec::new();
    let irr = reduced_homology(&SimplicialComplex::irrelevant(3), Q);
    if irr.get(-1) != 1 || irr.nonzero().count() != 1 {
        failures.push("irrelevant complex".into());
    }
    if !reduced_homology(&SimplicialComplex::void(3), Q).is_zero() {
        failures.push("void complex".into());
    }
    let hollow = SimplicialComplex::from_faces(3, [0b011, 0b110, 0b101]);
    let h = reduced_homology(&hollow, Q);
    if h.get(1) != 1 || h.nonzero().count() != 1 {
        failures.push("hollow triangle".into());
    }
    for d in 0..=4usize {
        let full = (1u64 << (d + 1)) - 1;
        let sphere = reduced_homology(&SimplicialComplex::simplex_boundary(d + 1, full), Q);
        let ball = reduced_homology(&SimplicialComplex::simplex(d + 1, full), Q);
        if sphere.get(d as i32 - 1) != 1 || sphere.nonzero().count() != 1 || !ball.is_zero() {
            failures.push(format!("boundary of the {d}-simplex"));
        }
    }

    let mut complexes = 0usize;
    let mut check = |c: &SimplicialComplex, what: &str, failures: &mut Vec<String>| {
        for field in [Q, CoefficientField::Prime(2)] {
            complexes += 1;
            if !euler_poincare(c, field) {
                failures.push(format!("{what} over {field}"));
            }
        }
    };
    for item in items {
        let i = &item.ideal;
        let targets = [i.clone(), i.power(2).unwrap(), integral_closure_power(i, 2).unwrap()];
        for j in &targets {
            for a in box_points(&witness_box(j).unwrap()) {
                let delta = degree_complex(j, &a).unwrap();
                check(&delta, &format!("{} Δ_{a}", item.name), &mut failures);
                for face in delta.faces() {
                    check(
                        &link(&delta, face).unwrap(),
                        &format!("{} lk Δ_{a}", item.name),
                        &mut failures,
                    );
                }
            }
        }
        for (_, a, _) in betti_table_with(i, Q, &BettiOptions::default()).unwrap().entries() {
            check(&upper_koszul_complex(i, a), &format!("{} K^{a}", item.name), &mut failures);
        }
    }
    outcome(&failures, format!("fixed conventions plus {complexes} Euler-Poincare checks"))
}

fn closure_correctness(items: &[CorpusItem]) -> Outcome {
    let mut failures = Vec::new();
    let golden = [
        (ideal(2, &[&[2, 0], &[0, 2]]), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])),
        (
            ideal(2, &[&[3, 0], &[0, 3]]),
            ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]),
        ),
    ];
    for (i, want) in &golden {
        let got = integral_closure_power(i, 1).unwrap();
        if &got != want {
            failures.push(format!("closure of {i} is {got}, want {want}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut samples, mut confirmed) = (0usize, 0usize);
    for item in items {
        let i = &item.ideal;
        let c1 = integral_closure_power(i, 1).unwrap();
        if integral_closure_power(&c1, 1).unwrap() != c1 {
            failures.push(format!("{}: closure not idempotent", item.name));
        }
        let c2 = integral_closure_power(i, 2).unwrap();
        let c3 = integral_closure_power(i, 3).unwrap();
        if !c2.is_subset_of(&c1).unwrap() || !c3.is_subset_of(&c2).unwrap() {
            failures.push(format!("{}: closures of powers not nested", item.name));
        }
        let rho = i.per_variable_max().unwrap();
        for _ in 0..12 {
            let u = Monomial::new(rho.iter().map(|&r| rng.gen_range(0..=r)).collect());
            samples += 1;
            let lp = newton_member(&NewtonMembershipQuery::new(u.clone(), i, 1));
            let k = power_membership_witness(i, &u, 1, 6).unwrap();
            if k.is_some() && !lp {
                failures.push(format!("{}: u={u} has u^k in I^k but LP says no", item.name));
            }
            if lp != c1.contains(&u).unwrap() {
                failures.push(format!("{}: u={u} LP and closure generators disagree", item.name));
            }
            confirmed += k.is_some() as usize;
        }
    }
    outcome(
        &failures,
        format!("golden sets, {samples} random memberships ({confirmed} with u^k in I^k, k <= 6)"),
    )
}

fn determinism(items: &[CorpusItem], first: monoreg::harness::RunOutput) -> Outcome {
    let cfg = HarnessConfig::default();
    let flags = std::collections::BTreeMap::from([("suite".to_string(), Value::from("all"))]);
    let a = document(first, 42, &cfg, flags.clone()).to_json().unwrap();
    let b = document(default_run(items, 2), 42, &cfg, flags).to_json().unwrap();
    let failures = if a == b {
        Vec::new()
    } else {
        vec!["reports differ between runs".to_string()]
    };
    outcome(&failures, format!("{} bytes, identical across 1 and 2 workers", a.len()))
}

fn main() {
    let items = corpus();
    let run = default_run(&items, 1);
    let results = [
        ("1 oracle agreement", oracle_agreement(&items)),
        ("2 regularity anchors", anchors()),
        ("3 theorem suites", theorem_suites(&run)),
        ("4 delta stability", delta_stability(&items)),
        ("5 proof identities", proof_identities(&run)),
        ("6 homology conventions", homology_conventions(&items)),
        ("7 closure correctness", closure_correctness(&items)),
        ("8 determinism", determinism(&items, run)),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if !all {
        std::process::exit(1);
    }
}
