//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qgl2_core::classify::{case1_p, case2_hprime, case2_t, classify, projective_roots, verify, CaseTag, PlaneParams};
use qgl2_core::field::{Rational, Scalar};
use qgl2_core::matrixalg::{check_similarity, manin_relations, ManinRelationSet, QuadraticRelation};
use qgl2_core::plane::{diff_products, dj_plane, transform_diff, Plane, Transform2};
use qgl2_core::report::Report;
use qgl2_core::sampling::{random_double_root_params, random_rational, seeded_params};

const HEIGHT: u64 = 10;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn rows(t1: &Scalar, t2: &Scalar) -> Result<Transform2, String> {
    Transform2::from_rows((Scalar::one(), t1.clone()), (Scalar::one(), t2.clone())).map_err(|e| e.to_string())
}

fn case_one_example() -> Check {
    let params = PlaneParams::new(Rational::from(-2), Rational::from(1), Rational::from(0));
    let c = classify(&params);
    ensure(c.case_tag == CaseTag::DrinfeldJimbo, || format!("case {}", c.case_tag))?;
    ensure(c.q == s(1), || format!("q = {}", c.q))?;
    ensure(c.p == Some(Scalar::frac(-1, 2)), || format!("p = {:?}", c.p))?;
    let expected = rows(&s(1), &s(-2))?;
    ensure(c.transform.as_ref() == Some(&expected), || format!("S = {:?}", c.transform))?;
    let t = transform_diff(&params.plane(), &expected).map_err(|e| e.to_string())?;
    ensure(t.xi_sq().is_zero() && t.eta_sq().is_zero() && t.eta_xi() == &Scalar::frac(1, 2), || {
        format!("re-expansion {t}")
    })?;
    let (h0, r0, p0) = params.scalars();
    let direct = case1_p(&h0, &r0, &p0, &s(1), &s(-2)).map_err(|e| e.to_string())?;
    ensure(direct == Scalar::frac(-1, 2), || format!("closed form p = {direct}"))?;
    Ok("p = -1/2, (A', B', C') = (0, 0, 1/2)".into())
}

fn case_two_example() -> Check {
    let params = PlaneParams::new(Rational::from(1), Rational::from(1), Rational::from(3));
    let c = classify(&params);
    ensure(c.case_tag == CaseTag::Jordanian, || format!("case {}", c.case_tag))?;
    ensure(c.h.is_zero(), || format!("h = {}", c.h))?;
    ensure(c.h_prime == Some(Scalar::frac(1, 2)), || format!("h' = {:?}", c.h_prime))?;
    let (h0, r0, p0) = params.scalars();
    let t = case2_t(&h0, &r0, &p0).map_err(|e| e.to_string())?;
    let t_alt = (s(2) * &h0) / (&p0 - s(1));
    ensure(t == s(1) && t_alt == s(1), || format!("t = {t}, 2h0/(p0-1) = {t_alt}"))?;
    ensure(case2_hprime(&h0, &t) == Ok(Scalar::frac(1, 2)), || "h' closed form".into())?;
    let expected = Transform2::from_rows((s(1), s(0)), (s(1), s(1))).unwrap();
    ensure(c.transform.as_ref() == Some(&expected), || format!("S = {:?}", c.transform))?;
    let out = transform_diff(&params.plane(), &expected).map_err(|e| e.to_string())?;
    ensure(out.xi_sq() == &Scalar::frac(1, 2) && out.eta_sq().is_zero() && out.eta_xi() == &s(-1), || {
        format!("relations {out}")
    })?;
    ensure(out.alpha().is_one() && out.beta().is_zero(), || format!("coordinates {out}"))?;
    Ok("h' = 1/2, t = 1, relations (1/2, 0, -1)".into())
}

fn closed_forms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sum_checks = 0;
    for _ in 0..1000 {
        let (h0, r0, p0) = (
            Scalar::rational(random_rational(&mut rng, HEIGHT)),
            Scalar::rational(random_rational(&mut rng, HEIGHT)),
            Scalar::rational(random_rational(&mut rng, HEIGHT)),
        );
        let t1 = Scalar::rational(random_rational(&mut rng, HEIGHT));
        let t2 = loop {
            let t = Scalar::rational(random_rational(&mut rng, HEIGHT));
            if t != t1 {
                break t;
            }
        };
        let plane = qgl2_core::plane::input_plane(h0.clone(), r0.clone(), p0.clone());
        let d = diff_products(&plane, &rows(&t1, &t2)?);
        let q = |t: &Scalar| &r0 * t * t + (s(1) - &p0) * t + &h0;
        let cross = &r0 * &t1 * &t2;
        let want = [q(&t1), q(&t2), &h0 + &t2 - &p0 * &t1 + &cross, &h0 + &t1 - &p0 * &t2 + &cross];
        let got = [&d.xi_xi, &d.eta_eta, &d.xi_eta, &d.eta_xi];
        ensure(got.iter().zip(&want).all(|(g, w)| *g == w), || {
            format!("(h0, r0, p0, t1, t2) = ({h0}, {r0}, {p0}, {t1}, {t2}): {got:?} vs {want:?}")
        })?;

        let disc = super_discriminant(&h0, &r0, &p0);
        if r0.is_zero() || disc.is_zero() {
            continue;
        }
        let (u, v, _) = projective_roots(&h0, &r0, &p0).map_err(|e| e.to_string())?;
        let d = diff_products(&plane, &rows(u.slope().unwrap(), v.slope().unwrap())?);
        let sum = &d.xi_eta + &d.eta_xi;
        ensure(sum == -(&disc / &r0), || format!("({h0}, {r0}, {p0}): sum {sum}"))?;
        sum_checks += 1;
    }
    Ok(format!("1000 closed-form checks, {sum_checks} root-sum checks"))
}

fn super_discriminant(h0: &Scalar, r0: &Scalar, p0: &Scalar) -> Scalar {
    (p0 - s(1)).square() - s(4) * h0 * r0
}

fn exhaustive_and_sound() -> Check {
    let mut params = seeded_params(1000, 0, HEIGHT);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    params.extend((0..100).map(|_| random_double_root_params(&mut rng, HEIGHT)));
    let mut counts = [0usize; 4];
    for p in &params {
        let c = classify(p);
        let disc = p.discriminant();
        ensure((c.case_tag == CaseTag::DrinfeldJimbo) == !disc.is_zero(), || {
            format!("{p}: {} with D = {disc}", c.case_tag)
        })?;
        ensure((c.case_tag == CaseTag::Degenerate) == p.on_degenerate_orbit(), || format!("{p}: {}", c.case_tag))?;
        if c.case_tag != CaseTag::Degenerate {
            ensure(c.verified && verify(&c), || format!("{p}: not verified"))?;
        }
        counts[CaseTag::ALL.iter().position(|t| *t == c.case_tag).unwrap()] += 1;
    }
    Ok(format!("1000 seeded + 100 double-root triples; counts {counts:?}"))
}

fn drinfeld_jimbo_samples(seed: u64, wanted: usize) -> Vec<(PlaneParams, qgl2_core::classify::Classification)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < wanted {
        let p = qgl2_core::sampling::random_params(&mut rng, HEIGHT);
        let c = classify(&p);
        if c.case_tag == CaseTag::DrinfeldJimbo && c.p.as_ref().is_some_and(|p| !p.is_zero()) {
            out.push((p, c));
        }
    }
    out
}

fn reciprocity() -> Check {
    for (params, c) in drinfeld_jimbo_samples(5, 200) {
        let p = c.p.as_ref().unwrap();
        let swapped = transform_diff(&params.plane(), &c.transform.as_ref().unwrap().swap_rows())
            .map_err(|e| format!("{params}: {e}"))?;
        let p_swapped = -swapped.eta_xi();
        ensure(&p_swapped * p == s(1), || format!("{params}: p = {p}, swapped {p_swapped}"))?;
    }
    Ok("200 Case I samples".into())
}

fn extension_path() -> Check {
    let (mut irrational, mut negative) = (0, 0);
    for (params, c) in drinfeld_jimbo_samples(6, 200) {
        let d = params.discriminant();
        if d.sqrt_exact().is_some() {
            continue;
        }
        irrational += 1;
        negative += usize::from(d.is_negative());
        let p = c.p.as_ref().unwrap();
        ensure(p.is_rational() || p.extension().radicand() == &d, || {
            format!("{params}: p = {p} outside Q(sqrt({d}))")
        })?;
        ensure((p * &p.conjugate()).is_one(), || format!("{params}: p = {p}, p * conj(p) != 1"))?;
    }
    ensure(irrational >= 50, || format!("only {irrational} non-square samples"))?;
    ensure(negative > 0, || "no D < 0 samples".into())?;
    Ok(format!("{irrational} non-square D ({negative} negative)"))
}

fn classical_fixture() -> Check {
    let plane = dj_plane(s(1), s(1)).map_err(|e| e.to_string())?;
    let got = manin_relations(&plane);
    let commutators =
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(u, v)| QuadraticRelation::commutator(u, v));
    let want = ManinRelationSet::from_generators(plane.clone(), commutators);
    ensure(got.relations() == want.relations(), || format!("{:?}", got.relations()))?;
    let reference = common::rref(
        common::OraclePlane {
            alpha: common::qi(1),
            beta: common::qi(0),
            a: common::qi(0),
            b: common::qi(0),
            c: common::qi(-1),
        }
        .residuals(),
    );
    let rows: Vec<Vec<common::Q>> = got.relations().iter().map(common::relation_q).collect();
    ensure(rows == reference, || "independent expansion differs".into())?;
    Ok("RREF equals the six commutators".into())
}

fn relation_dimension() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let r = |rng: &mut ChaCha8Rng| Scalar::rational(random_rational(rng, HEIGHT));
    let mut failures = Vec::new();
    for _ in 0..100 {
        let alpha = loop {
            let a = r(&mut rng);
            if !a.is_zero() {
                break a;
            }
        };
        let plane = Plane::new(alpha, r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng)).unwrap();
        let dim = manin_relations(&plane).dim();
        if dim != 6 {
            failures.push(format!("{plane}: dim {dim}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("100 random planes".into())
}

fn similarity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let params = qgl2_core::sampling::random_params(&mut rng, HEIGHT);
        let c = classify(&params);
        if !c.verified {
            continue;
        }
        let target = c.canonical_plane().ok_or("verified result without canonical plane")?;
        let report = check_similarity(&params.plane(), &target, c.transform.as_ref().unwrap());
        ensure(report.holds, || format!("{params}: {report}"))?;
        checked += 1;
    }
    Ok("200 verified classifications".into())
}

fn degenerate_witness() -> Check {
    let params = PlaneParams::new(Rational::from(2), Rational::frac(1, 2), Rational::from(-1));
    let c = classify(&params);
    ensure(c.case_tag == CaseTag::Degenerate, || format!("case {}", c.case_tag))?;
    let plane = params.plane();
    let mut tried = 0;
    for m in 0..7i64.pow(4) {
        let e: Vec<i64> = (0..4).map(|k| (m / 7i64.pow(k)) % 7 - 3).collect();
        let Ok(t) = Transform2::new(s(e[0]), s(e[1]), s(e[2]), s(e[3])) else {
            continue;
        };
        tried += 1;
        let Ok(out) = transform_diff(&plane, &t) else {
            continue;
        };
        let coordinates = out.alpha().is_one() && out.beta().is_zero();
        let drinfeld_jimbo = out.xi_sq().is_zero() && out.eta_sq().is_zero();
        let jordanian = out.eta_sq().is_zero() && out.eta_xi() == &s(-1);
        ensure(!(coordinates && (drinfeld_jimbo || jordanian)), || format!("{t} reaches {out}"))?;
    }
    Ok(format!("{tried} invertible integer matrices, none canonical"))
}

fn qgl2(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qgl2"))
        .args(args)
        .env_remove("QGL2_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn cli_contract() -> Check {
    let examples: [(&[&str], i32); 3] = [
        (&["classify", "--h0", "-2", "--r0", "1", "--p0", "0", "--verify", "--json"], 0),
        (&["classify", "--h0", "1", "--r0", "1", "--p0", "3", "--verify", "--similarity", "--json"], 0),
        (&["classify", "--h0", "2", "--r0", "1/2", "--p0", "-1", "--json"], 2),
    ];
    for (args, code) in examples {
        let (got, first) = qgl2(args)?;
        ensure(got == Some(code), || format!("{args:?}: exit {got:?}, expected {code}"))?;
        let (_, second) = qgl2(args)?;
        ensure(first == second, || format!("{args:?}: output differs between runs"))?;
        let text = String::from_utf8(first).map_err(|e| e.to_string())?;
        let report = Report::from_json(&text).map_err(|e| format!("{args:?}: {e}"))?;
        ensure(report.to_json() + "\n" == text, || format!("{args:?}: report does not round-trip"))?;
    }
    let args = ["selftest", "--count", "100", "--seed", "42", "--height", "10"];
    let (code, first) = qgl2(&args)?;
    let (_, second) = qgl2(&args)?;
    ensure(code == Some(0), || format!("selftest exit {code:?}"))?;
    ensure(first == second, || "selftest output differs between runs".into())?;
    Ok("exit codes 0/0/2, stable JSON, reproducible selftest".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Case I worked example", Duration::from_secs(1), case_one_example),
        ("Case II worked example", Duration::from_secs(1), case_two_example),
        ("closed-form coefficients", Duration::from_secs(10), closed_forms),
        ("exhaustiveness and soundness", Duration::from_secs(30), exhaustive_and_sound),
        ("root-exchange reciprocity", Duration::from_secs(5), reciprocity),
        ("extension-field path", Duration::from_secs(60), extension_path),
        ("classical relation fixture", Duration::from_secs(1), classical_fixture),
        ("relation-space dimension", Duration::from_secs(30), relation_dimension),
        ("similarity", Duration::from_secs(60), similarity),
        ("degenerate-orbit witness", Duration::from_secs(30), degenerate_witness),
        ("CLI contract", Duration::from_secs(60), cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took {:.2?}, limit {limit:?}", elapsed)),
            Err(e) => ("FAIL", e),
        };
        if outcome.0 == "FAIL" {
            failed += 1;
        }
        println!("{} {:>2} {name} ({:.3} s): {}", outcome.0, i + 1, elapsed.as_secs_f64(), outcome.1);
    }
    println!("acceptance: {}/11 passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
