//! Seeded random parameters and the property checks run by `qgl2 selftest`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{classify, diff_sum_identity, verify, CaseTag, Classification, PlaneParams};
use crate::field::{Rational, Scalar};
use crate::matrixalg::check_similarity;
use crate::plane::transform_diff;

/// Numerator in `[-height, height]`, denominator in `[1, height]`.
pub fn random_rational<R: Rng>(rng: &mut R, height: u64) -> Rational {
    let h = height as i64;
    let n = rng.gen_range(-h..=h);
    let d = rng.gen_range(1..=h);
    Rational::frac(n, d)
}

pub fn random_params<R: Rng>(rng: &mut R, height: u64) -> PlaneParams {
    let h0 = random_rational(rng, height);
    let r0 = random_rational(rng, height);
    let p0 = random_rational(rng, height);
    PlaneParams::new(h0, r0, p0)
}

/// `count` triples drawn from a ChaCha8 stream seeded with `seed`.
pub fn seeded_params(count: usize, seed: u64, height: u64) -> Vec<PlaneParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_params(&mut rng, height)).collect()
}

/// Random triple on the double-root locus `(p0 - 1)^2 = 4 h0 r0`:
/// picks `r0` and `t`, then sets `p0 = 1 + 2 r0 t` and `h0 = r0 t^2`.
pub fn random_double_root_params<R: Rng>(rng: &mut R, height: u64) -> PlaneParams {
    let r0 = random_rational(rng, height);
    let t = random_rational(rng, height);
    let p0 = Rational::one() + Rational::from(2) * r0.clone() * t.clone();
    let h0 = r0.clone() * t.square();
    PlaneParams::new(h0, r0, p0)
}

/// Runs every property check on one triple; returns the classification and
/// the list of violated properties.
pub fn check_params(params: &PlaneParams) -> (Classification, Vec<String>) {
    let c = classify(params);
    let mut failures = Vec::new();
    let mut fail = |what: &str| failures.push(format!("{params}: {what}"));

    let disc = params.discriminant();
    if (c.case_tag == CaseTag::DrinfeldJimbo) != !disc.is_zero() {
        fail("DrinfeldJimbo does not coincide with D != 0");
    }
    if (c.case_tag == CaseTag::Degenerate) != params.on_degenerate_orbit() {
        fail("Degenerate does not coincide with p0 = -1, h0 r0 = 1");
    }
    if c.case_tag == CaseTag::Degenerate {
        return (c, failures);
    }
    if !c.verified || !verify(&c) {
        fail("re-expansion did not reproduce the canonical plane");
    }
    match (&c.transform, c.canonical_plane()) {
        (Some(s), Some(target)) => {
            let report = check_similarity(&params.plane(), &target, s);
            if !report.holds {
                fail(&format!("similarity: {report}"));
            }
        }
        _ => fail("missing transformation or canonical plane"),
    }
    if c.case_tag == CaseTag::DrinfeldJimbo {
        check_drinfeld_jimbo(params, &c, &mut fail);
    }
    (c, failures)
}

fn check_drinfeld_jimbo(params: &PlaneParams, c: &Classification, fail: &mut impl FnMut(&str)) {
    let (Some(p), Some(s)) = (&c.p, &c.transform) else {
        return fail("DrinfeldJimbo without p or transformation");
    };
    if !diff_sum_identity(params, s) {
        fail("xi'eta' + eta'xi' differs from -D/r0");
    }
    if !c.extension.is_trivial() && !(p * &p.conjugate()).is_one() {
        fail("p * conjugate(p) != 1");
    }
    if p.is_zero() {
        return;
    }
    match transform_diff(&params.plane(), &s.swap_rows()) {
        Ok(swapped) => {
            let p_swapped = -swapped.eta_xi();
            if &p_swapped * p != Scalar::one() {
                fail("swapped roots do not give 1/p");
            }
        }
        Err(e) => fail(&format!("swapped roots failed: {e}")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub count: usize,
    pub height: u64,
    pub counts: BTreeMap<CaseTag, usize>,
    pub verified: usize,
    pub failures: Vec<String>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SelftestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "selftest seed={} count={} height={}", self.seed, self.count, self.height);
        for tag in CaseTag::ALL {
            let _ = writeln!(out, "{tag}: {}", self.counts.get(&tag).copied().unwrap_or(0));
        }
        let degenerate = self.counts.get(&CaseTag::Degenerate).copied().unwrap_or(0);
        let _ = writeln!(out, "verified: {}/{}", self.verified, self.count - degenerate);
        let _ = writeln!(out, "passed: {}/{}", self.count - self.failed_triples(), self.count);
        let _ = writeln!(out, "failures: {}", self.failures.len());
        for failure in &self.failures {
            let _ = writeln!(out, "  {failure}");
        }
        f.write_str(&out)
    }
}

impl SelftestSummary {
    fn failed_triples(&self) -> usize {
        let mut triples: Vec<&str> = self.failures.iter().filter_map(|f| f.split_once(": ").map(|(t, _)| t)).collect();
        triples.dedup();
        triples.len()
    }
}

/// Classifies `count` seeded triples in parallel and aggregates the checks.
pub fn selftest(count: usize, seed: u64, height: u64) -> SelftestSummary {
    let params = seeded_params(count, seed, height);
    let results: Vec<(CaseTag, bool, Vec<String>)> = params
        .par_iter()
        .map(|p| {
            let (c, failures) = check_params(p);
            (c.case_tag, c.verified, failures)
        })
        .collect();
    let mut counts = BTreeMap::new();
    let mut verified = 0;
    let mut failures = Vec::new();
    for (tag, ok, fs) in results {
        *counts.entry(tag).or_insert(0) += 1;
        verified += usize::from(ok);
        failures.extend(fs);
    }
    failures.sort();
    SelftestSummary { seed, count, height, counts, verified, failures }
}
