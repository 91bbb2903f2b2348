//! Registry of per-pair verification checks driven by `ratcat verify`.
//!
//! Checks of proven identities report `pass`/`fail`. Conjecture probes report
//! `verified`/`refuted`/`inconclusive` and never fail a run, except the cyclic
//! sieving probe on Fuss pairs, where the identity is known.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use ratcat::assoc::{
    build_ass, build_ass_hat, certify_shelling, check_alexander_duality, check_collapse_conjecture,
    check_identities,
};
use ratcat::dyck::{cycle_rectify, enumerate, DyckPath, RunKind, RunWord};
use ratcat::ncpart::{
    csp_check, homogeneous, inhomogeneous, north_top_labels, probe_inhomogeneous_rotation,
    verify_order_filter, verify_promotion_rotation, SetPartition,
};
use ratcat::numbers::{kreweras, narayana, rational_catalan, RunTypeVector};
use ratcat::{CoprimePair, Error, Result, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub operation: &'static str,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pair: CoprimePair,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status.is_failure())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub collapse_budget: u64,
}

type Outcome = Result<(Status, Value)>;

pub struct Check {
    pub name: &'static str,
    /// The library operation the check exercises.
    pub operation: &'static str,
    pub applies: fn(CoprimePair) -> bool,
    run: fn(CoprimePair, &Options) -> Outcome,
}

impl Check {
    pub fn run(&self, pair: CoprimePair, opts: &Options) -> CheckResult {
        let (status, detail) = (self.run)(pair, opts)
            .unwrap_or_else(|e| (Status::Fail, Value::String(e.to_string())));
        CheckResult {
            name: self.name,
            operation: self.operation,
            status,
            detail,
        }
    }
}

fn always(_: CoprimePair) -> bool {
    true
}

fn passed<T: Serialize>(detail: T) -> Outcome {
    Ok((Status::Pass, serde_json::to_value(detail).expect("serialisable")))
}

fn mismatch(pair: CoprimePair, msg: String) -> Error {
    Error::IdentityMismatch(format!("{pair}: {msg}"))
}

fn verdict<W: Serialize>(v: Verdict<W>) -> Outcome {
    let status = match v {
        Verdict::Verified(_) => Status::Verified,
        Verdict::Refuted(_) => Status::Refuted,
        Verdict::Inconclusive(_) => Status::Inconclusive,
    };
    let witness = match v {
        Verdict::Verified(w) | Verdict::Refuted(w) | Verdict::Inconclusive(w) => w,
    };
    Ok((status, serde_json::to_value(witness).expect("serialisable")))
}

fn count_paths(pair: CoprimePair) -> Outcome {
    let n = enumerate(pair).count();
    let cat = rational_catalan(pair);
    if cat != n.into() {
        return Err(mismatch(pair, format!("{n} paths, Cat = {cat}")));
    }
    passed(json!({ "paths": n }))
}

fn partition_roundtrip(pair: CoprimePair) -> Outcome {
    let mut previous: Option<Vec<u32>> = None;
    for d in enumerate(pair) {
        let lambda = d.to_partition();
        if DyckPath::from_partition(pair, &lambda)? != d {
            return Err(mismatch(pair, format!("λ round trip fails on {d}")));
        }
        for kind in [RunKind::Vertical, RunKind::Horizontal] {
            if DyckPath::from_run_word(pair, &d.run_word(kind))? != d {
                return Err(mismatch(pair, format!("{kind:?} run word round trip fails on {d}")));
            }
        }
        if previous.as_ref().is_some_and(|p| p.as_slice() >= lambda.parts()) {
            return Err(mismatch(pair, format!("{d} out of lexicographic order")));
        }
        previous = Some(lambda.0);
    }
    passed(json!({}))
}

fn narayana_census(pair: CoprimePair) -> Outcome {
    let mut census = vec![0u64; pair.a() as usize + 1];
    for d in enumerate(pair) {
        census[d.statistics().nontrivial_runs as usize] += 1;
    }
    for i in 1..=pair.a() {
        let n = narayana(pair, i)?;
        if n != census[i as usize].into() {
            return Err(mismatch(pair, format!("{} paths with {i} runs, Nar = {n}", census[i as usize])));
        }
    }
    passed(json!({ "census": &census[1..] }))
}

fn kreweras_census(pair: CoprimePair) -> Outcome {
    let mut census: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for d in enumerate(pair) {
        *census.entry(d.statistics().run_type.counts().to_vec()).or_default() += 1;
    }
    let all = RunTypeVector::all(pair);
    for r in &all {
        let k = kreweras(pair, r)?;
        let seen = census.get(r.counts()).copied().unwrap_or(0);
        if k != seen.into() {
            return Err(mismatch(pair, format!("run type {:?}: {seen} paths, Krew = {k}", r.counts())));
        }
    }
    passed(json!({ "run_types": all.len() }))
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, word: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if word.len() + 1 == parts {
            word.push(left);
            out.push(word.clone());
            word.pop();
            return;
        }
        for x in 0..=left {
            word.push(x);
            rec(parts, left - x, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Every weak composition of `a` into `b` parts has exactly one Dyck conjugate, so
/// each path is hit by exactly `b` words.
fn cycle_lemma(pair: CoprimePair) -> Outcome {
    let words = compositions(pair.b() as usize, pair.a());
    let mut hits: BTreeMap<String, u32> = BTreeMap::new();
    for letters in &words {
        let (path, _) = cycle_rectify(pair, &RunWord::new(RunKind::Vertical, letters.clone()))?;
        *hits.entry(path.word()).or_default() += 1;
    }
    if let Some((p, k)) = hits.iter().find(|(_, &k)| k != pair.b()) {
        return Err(mismatch(pair, format!("{p} is the conjugate of {k} words")));
    }
    if rational_catalan(pair) != hits.len().into() {
        return Err(mismatch(pair, format!("{} rectified paths", hits.len())));
    }
    passed(json!({ "words": words.len() }))
}

fn shelling(pair: CoprimePair) -> Outcome {
    let cert = certify_shelling(pair)?;
    passed(json!({ "facets": cert.order.len() }))
}

fn identities(pair: CoprimePair) -> Outcome {
    let r = check_identities(pair)?;
    passed(json!({
        "f": r.fh.f,
        "h": r.fh.h,
        "reduced_euler": r.reduced_euler,
        "top_betti": r.betti.degree(r.betti.top_degree()),
    }))
}

fn fuss_equality(pair: CoprimePair) -> Outcome {
    let (ass, hat) = (build_ass(pair)?, build_ass_hat(pair)?);
    if ass.facets() != hat.facets() {
        return Err(mismatch(
            pair,
            format!("Ass has {} facets, Âss has {}", ass.num_facets(), hat.num_facets()),
        ));
    }
    passed(json!({ "facets": ass.num_facets() }))
}

fn collapse(pair: CoprimePair, opts: &Options) -> Outcome {
    verdict(check_collapse_conjecture(pair, opts.collapse_budget)?)
}

fn alexander(pair: CoprimePair) -> Outcome {
    passed(check_alexander_duality(pair)?)
}

fn promotion(pair: CoprimePair) -> Outcome {
    passed(verify_promotion_rotation(pair)?)
}

fn csp(pair: CoprimePair) -> Outcome {
    let r = csp_check(pair)?;
    let status = match (r.holds, pair.is_fuss()) {
        (true, true) => Status::Pass,
        (false, true) => Status::Fail,
        (true, false) => Status::Verified,
        (false, false) => Status::Refuted,
    };
    Ok((status, serde_json::to_value(&r.rows).expect("serialisable")))
}

fn distinct(pair: CoprimePair, parts: &[SetPartition]) -> Result<()> {
    let set: HashSet<&SetPartition> = parts.iter().collect();
    if rational_catalan(pair) != set.len().into() {
        return Err(mismatch(pair, format!("{} distinct partitions", set.len())));
    }
    Ok(())
}

/// Injectivity, noncrossing images, block minima, and the Fuss/classical block sizes.
fn homogeneous_structure(pair: CoprimePair) -> Outcome {
    let paths: Vec<DyckPath> = enumerate(pair).collect();
    let parts = paths.iter().map(homogeneous).collect::<Result<Vec<_>>>()?;
    distinct(pair, &parts)?;
    let fuss_block = pair.is_fuss().then(|| (pair.b() - 1) / pair.a() + 1);
    for (d, mu) in paths.iter().zip(&parts) {
        if !mu.is_noncrossing() {
            return Err(mismatch(pair, format!("μ({d}) = {mu} crosses")));
        }
        if mu.block_minima() != north_top_labels(d) {
            return Err(mismatch(pair, format!("block minima of μ({d}) = {mu}")));
        }
        if let Some(k) = fuss_block {
            if mu.blocks().iter().any(|bl| bl.len() as u32 != k) {
                return Err(mismatch(pair, format!("μ({d}) = {mu} has a block not of size {k}")));
            }
        }
    }
    passed(json!({ "partitions": parts.len() }))
}

/// Injectivity, block count = nontrivial runs, Fuss divisibility, and `NC(n)` for `(n, n+1)`.
fn inhomogeneous_structure(pair: CoprimePair) -> Outcome {
    let paths: Vec<DyckPath> = enumerate(pair).collect();
    let parts = paths.iter().map(inhomogeneous).collect::<Result<Vec<_>>>()?;
    distinct(pair, &parts)?;
    let k = pair.is_fuss().then(|| (pair.b() - 1) / pair.a());
    for (d, pi) in paths.iter().zip(&parts) {
        if !pi.is_noncrossing() {
            return Err(mismatch(pair, format!("π({d}) = {pi} crosses")));
        }
        if pi.blocks().len() as u32 != d.statistics().nontrivial_runs {
            return Err(mismatch(pair, format!("π({d}) = {pi} has the wrong block count")));
        }
        if let Some(k) = k {
            if pi.blocks().iter().any(|bl| !(bl.len() as u32).is_multiple_of(k)) {
                return Err(mismatch(pair, format!("π({d}) = {pi} is not {k}-divisible")));
            }
        }
    }
    if pair.b() == pair.a() + 1 {
        let image: HashSet<SetPartition> = parts.iter().cloned().collect();
        let all: HashSet<SetPartition> = SetPartition::all_noncrossing(pair.a()).into_iter().collect();
        if image != all {
            return Err(mismatch(pair, "image is not all of NC(a)".into()));
        }
    }
    passed(json!({ "partitions": parts.len() }))
}

fn order_filter(pair: CoprimePair) -> Outcome {
    passed(verify_order_filter(pair)?)
}

fn rotation_closure(pair: CoprimePair) -> Outcome {
    verdict(probe_inhomogeneous_rotation(pair)?)
}

macro_rules! plain {
    ($f:ident) => {{
        fn wrapped(p: CoprimePair, _: &Options) -> Outcome {
            $f(p)
        }
        wrapped
    }};
}

/// Largest `b` for the homology-based duality check; beyond it the hat complexes
/// are too large for exact elimination at desk scale.
pub const ALEXANDER_MAX_B: u32 = 9;

pub fn registry() -> Vec<Check> {
    vec![
        Check { name: "enumerate", operation: "dyck::enumerate", applies: always, run: plain!(count_paths) },
        Check { name: "partition", operation: "dyck::to_partition", applies: always, run: plain!(partition_roundtrip) },
        Check { name: "narayana", operation: "numbers::narayana", applies: always, run: plain!(narayana_census) },
        Check { name: "kreweras", operation: "numbers::kreweras", applies: always, run: plain!(kreweras_census) },
        Check { name: "cycle-lemma", operation: "dyck::cycle_rectify", applies: always, run: plain!(cycle_lemma) },
        Check { name: "shelling", operation: "assoc::shelling_order", applies: always, run: plain!(shelling) },
        Check { name: "identities", operation: "assoc::check_identities", applies: always, run: plain!(identities) },
        Check { name: "fuss", operation: "assoc::build_ass_hat", applies: CoprimePair::is_fuss, run: plain!(fuss_equality) },
        Check { name: "collapse", operation: "assoc::check_collapse_conjecture", applies: always, run: collapse },
        Check {
            name: "alexander",
            operation: "assoc::check_alexander_duality",
            applies: |p| p.b() <= ALEXANDER_MAX_B,
            run: plain!(alexander),
        },
        Check { name: "promotion", operation: "ncpart::verify_promotion_rotation", applies: always, run: plain!(promotion) },
        Check { name: "csp", operation: "ncpart::csp_check", applies: always, run: plain!(csp) },
        Check { name: "homogeneous", operation: "ncpart::homogeneous", applies: always, run: plain!(homogeneous_structure) },
        Check { name: "inhomogeneous", operation: "ncpart::inhomogeneous", applies: always, run: plain!(inhomogeneous_structure) },
        Check { name: "order-filter", operation: "ncpart::verify_order_filter", applies: always, run: plain!(order_filter) },
        Check { name: "rotation", operation: "ncpart::probe_inhomogeneous_rotation", applies: always, run: plain!(rotation_closure) },
    ]
}

pub fn check_names() -> Vec<&'static str> {
    registry().iter().map(|c| c.name).collect()
}

/// Runs the selected checks (all when `only` is empty) on one pair.
pub fn verify_pair(pair: CoprimePair, only: &[String], opts: &Options) -> VerifyReport {
    let start = Instant::now();
    let checks = registry()
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == c.name))
        .filter(|c| (c.applies)(pair))
        .map(|c| c.run(pair, opts))
        .collect();
    VerifyReport {
        pair,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
