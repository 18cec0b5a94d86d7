//! Batch verification: a TOML config names identities and parameter grids,
//! [`run_suite`] expands the grids and runs every verifier.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::agtp::verify_three_way;
use crate::ast::{verify_ast_bounded, verify_ast_determinant_form, verify_ast_theorem};
use crate::closed_forms::{verify_closed_form, verify_diagonal};
use crate::identities::{self, BoundedWForm, IdentityReport, Unbounded};
use crate::lgv_paths::{verify_path_families, verify_plane_partitions, verify_two_line_arrays, Parity, WMode};
use crate::polyring::{LaurentPoly, Monomial};
use crate::rsk::{verify_orthogonal, verify_rsk_roundtrip, verify_split};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{identity}: missing parameter `{param}`")]
    MissingParam { identity: String, param: String },
    #[error("{identity}: unknown parameter `{param}`")]
    UnknownParam { identity: String, param: String },
    #[error("{identity}: {param} = {value} outside {lo}..{hi}")]
    OutOfRange { identity: String, param: String, value: i64, lo: i64, hi: i64 },
    #[error("bad range `{0}`, expected a..b")]
    BadRange(String),
    #[error("could not start thread pool: {0}")]
    Pool(String),
}

/// One grid value: a single integer, a list, or an inclusive range `"a..b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Int(i64),
    List(Vec<i64>),
    Range(String),
}

impl GridValue {
    pub fn values(&self) -> Result<Vec<i64>, SuiteError> {
        match self {
            GridValue::Int(v) => Ok(vec![*v]),
            GridValue::List(v) => Ok(v.clone()),
            GridValue::Range(s) => {
                let bad = || SuiteError::BadRange(s.clone());
                let (a, b) = s.split_once("..").ok_or_else(bad)?;
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                Ok((a..=b).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub identity: String,
    #[serde(flatten)]
    pub grid: BTreeMap<String, GridValue>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    /// Off by default so reports are byte-identical across runs.
    #[serde(default)]
    pub record_timing: bool,
    #[serde(default)]
    pub verify: Vec<SuiteEntry>,
}

/// The desk-scale suite.
pub const DEFAULT_SUITE: &str = r#"
[[verify]]
identity = "bounded-qr"
n = "1..3"
m = "0..5"

[[verify]]
identity = "bounded-qr"
n = 4
m = "0..3"

[[verify]]
identity = "bounded-w"
n = "1..3"
m = "0..5"

[[verify]]
identity = "bounded-w"
n = 4
m = "0..3"

[[verify]]
identity = "bounded-w-normalized"
n = "1..3"
m = "0..4"

[[verify]]
identity = "littlewood"
n = "1..3"
degree = 6

[[verify]]
identity = "unbounded-kernel"
n = "1..3"
degree = 6

[[verify]]
identity = "unbounded-q"
n = "1..3"
degree = 6

[[verify]]
identity = "unbounded-w"
n = "1..3"
degree = 6

[[verify]]
identity = "unbounded-qr"
n = "1..3"
degree = 6

[[verify]]
identity = "littlewood-bounded"
n = "1..3"
m = "0..4"

[[verify]]
identity = "infinite"
n = "1..3"
degree = 6

[[verify]]
identity = "leftright"
n = "1..4"

[[verify]]
identity = "transform"
m = "0..10"

[[verify]]
identity = "lemma-limit"
n = "1..3"
degree = 2
seed = "0..4"

[[verify]]
identity = "lemma-h"
a = "1..8"
i = "1..8"

[[verify]]
identity = "reciprocity"
n = "1..3"

[[verify]]
identity = "agtp-three-way"
len = "1..4"
max = 4

[[verify]]
identity = "path-families"
n = "1..2"
m = "0..4"

[[verify]]
identity = "path-families"
n = 3
m = "0..3"
w = [0, 1]

[[verify]]
identity = "plane-partitions"
n = "1..3"
l = "0..2"
even = [0, 1]

[[verify]]
identity = "two-line-arrays"
n = "1..2"
degree = 4

[[verify]]
identity = "rsk-roundtrip"
n = "1..3"
max = 2

[[verify]]
identity = "split-orthogonal"
n = "1..2"
max = 4
half = [0, 1]

[[verify]]
identity = "orthogonal"
n = "1..2"
m = "1..4"

[[verify]]
identity = "ast-theorem"
n = "1..5"

[[verify]]
identity = "ast-bounded"
n = "1..4"

[[verify]]
identity = "ast-determinant"
n = "1..4"

[[verify]]
identity = "closed-form-w0"
n = "1..4"
m = "0..6"

[[verify]]
identity = "closed-form-wm1"
n = "1..4"
m = "0..6"

[[verify]]
identity = "closed-form-diagonal"
n = "1..5"
"#;

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<SuiteConfig, SuiteError> {
        Ok(toml::from_str(text)?)
    }

    pub fn default_suite() -> SuiteConfig {
        SuiteConfig::parse(DEFAULT_SUITE).expect("built-in suite parses")
    }

    /// Expands every entry into concrete parameter points, checking ids,
    /// parameter names and ranges. Points rejected by a verifier's own
    /// precondition are dropped and counted.
    pub fn jobs(&self) -> Result<(Vec<Job>, usize), SuiteError> {
        let mut jobs = Vec::new();
        let mut skipped = 0;
        for entry in &self.verify {
            let v = lookup(&entry.identity)?;
            for &(name, _, _) in v.params {
                if !v.optional.contains(&name) && !entry.grid.contains_key(name) {
                    return Err(SuiteError::MissingParam { identity: entry.identity.clone(), param: name.into() });
                }
            }
            let mut axes: Vec<(String, Vec<i64>)> = Vec::new();
            for (key, value) in &entry.grid {
                let &(_, lo, hi) = v.params.iter().find(|(n, _, _)| n == key).ok_or_else(|| SuiteError::UnknownParam {
                    identity: entry.identity.clone(),
                    param: key.clone(),
                })?;
                let vals = value.values()?;
                if let Some(&v) = vals.iter().find(|&&v| v < lo || v > hi) {
                    return Err(SuiteError::OutOfRange { identity: entry.identity.clone(), param: key.clone(), value: v, lo, hi });
                }
                axes.push((key.clone(), vals));
            }
            if axes.is_empty() {
                jobs.push(Job { identity: v.id, params: Params::new() });
                continue;
            }
            for point in axes.iter().map(|(_, v)| v.iter().copied()).multi_cartesian_product() {
                let p: Params = axes.iter().map(|(k, _)| k.clone()).zip(point).collect();
                if (v.valid)(&p) {
                    jobs.push(Job { identity: v.id, params: p });
                } else {
                    skipped += 1;
                }
            }
        }
        Ok((jobs, skipped))
    }
}

pub type Params = BTreeMap<String, i64>;

/// One parameter point of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub identity: &'static str,
    pub params: Params,
}

impl Job {
    /// Runs the verifier; a panic becomes a failed report.
    pub fn run(&self) -> Vec<IdentityReport> {
        let v = lookup(self.identity).expect("job ids come from the registry");
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(|| (v.run)(&self.params))) {
            Ok(r) => r,
            Err(e) => {
                let what = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                let p = self.params.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
                vec![IdentityReport::error(self.identity, p, &what, start)]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_verified(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_verified() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Runs every job of the config, in parallel when `threads` allows.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let (jobs, skipped) = config.jobs()?;
    let work = || jobs.par_iter().map(Job::run).collect::<Vec<_>>();
    let nested = match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| SuiteError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut reports: Vec<IdentityReport> = nested.into_iter().flatten().collect();
    if !config.record_timing {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    let verified = reports.iter().filter(|r| r.verified()).count();
    let summary = Summary { total: reports.len(), verified, failed: reports.len() - verified, skipped };
    Ok(SuiteReport { reports, summary })
}

// ---------------------------------------------------------------------------
// Registry

struct Verifier {
    id: &'static str,
    /// `(name, min, max)`
    params: &'static [(&'static str, i64, i64)],
    optional: &'static [&'static str],
    valid: fn(&Params) -> bool,
    run: fn(&Params) -> Vec<IdentityReport>,
}

fn g(p: &Params, k: &str) -> i64 {
    p[k]
}

fn u(p: &Params, k: &str) -> usize {
    p[k] as usize
}

fn always(_: &Params) -> bool {
    true
}

fn one(r: IdentityReport) -> Vec<IdentityReport> {
    vec![r]
}

fn unbounded(id: &str, p: &Params) -> Vec<IdentityReport> {
    one(identities::verify_unbounded(Unbounded::from_id(id).expect("registered"), u(p, "n"), g(p, "degree") as i32))
}

/// Random univariate Laurent polynomials in `X1` with exponents in `−degree..=degree`.
pub fn random_univariate(n: usize, degree: i32, seed: u64) -> Vec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            LaurentPoly::from_terms((-degree..=degree).map(|e| (Monomial::x_pow(&[e]), rng.gen_range(-3i64..=3))).collect::<Vec<_>>())
        })
        .collect()
}

/// Nonincreasing `n`-tuples with entries in `0..=max` of the given parity.
fn doubled_partitions(n: usize, max: i64, half: bool) -> Vec<Vec<i64>> {
    let parts: Vec<i64> = (0..=max).filter(|v| (v % 2 == 1) == half).collect();
    (0..n)
        .map(|_| parts.iter().copied())
        .multi_cartesian_product()
        .filter(|l| l.windows(2).all(|w| w[0] >= w[1]))
        .collect()
}

fn ast_pairs(n: usize, p: &Params) -> Vec<(usize, usize)> {
    let top = if n <= 1 { 0 } else { 2 * n - 3 };
    match (p.get("p"), p.get("q")) {
        (Some(&a), Some(&b)) => vec![(a as usize, b as usize)],
        _ => (0..=top).flat_map(|a| (a..=top).map(move |b| (a, b))).collect(),
    }
}

fn ast_pair_valid(p: &Params) -> bool {
    let n = u(p, "n");
    let top = if n <= 1 { 0 } else { 2 * n - 3 } as i64;
    match (p.get("p"), p.get("q")) {
        (None, None) => true,
        (Some(&a), Some(&b)) => a <= b && b <= top,
        _ => false,
    }
}

static REGISTRY: &[Verifier] = &[
    Verifier {
        id: "bounded-qr",
        params: &[("n", 1, 4), ("m", 0, 8), ("flip", 0, 10)],
        optional: &["flip"],
        valid: always,
        run: |p| one(identities::verify_bounded_qr_perturbed(u(p, "n"), u(p, "m"), p.get("flip").map(|&f| f as usize))),
    },
    Verifier {
        id: "bounded-w",
        params: &[("n", 1, 4), ("m", 0, 8)],
        optional: &[],
        valid: always,
        run: |p| one(identities::verify_bounded_w(u(p, "n"), u(p, "m"), BoundedWForm::Plain)),
    },
    Verifier {
        id: "bounded-w-normalized",
        params: &[("n", 1, 4), ("m", 0, 8)],
        optional: &[],
        valid: always,
        run: |p| one(identities::verify_bounded_w(u(p, "n"), u(p, "m"), BoundedWForm::Normalized)),
    },
    Verifier { id: "littlewood", params: &[("n", 1, 4), ("degree", 0, 10)], optional: &[], valid: always, run: |p| unbounded("littlewood", p) },
    Verifier {
        id: "unbounded-kernel",
        params: &[("n", 1, 4), ("degree", 0, 10)],
        optional: &[],
        valid: always,
        run: |p| unbounded("unbounded-kernel", p),
    },
    Verifier { id: "unbounded-q", params: &[("n", 1, 4), ("degree", 0, 10)], optional: &[], valid: always, run: |p| unbounded("unbounded-q", p) },
    Verifier { id: "unbounded-w", params: &[("n", 1, 4), ("degree", 0, 10)], optional: &[], valid: always, run: |p| unbounded("unbounded-w", p) },
    Verifier {
        id: "unbounded-qr",
        params: &[("n", 1, 4), ("degree", 0, 10)],
        optional: &[],
        valid: always,
        run: |p| unbounded("unbounded-qr", p),
    },
    Verifier {
        id: "littlewood-bounded",
        params: &[("n", 1, 4), ("m", 0, 8)],
        optional: &[],
        valid: always,
        run: |p| one(identities::verify_littlewood_bounded(u(p, "n"), u(p, "m"))),
    },
    Verifier {
        id: "infinite",
        params: &[("n", 1, 4), ("degree", 0, 10)],
        optional: &[],
        valid: always,
        run: |p| one(identities::verify_infinite(u(p, "n"), g(p, "degree") as i32)),
    },
    Verifier { id: "leftright", params: &[("n", 1, 5)], optional: &[], valid: always, run: |p| one(identities::verify_leftright(u(p, "n"))) },
    Verifier {
        id: "lemma-limit",
        params: &[("n", 1, 4), ("degree", 0, 4), ("seed", 0, i64::MAX)],
        optional: &["seed"],
        valid: always,
        run: |p| {
            let fs = random_univariate(u(p, "n"), g(p, "degree") as i32, p.get("seed").copied().unwrap_or(0) as u64);
            let mut r = identities::verify_lemma_limit(&fs);
            r.params = p.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
            one(r)
        },
    },
    Verifier {
        id: "lemma-h",
        params: &[("a", 1, 12), ("i", 1, 12)],
        optional: &[],
        valid: |p| p["i"] <= p["a"],
        run: |p| one(identities::verify_lemma_h(u(p, "a"), u(p, "i"))),
    },
    Verifier { id: "transform", params: &[("m", 0, 20)], optional: &[], valid: always, run: |p| one(identities::verify_transform(u(p, "m"))) },
    Verifier { id: "reciprocity", params: &[("n", 1, 4)], optional: &[], valid: always, run: |p| one(identities::verify_reciprocity(u(p, "n"))) },
    Verifier {
        id: "agtp-three-way",
        params: &[("len", 1, 4), ("max", 0, 6), ("limit", 1, i64::MAX)],
        optional: &["limit"],
        valid: |p| p["len"] <= p["max"] + 1,
        run: |p| {
            let limit = p.get("limit").map_or(usize::MAX, |&l| l as usize);
            (0..=g(p, "max")).combinations(u(p, "len")).take(limit).map(|b| verify_three_way(&b)).collect()
        },
    },
    Verifier {
        id: "path-families",
        params: &[("n", 1, 3), ("m", 0, 5), ("w", 0, 1)],
        optional: &["w"],
        valid: always,
        run: |p| {
            let w = match p.get("w") {
                None => WMode::Symbolic,
                Some(0) => WMode::Zero,
                Some(_) => WMode::One,
            };
            one(verify_path_families(u(p, "n"), u(p, "m"), w))
        },
    },
    Verifier {
        id: "plane-partitions",
        params: &[("n", 1, 3), ("l", 0, 3), ("even", 0, 1)],
        optional: &[],
        valid: |p| p["l"] + 2 - p["even"] >= p["n"],
        run: |p| {
            let parity = if p["even"] == 1 { Parity::Even } else { Parity::Odd };
            one(verify_plane_partitions(u(p, "n"), u(p, "l"), parity))
        },
    },
    Verifier {
        id: "two-line-arrays",
        params: &[("n", 1, 3), ("degree", 0, 8)],
        optional: &[],
        valid: always,
        run: |p| one(verify_two_line_arrays(u(p, "n"), g(p, "degree") as i32)),
    },
    Verifier {
        id: "rsk-roundtrip",
        params: &[("n", 1, 4), ("max", 0, 3)],
        optional: &[],
        valid: always,
        run: |p| one(verify_rsk_roundtrip(u(p, "n"), p["max"] as u32)),
    },
    Verifier {
        id: "split-orthogonal",
        params: &[("n", 1, 3), ("max", 0, 6), ("half", 0, 1)],
        optional: &[],
        valid: |p| p["half"] == 0 || p["max"] >= 1,
        run: |p| doubled_partitions(u(p, "n"), g(p, "max"), p["half"] == 1).iter().map(|l| verify_split(l)).collect(),
    },
    Verifier {
        id: "orthogonal",
        params: &[("n", 1, 3), ("m", 1, 6)],
        optional: &[],
        valid: always,
        run: |p| one(verify_orthogonal(u(p, "n"), u(p, "m"))),
    },
    Verifier { id: "ast-theorem", params: &[("n", 1, 5)], optional: &[], valid: always, run: |p| one(verify_ast_theorem(u(p, "n"))) },
    Verifier {
        id: "ast-bounded",
        params: &[("n", 1, 4), ("p", 0, 5), ("q", 0, 5)],
        optional: &["p", "q"],
        valid: ast_pair_valid,
        run: |p| ast_pairs(u(p, "n"), p).into_iter().map(|(a, b)| verify_ast_bounded(u(p, "n"), a, b)).collect(),
    },
    Verifier {
        id: "ast-determinant",
        params: &[("n", 1, 4), ("p", 0, 5), ("q", 0, 5)],
        optional: &["p", "q"],
        valid: ast_pair_valid,
        run: |p| ast_pairs(u(p, "n"), p).into_iter().map(|(a, b)| verify_ast_determinant_form(u(p, "n"), a, b)).collect(),
    },
    Verifier {
        id: "closed-form-w0",
        params: &[("n", 1, 5), ("m", 0, 10)],
        optional: &[],
        valid: |p| p["m"] >= p["n"] - 1,
        run: |p| one(verify_closed_form(0, u(p, "n"), g(p, "m"))),
    },
    Verifier {
        id: "closed-form-wm1",
        params: &[("n", 1, 5), ("m", 0, 10)],
        optional: &[],
        valid: |p| p["m"] >= p["n"] - 1,
        run: |p| one(verify_closed_form(-1, u(p, "n"), g(p, "m"))),
    },
    Verifier { id: "closed-form-diagonal", params: &[("n", 1, 6)], optional: &[], valid: always, run: |p| one(verify_diagonal(u(p, "n"))) },
];

fn lookup(id: &str) -> Result<&'static Verifier, SuiteError> {
    REGISTRY.iter().find(|s| s.id == id).ok_or_else(|| SuiteError::UnknownIdentity(id.into()))
}

/// All registered identity ids.
pub fn identity_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.id).collect()
}

/// Runs a single identity at one parameter point (the `verify` subcommand).
pub fn verify_one(identity: &str, p: &Params) -> Result<Vec<IdentityReport>, SuiteError> {
    let entry = SuiteEntry { identity: identity.into(), grid: p.iter().map(|(k, v)| (k.clone(), GridValue::Int(*v))).collect() };
    let config = SuiteConfig { verify: vec![entry], record_timing: true, ..SuiteConfig::default() };
    let (jobs, _) = config.jobs()?;
    Ok(jobs.iter().flat_map(Job::run).collect())
}
