//! Command dispatch shared by the CLI binary, the bundled corpus and the C
//! bindings: every command produces a JSON report (deterministic for a
//! fixed seed) plus a flag saying whether a verification failed.

use crate::complex::{FreeComplex, HomologyTable};
use crate::dg_localize::{run_localization_suite, MultiplicativeSet, SuiteConfig};
use crate::dg_spec::DgAlgebra;
use crate::dimension::{
    is_length_sequence, is_sop_christensen, ldim, ComplexAnalysis, TheoremContext, TheoremVerdict,
};
use crate::error::{Error, Result};
use crate::groebner::MonomialPrime;
use crate::koszul::KoszulAlgebra;
use crate::parse::parse_polynomial_list;
use crate::poly::{PolyRing, Polynomial};
use crate::schema::{load_document, LoadedObject};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Homology,
    Dim,
    Ldim,
    Anchor,
    Sop,
    Dgdim,
    Dgspec,
    LocalizeCheck,
    VerifyTheorem,
    Corpus,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Homology => "homology",
            Command::Dim => "dim",
            Command::Ldim => "ldim",
            Command::Anchor => "anchor",
            Command::Sop => "sop",
            Command::Dgdim => "dgdim",
            Command::Dgspec => "dgspec",
            Command::LocalizeCheck => "localize-check",
            Command::VerifyTheorem => "verify-theorem",
            Command::Corpus => "corpus",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct JobOptions {
    pub seed: u64,
    pub pool: Option<String>,
    pub limit: Option<usize>,
    pub seq: Option<String>,
    pub prime: Option<String>,
    pub filter: Option<String>,
}

/// A parsed job: command, input document text and validated options.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<String>,
    pub options: JobOptions,
}

#[derive(Debug)]
pub struct JobResult {
    pub report: Value,
    pub failed: bool,
    /// Command-specific human rendering; commands without one fall back to
    /// the generic renderer.
    pub text: Option<String>,
}

pub fn run_job(spec: &JobSpec) -> Result<JobResult> {
    if spec.command == Command::Corpus {
        return run_corpus(spec.options.filter.as_deref());
    }
    let input = spec
        .input
        .as_deref()
        .ok_or_else(|| Error::invalid(format!("{} needs an input document", spec.command.name())))?;
    let loaded = load_document(input)?;
    let ring = loaded.ring;
    // complex-valued commands accept a Koszul algebra through its
    // underlying free complex
    let object = match (spec.command, loaded.object) {
        (
            Command::Homology | Command::Dim | Command::Ldim | Command::Anchor,
            LoadedObject::Koszul(a),
        ) => LoadedObject::Complex(a.to_free_complex()),
        (_, object) => object,
    };
    match (spec.command, object) {
        (Command::Homology, LoadedObject::Complex(x)) => homology_report(&x),
        (Command::Dim, LoadedObject::Complex(x)) => dim_report(&x),
        (Command::Ldim, LoadedObject::Complex(x)) => ldim_report(&ring, &x, &spec.options),
        (Command::Anchor, LoadedObject::Complex(x)) => anchor_report(&ring, &x, &spec.options),
        (Command::Sop, LoadedObject::Complex(x)) => sop_complex_report(&ring, &x, &spec.options),
        (Command::Sop, LoadedObject::Koszul(a)) => sop_koszul_report(&ring, &a, &spec.options),
        (Command::Dgdim, LoadedObject::Koszul(a)) => dgdim_report(&DgAlgebra::Koszul(a)),
        (Command::Dgdim, LoadedObject::TrivialDiff(a)) => {
            dgdim_report(&DgAlgebra::TrivialDiff(a))
        }
        (Command::Dgspec, LoadedObject::Koszul(a)) => dgspec_report(&DgAlgebra::Koszul(a)),
        (Command::Dgspec, LoadedObject::TrivialDiff(a)) => {
            dgspec_report(&DgAlgebra::TrivialDiff(a))
        }
        (Command::LocalizeCheck, LoadedObject::MultSet(u)) => {
            localize_report(&u, spec.options.seed)
        }
        (Command::VerifyTheorem, LoadedObject::Koszul(a)) => {
            verify_theorem_report(&ring, &a, &spec.options)
        }
        (command, object) => Err(Error::invalid(format!(
            "{} does not accept a {} document",
            command.name(),
            object_kind_name(&object)
        ))),
    }
}

fn object_kind_name(o: &LoadedObject) -> &'static str {
    match o {
        LoadedObject::Complex(_) => "complex",
        LoadedObject::Koszul(_) => "koszul",
        LoadedObject::TrivialDiff(_) => "trivial_diff_algebra",
        LoadedObject::MultSet(_) => "mult_set",
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn ok(report: Value) -> Result<JobResult> {
    Ok(JobResult { report, failed: false, text: None })
}

fn parse_pool(ring: &Arc<PolyRing>, options: &JobOptions) -> Result<Vec<Polynomial>> {
    match &options.pool {
        Some(s) => parse_polynomial_list(ring, s),
        None => Ok((0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()),
    }
}

fn parse_seq(ring: &Arc<PolyRing>, options: &JobOptions) -> Result<Option<Vec<Polynomial>>> {
    match &options.seq {
        Some(s) => Ok(Some(parse_polynomial_list(ring, s)?)),
        None => Ok(None),
    }
}

/// Seeded homogeneous linear forms, deduplicated and nonzero.
pub fn seeded_linear_forms(ring: &Arc<PolyRing>, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<Polynomial> = Vec::new();
    let mut guard = 0;
    while out.len() < count && guard < 100 * (count + 1) {
        guard += 1;
        let mut f = Polynomial::zero(ring);
        for i in 0..ring.nvars() {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                let term = Polynomial::var(ring, i).scale(&ring.field().from_integer(c));
                f = &f + &term;
            }
        }
        if !f.is_zero() && !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

fn homology_report(x: &FreeComplex) -> Result<JobResult> {
    x.validate()?;
    let table = HomologyTable::compute(x)?;
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|e| {
            json!({
                "degree": e.degree,
                "rank": x.rank(e.degree),
                "generators": e.presentation.rank(),
                "relations": e.presentation.relations().cols(),
                "fitting": e.fitting.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "dim": to_value(&e.dim),
            })
        })
        .collect();
    ok(json!({
        "command": "homology",
        "window": [x.lo(), x.hi()],
        "inf": to_value(&table.inf()),
        "entries": entries,
    }))
}

fn dim_report(x: &FreeComplex) -> Result<JobResult> {
    let analysis = ComplexAnalysis::new(x)?;
    let dims: Vec<Value> = analysis
        .table()
        .dims()
        .into_iter()
        .map(|(degree, dim)| json!({"degree": degree, "dim": to_value(&dim)}))
        .collect();
    ok(json!({
        "command": "dim",
        "inf": to_value(&analysis.inf()),
        "dim": to_value(&analysis.foxby_dim()),
        "homology_dims": dims,
    }))
}

fn ldim_report(ring: &Arc<PolyRing>, x: &FreeComplex, options: &JobOptions) -> Result<JobResult> {
    let pool = parse_pool(ring, options)?;
    let limit = options.limit.unwrap_or(ring.nvars().max(1));
    let report = ldim(x, &pool, limit, "input")?;
    ok(json!({
        "command": "ldim",
        "report": to_value(&report),
        "inf": to_value(&report.inf),
        "ldim_lower": to_value(&report.ldim_lower),
        "ldim_upper": to_value(&report.ldim_upper),
        "verdict": to_value(&report.verdict),
        "witness": to_value(&report.witness),
    }))
}

fn anchor_report(ring: &Arc<PolyRing>, x: &FreeComplex, options: &JobOptions) -> Result<JobResult> {
    let analysis = ComplexAnalysis::new(x)?;
    match &options.prime {
        Some(names) => {
            let prime = parse_prime(ring, names)?;
            let inf_p = analysis.inf_at_prime(&prime)?;
            let dim_p = analysis.dim_at_prime(&prime)?;
            let is_anchor = analysis.is_anchor_prime(&prime)?;
            ok(json!({
                "command": "anchor",
                "prime": prime.describe(ring),
                "inf_at_prime": to_value(&inf_p),
                "dim_at_prime": to_value(&dim_p),
                "is_anchor": is_anchor,
            }))
        }
        None => {
            let entries = analysis.anchor_primes()?;
            ok(json!({
                "command": "anchor",
                "support_size": entries.len(),
                "entries": to_value(&entries),
            }))
        }
    }
}

fn parse_prime(ring: &Arc<PolyRing>, names: &str) -> Result<MonomialPrime> {
    let mut indices = Vec::new();
    for name in names.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::invalid(format!("unknown variable {name:?} in prime")))?;
        indices.push(i);
    }
    Ok(MonomialPrime::new(indices))
}

fn sop_complex_report(
    ring: &Arc<PolyRing>,
    x: &FreeComplex,
    options: &JobOptions,
) -> Result<JobResult> {
    let seq = parse_seq(ring, options)?
        .ok_or_else(|| Error::invalid("sop needs --seq with the candidate sequence"))?;
    let check = is_sop_christensen(x, &seq)?;
    let length_seq = is_length_sequence(x, &seq)?;
    ok(json!({
        "command": "sop",
        "sequence": seq.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "christensen": to_value(&check),
        "is_length_sequence": length_seq,
    }))
}

fn sop_koszul_report(
    ring: &Arc<PolyRing>,
    algebra: &Arc<KoszulAlgebra>,
    options: &JobOptions,
) -> Result<JobResult> {
    let seq = parse_seq(ring, options)?
        .ok_or_else(|| Error::invalid("sop needs --seq with the candidate sequence"))?;
    let mut pool = parse_pool(ring, options)?;
    pool.extend(seeded_linear_forms(ring, 10, options.seed));
    let limit = options.limit.unwrap_or(ring.nvars().max(1));
    let ctx = TheoremContext::new(algebra, &pool, limit)?;
    let certificate = ctx.check_candidate(&seq)?;
    let failed = certificate.agree == Some(false);
    Ok(JobResult {
        report: json!({
            "command": "sop",
            "algebra": ctx.describe(),
            "certificate": to_value(&certificate),
        }),
        failed,
        text: None,
    })
}

fn dgdim_report(algebra: &DgAlgebra) -> Result<JobResult> {
    ok(json!({
        "command": "dgdim",
        "dgdim": algebra.dgdim(),
        "h0_dim": algebra.h0_dim(),
    }))
}

fn dgspec_report(algebra: &DgAlgebra) -> Result<JobResult> {
    let spec = algebra.dg_spec()?;
    let primes: Vec<Value> = spec
        .iter()
        .map(|p| {
            json!({
                "degree0": p.describe_degree0(),
            })
        })
        .collect();
    ok(json!({
        "command": "dgspec",
        "count": spec.len(),
        "primes": primes,
    }))
}

fn localize_report(u: &MultiplicativeSet, seed: u64) -> Result<JobResult> {
    let config = SuiteConfig::default();
    let report = run_localization_suite(u, &config, seed)?;
    let failed = !report.passed;
    Ok(JobResult {
        report: json!({
            "command": "localize-check",
            "report": to_value(&report),
            "passed": report.passed,
            "collapse": to_value(&report.collapse),
        }),
        failed,
        text: None,
    })
}

fn verify_theorem_report(
    ring: &Arc<PolyRing>,
    algebra: &Arc<KoszulAlgebra>,
    options: &JobOptions,
) -> Result<JobResult> {
    let mut pool = parse_pool(ring, options)?;
    pool.extend(seeded_linear_forms(ring, 10, options.seed));
    let limit = options.limit.unwrap_or(ring.nvars().max(1));
    match parse_seq(ring, options)? {
        Some(seq) => {
            let report = crate::dimension::verify_theorem(algebra, &seq, &pool, limit)?;
            let failed = report.verdict == TheoremVerdict::Counterexample;
            Ok(JobResult {
                report: json!({"command": "verify-theorem", "report": to_value(&report)}),
                failed,
                text: None,
            })
        }
        None => {
            let ctx = TheoremContext::new(algebra, &pool, limit)?;
            let max_len = ctx
                .dimensions()
                .h0_dim
                .finite()
                .map(|d| (d.max(0) as usize + 1).min(limit))
                .unwrap_or(limit);
            let candidates = sweep_candidates(&pool, max_len, 100);
            let mut certs = Vec::new();
            let mut conclusive = 0usize;
            let mut disagreements = 0usize;
            for seq in &candidates {
                let cert = ctx.check_candidate(seq)?;
                match cert.agree {
                    Some(true) => conclusive += 1,
                    Some(false) => {
                        conclusive += 1;
                        disagreements += 1;
                    }
                    None => {}
                }
                certs.push(cert);
            }
            let verdict = if disagreements > 0 {
                TheoremVerdict::Counterexample
            } else if ctx.dimensions().all_equal == Some(true) {
                TheoremVerdict::Verified
            } else {
                TheoremVerdict::Inconclusive
            };
            let failed = disagreements > 0 || ctx.dimensions().all_equal == Some(false);
            Ok(JobResult {
                report: json!({
                    "command": "verify-theorem",
                    "algebra": ctx.describe(),
                    "dimensions": to_value(ctx.dimensions()),
                    "candidates": certs.len(),
                    "conclusive": conclusive,
                    "disagreements": disagreements,
                    "verdict": to_value(&verdict),
                    "certificates": to_value(&certs),
                }),
                failed,
                text: None,
            })
        }
    }
}

/// Subsequences of the pool in lexicographic index order, by increasing
/// size, capped.
fn sweep_candidates(
    pool: &[Polynomial],
    max_len: usize,
    cap: usize,
) -> Vec<Vec<Polynomial>> {
    use itertools::Itertools;
    let mut out = Vec::new();
    'outer: for size in 0..=max_len.min(pool.len()) {
        for combo in (0..pool.len()).combinations(size) {
            out.push(combo.into_iter().map(|i| pool[i].clone()).collect());
            if out.len() >= cap {
                break 'outer;
            }
        }
    }
    out
}

fn run_corpus(filter: Option<&str>) -> Result<JobResult> {
    let results = crate::corpus::run_corpus(filter);
    let failed = results.iter().any(|r| !r.passed);
    let entries: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "provenance": r.provenance,
                "operation": r.operation,
                "status": if r.passed { "pass" } else { "fail" },
                "detail": r.detail,
            })
        })
        .collect();
    // text table with timings; the JSON stays timing-free so it is
    // byte-identical across runs
    let mut text = format!(
        "{:<32} {:<16} {:<15} {:<6} {:>8}\n",
        "name", "operation", "provenance", "status", "ms"
    );
    for r in &results {
        text.push_str(&format!(
            "{:<32} {:<16} {:<15} {:<6} {:>8}\n",
            r.name,
            r.operation,
            r.provenance,
            if r.passed { "pass" } else { "fail" },
            r.elapsed_ms
        ));
        if let Some(detail) = &r.detail {
            text.push_str(&format!("    {detail}\n"));
        }
    }
    text.push_str(&format!(
        "{} passed, {} failed\n",
        results.iter().filter(|r| r.passed).count(),
        results.iter().filter(|r| !r.passed).count()
    ));
    Ok(JobResult {
        report: json!({
            "command": "corpus",
            "total": results.len(),
            "passed": results.iter().filter(|r| r.passed).count(),
            "entries": entries,
        }),
        failed,
        text: Some(text),
    })
}

/// Exit code contract: 0 success, 1 parse/usage, 2 verification failure,
/// 3 unsupported input.
pub fn exit_code(outcome: &Result<JobResult>) -> i32 {
    match outcome {
        Ok(r) if r.failed => 2,
        Ok(_) => 0,
        Err(Error::Unsupported(_)) => 3,
        Err(Error::ComplexViolation { .. }) => 2,
        Err(_) => 1,
    }
}

/// Plain-text rendering of a JSON report, for the default output format.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    render_value(report, 0, &mut out);
    out
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", render_scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", render_scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", render_scalar(other))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"{
        "schema_version": 1,
        "ring": {"vars": ["T"], "field": "Q"},
        "object": "complex",
        "data": {"window": [0, 1], "ranks": [1, 2], "differentials": [[["T", "0"]]]}
    }"#;

    fn job(command: Command, input: &str, options: JobOptions) -> JobSpec {
        JobSpec { command, input: Some(input.to_string()), options }
    }

    #[test]
    fn dim_job_matches_expected_subset() {
        let result = run_job(&job(Command::Dim, FIXTURE, JobOptions::default())).unwrap();
        assert_eq!(result.report["inf"], json!(0));
        assert_eq!(result.report["dim"], json!(0));
        assert!(!result.failed);
    }

    #[test]
    fn ldim_job_reports_exact_one() {
        let options = JobOptions { pool: Some("T".into()), ..Default::default() };
        let result = run_job(&job(Command::Ldim, FIXTURE, options)).unwrap();
        assert_eq!(result.report["ldim_upper"], json!(1));
        assert_eq!(result.report["verdict"], json!("exact"));
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let options = JobOptions { seed: 42, ..Default::default() };
        let a = run_job(&job(Command::Ldim, FIXTURE, options.clone())).unwrap();
        let b = run_job(&job(Command::Ldim, FIXTURE, options)).unwrap();
        assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }

    #[test]
    fn wrong_object_kind_is_invalid() {
        let result = run_job(&job(Command::Dgdim, FIXTURE, JobOptions::default()));
        assert!(matches!(result, Err(Error::Invalid(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Ok(JobResult { report: json!({}), failed: false, text: None })),
            0
        );
        assert_eq!(
            exit_code(&Ok(JobResult { report: json!({}), failed: true, text: None })),
            2
        );
        assert_eq!(exit_code(&Err(Error::Parse { offset: 0, msg: String::new() })), 1);
        assert_eq!(exit_code(&Err(Error::unsupported("x"))), 3);
        assert_eq!(
            exit_code(&Err(Error::ComplexViolation {
                degree: 1,
                row: 1,
                col: 1,
                entry: "x".into()
            })),
            2
        );
    }

    #[test]
    fn invalid_complex_is_a_verification_failure() {
        let doc = r#"{
            "schema_version": 1,
            "ring": {"vars": ["x"], "field": "Q"},
            "object": "complex",
            "data": {"window": [0, 2], "ranks": [1, 1, 1],
                     "differentials": [[["x"]], [["1"]]]}
        }"#;
        let outcome = run_job(&job(Command::Homology, doc, JobOptions::default()));
        assert_eq!(exit_code(&outcome), 2);
    }

    #[test]
    fn seeded_forms_are_deterministic() {
        let r = PolyRing::rational(&["x", "y", "z"]);
        let a = seeded_linear_forms(&r, 10, 7);
        let b = seeded_linear_forms(&r, 10, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(seeded_linear_forms(&r, 10, 8) != a);
    }
}
