//! Bundled verification corpus: named fixtures with expected reports,
//! executed through the same job layer as the CLI so the expectations
//! round-trip the report format. Provenance records whether an entry
//! reproduces a worked example or is a derived fixture.

use crate::jobs::{run_job, Command, JobOptions, JobSpec};
use serde_json::Value;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub provenance: &'static str, // "paper-example" | "derived-fixture"
    pub description: &'static str,
    pub command: Command,
    pub input: &'static str,
    pub seq: Option<&'static str>,
    pub pool: Option<&'static str>,
    pub limit: Option<usize>,
    pub seed: u64,
    pub expected: &'static str,
}

#[derive(Debug, Clone)]
pub struct CorpusResult {
    pub name: &'static str,
    pub provenance: &'static str,
    pub operation: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
    /// Wall-clock runtime; rendered in the text table only, never in the
    /// JSON report (which must be byte-identical across runs).
    pub elapsed_ms: u128,
}

const TWO_TERM_FIXTURE: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["T"], "field": "Q"},
    "object": "complex",
    "data": {"window": [0, 1], "ranks": [1, 2], "differentials": [[["T", "0"]]]}
}"#;

const KOSZUL_X_XY: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "Q"},
    "object": "koszul",
    "data": {"elements": ["x"]}
}"#;

const KOSZUL_XY_XY: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "Q"},
    "object": "koszul",
    "data": {"elements": ["x", "y"]}
}"#;

const KOSZUL_PROD_XY: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "Q"},
    "object": "koszul",
    "data": {"elements": ["x*y"]}
}"#;

const KOSZUL_PROD_XYZ: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y", "z"], "field": "Q"},
    "object": "koszul",
    "data": {"elements": ["x*y"]}
}"#;

const TRIVIAL_DIFF_KX: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": [], "field": "Q"},
    "object": "trivial_diff_algebra",
    "data": {"generator": "X", "degree": 2}
}"#;

const MULT_SET_EVEN: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "Q"},
    "object": "mult_set",
    "data": {
        "koszul": ["x", "y"],
        "generators": [[{"coeff": "1 + x", "indices": []}]],
        "closure_bound": 4
    }
}"#;

const MULT_SET_ODD: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x"], "field": "Q"},
    "object": "mult_set",
    "data": {
        "koszul": ["x"],
        "generators": [[{"coeff": "1", "indices": [1]}]],
        "closure_bound": 3
    }
}"#;

const SYZYGY_PAIR: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "Q"},
    "object": "complex",
    "data": {"window": [0, 1], "ranks": [1, 2], "differentials": [[["x", "y"]]]}
}"#;

const KOSZUL_XY_F2: &str = r#"{
    "schema_version": 1,
    "ring": {"vars": ["x", "y"], "field": "F2"},
    "object": "koszul",
    "data": {"elements": ["x", "y"]}
}"#;

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "example-3.2",
            provenance: "paper-example",
            description: "two-term complex over Q[T] with free H_1: inf and dimension",
            command: Command::Dim,
            input: TWO_TERM_FIXTURE,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"inf": 0, "dim": 0}"#,
        },
        CorpusEntry {
            name: "anchor-two-term",
            provenance: "paper-example",
            description: "anchor primes of the two-term fixture: the whole spectrum anchors",
            command: Command::Anchor,
            input: TWO_TERM_FIXTURE,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{
                "support_size": 2,
                "entries": [
                    {"prime": "()", "height": 0, "inf_at_prime": 1, "dim_at_prime": -1, "is_anchor": true},
                    {"prime": "(T)", "height": 1, "inf_at_prime": 0, "dim_at_prime": 0, "is_anchor": true}
                ]
            }"#,
        },
        CorpusEntry {
            name: "example-3.4",
            provenance: "paper-example",
            description: "length dimension of the two-term fixture exceeds its Krull dimension",
            command: Command::Ldim,
            input: TWO_TERM_FIXTURE,
            seq: None,
            pool: Some("T"),
            limit: Some(1),
            seed: 0,
            expected: r#"{"ldim_lower": 0, "ldim_upper": 1, "verdict": "exact", "witness": ["T"]}"#,
        },
        CorpusEntry {
            name: "trivial-diff-kx-dgdim",
            provenance: "paper-example",
            description: "one even generator, zero differential: dgdim exceeds dim H_0",
            command: Command::Dgdim,
            input: TRIVIAL_DIFF_KX,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"dgdim": 1, "h0_dim": 0}"#,
        },
        CorpusEntry {
            name: "trivial-diff-kx-spec",
            provenance: "paper-example",
            description: "DG spectrum of the trivial-differential algebra: zero and irrelevant",
            command: Command::Dgspec,
            input: TRIVIAL_DIFF_KX,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"count": 2, "primes": [{"degree0": []}, {"degree0": ["X"]}]}"#,
        },
        CorpusEntry {
            name: "koszul-corollary-x",
            provenance: "paper-example",
            description: "dgdim of K(x) equals dim R/(x) over Q[x,y]",
            command: Command::Dgdim,
            input: KOSZUL_X_XY,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"dgdim": 1, "h0_dim": 1}"#,
        },
        CorpusEntry {
            name: "koszul-x-spec",
            provenance: "derived-fixture",
            description: "DG primes of K(x) over Q[x,y]: contractions of (x) and (x,y)",
            command: Command::Dgspec,
            input: KOSZUL_X_XY,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"count": 2, "primes": [{"degree0": ["x"]}, {"degree0": ["x", "y"]}]}"#,
        },
        CorpusEntry {
            name: "koszul-xy-spec",
            provenance: "derived-fixture",
            description: "DG primes of K(x,y) over Q[x,y]: only the irrelevant contraction",
            command: Command::Dgspec,
            input: KOSZUL_XY_XY,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"count": 1}"#,
        },
        CorpusEntry {
            name: "koszul-xy-homology",
            provenance: "derived-fixture",
            description: "K(x,y) over Q[x,y] resolves R/(x,y)",
            command: Command::Homology,
            input: KOSZUL_XY_XY,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"inf": 0}"#,
        },
        CorpusEntry {
            name: "koszul-prod-xyz-dgdim",
            provenance: "derived-fixture",
            description: "dgdim of K(xy) over Q[x,y,z]",
            command: Command::Dgdim,
            input: KOSZUL_PROD_XYZ,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"dgdim": 2, "h0_dim": 2}"#,
        },
        CorpusEntry {
            name: "localize-even",
            provenance: "derived-fixture",
            description: "localization property suite at U = {1, 1+x} in K(x,y)",
            command: Command::LocalizeCheck,
            input: MULT_SET_EVEN,
            seq: None,
            pool: None,
            limit: None,
            seed: 11,
            expected: r#"{"passed": true, "collapse": {"detected": false, "zero_equivalence_samples": 0, "passed": true}}"#,
        },
        CorpusEntry {
            name: "localize-odd-collapse",
            provenance: "paper-example",
            description: "an odd-degree denominator collapses the localization",
            command: Command::LocalizeCheck,
            input: MULT_SET_ODD,
            seq: None,
            pool: None,
            limit: None,
            seed: 13,
            expected: r#"{"passed": true, "collapse": {"detected": true, "zero_equivalence_samples": 100, "passed": true}}"#,
        },
        CorpusEntry {
            name: "verify-theorem-koszul-x",
            provenance: "derived-fixture",
            description: "predicate triple and dimension chain for K(x) with candidate (y)",
            command: Command::VerifyTheorem,
            input: KOSZUL_X_XY,
            seq: Some("y"),
            pool: None,
            limit: None,
            seed: 5,
            expected: r#"{"report": {
                "verdict": "verified",
                "dimensions": {"dgdim": 1, "ldim": 1, "foxby_dim": 1, "h0_dim": 1, "all_equal": true},
                "certificate": {"christensen_sop": true, "h0_sop": true, "length_sop": true, "agree": true}
            }}"#,
        },
        CorpusEntry {
            name: "verify-theorem-koszul-xy-empty",
            provenance: "derived-fixture",
            description: "artinian H_0: the empty sequence is a system of parameters",
            command: Command::VerifyTheorem,
            input: KOSZUL_XY_XY,
            seq: Some(""),
            pool: None,
            limit: None,
            seed: 5,
            expected: r#"{"report": {
                "verdict": "verified",
                "dimensions": {"dgdim": 0, "ldim": 0, "foxby_dim": 0, "h0_dim": 0, "all_equal": true},
                "certificate": {"christensen_sop": true, "h0_sop": true, "length_sop": true, "agree": true}
            }}"#,
        },
        CorpusEntry {
            name: "verify-theorem-koszul-prod",
            provenance: "derived-fixture",
            description: "K(xy) over Q[x,y] with the diagonal candidate",
            command: Command::VerifyTheorem,
            input: KOSZUL_PROD_XY,
            seq: Some("x + y"),
            pool: None,
            limit: None,
            seed: 5,
            expected: r#"{"report": {
                "verdict": "verified",
                "dimensions": {"dgdim": 1, "ldim": 1, "foxby_dim": 1, "h0_dim": 1, "all_equal": true}
            }}"#,
        },
        CorpusEntry {
            name: "sop-koszul-x-bad-candidate",
            provenance: "derived-fixture",
            description: "the sequence (x) fails all three predicates for K(x), consistently",
            command: Command::Sop,
            input: KOSZUL_X_XY,
            seq: Some("x"),
            pool: None,
            limit: None,
            seed: 5,
            expected: r#"{"certificate": {
                "christensen_sop": false, "h0_sop": false, "length_sop": false, "agree": true
            }}"#,
        },
        CorpusEntry {
            name: "syzygy-pair-homology",
            provenance: "derived-fixture",
            description: "the complex R^2 -> R with matrix [x y]: H_0 artinian, H_1 free",
            command: Command::Homology,
            input: SYZYGY_PAIR,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{
                "inf": 0,
                "entries": [
                    {"degree": 0, "generators": 1, "fitting": ["x", "y"], "dim": 0},
                    {"degree": 1, "generators": 1, "fitting": [], "dim": 2}
                ]
            }"#,
        },
        CorpusEntry {
            name: "koszul-xy-f2-homology",
            provenance: "derived-fixture",
            description: "K(x,y) over F_2[x,y]: characteristic two changes nothing",
            command: Command::Homology,
            input: KOSZUL_XY_F2,
            seq: None,
            pool: None,
            limit: None,
            seed: 0,
            expected: r#"{"inf": 0, "entries": [
                {"degree": 0, "dim": 0},
                {"degree": 1, "dim": "-infinity"},
                {"degree": 2, "dim": "-infinity"}
            ]}"#,
        },
    ]
}

/// Does `expected` occur inside `actual`? Objects may carry extra keys in
/// `actual`; arrays must match elementwise; scalars exactly.
pub fn subset_matches(expected: &Value, actual: &Value, path: &str) -> std::result::Result<(), String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                match a.get(k) {
                    None => return Err(format!("{path}.{k}: missing")),
                    Some(av) => subset_matches(ev, av, &format!("{path}.{k}"))?,
                }
            }
            Ok(())
        }
        (Value::Array(e), Value::Array(a)) => {
            if e.len() != a.len() {
                return Err(format!("{path}: expected {} items, got {}", e.len(), a.len()));
            }
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                subset_matches(ev, av, &format!("{path}[{i}]"))?;
            }
            Ok(())
        }
        (e, a) => {
            if e == a {
                Ok(())
            } else {
                Err(format!("{path}: expected {e}, got {a}"))
            }
        }
    }
}

/// Minimal glob: `*` matches any run of characters.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    fn rec(p: &[u8], n: &[u8]) -> bool {
        match p.first() {
            None => n.is_empty(),
            Some(b'*') => (0..=n.len()).any(|k| rec(&p[1..], &n[k..])),
            Some(&c) => n.first() == Some(&c) && rec(&p[1..], &n[1..]),
        }
    }
    rec(pattern.as_bytes(), name.as_bytes())
}

pub fn run_entry(entry: &CorpusEntry) -> CorpusResult {
    let started = std::time::Instant::now();
    let spec = JobSpec {
        command: entry.command,
        input: Some(entry.input.to_string()),
        options: JobOptions {
            seed: entry.seed,
            pool: entry.pool.map(|s| s.to_string()),
            limit: entry.limit,
            seq: entry.seq.map(|s| s.to_string()),
            prime: None,
            filter: None,
        },
    };
    let expected: Value = serde_json::from_str(entry.expected).expect("corpus expectations are valid JSON");
    let (passed, detail) = match run_job(&spec) {
        Err(e) => (false, Some(format!("error: {e}"))),
        Ok(result) => match subset_matches(&expected, &result.report, "report") {
            Ok(()) => (true, None),
            Err(msg) => (false, Some(msg)),
        },
    };
    CorpusResult {
        name: entry.name,
        provenance: entry.provenance,
        operation: entry.command.name(),
        passed,
        detail,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

/// Run the bundled corpus (optionally filtered), sorted by entry name.
pub fn run_corpus(filter: Option<&str>) -> Vec<CorpusResult> {
    let mut entries: Vec<CorpusEntry> = corpus()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| glob_match(f, e.name)))
        .collect();
    entries.sort_by_key(|e| e.name);
    entries.iter().map(run_entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_basics() {
        assert!(glob_match("example-3.*", "example-3.2"));
        assert!(glob_match("example-3.*", "example-3.4"));
        assert!(!glob_match("example-3.*", "koszul-x-spec"));
        assert!(glob_match("*", "anything"));
        assert!(glob_match("a*c", "abc"));
        assert!(!glob_match("a*c", "abd"));
    }

    #[test]
    fn subset_matching() {
        let e: Value = serde_json::from_str(r#"{"a": 1, "b": {"c": [1, 2]}}"#).unwrap();
        let a: Value =
            serde_json::from_str(r#"{"a": 1, "extra": true, "b": {"c": [1, 2], "d": 0}}"#).unwrap();
        assert!(subset_matches(&e, &a, "r").is_ok());
        let bad: Value = serde_json::from_str(r#"{"a": 2}"#).unwrap();
        assert!(subset_matches(&bad, &a, "r").is_err());
    }

    #[test]
    fn example_entries_exist_and_filter() {
        let results = run_corpus(Some("example-3.*"));
        assert_eq!(results.len(), 2);
        assert!(results.iter().all(|r| r.provenance == "paper-example"));
    }

    #[test]
    fn corpus_has_enough_entries() {
        assert!(corpus().len() >= 12);
    }
}
