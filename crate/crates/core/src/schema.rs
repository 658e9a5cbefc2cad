//! Versioned JSON input schema shared by the CLI, the bundled corpus and
//! the C bindings.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "ring": {"vars": ["x", "y"], "field": "Q", "order": "grevlex"},
//!   "object": "complex",
//!   "data": {
//!     "window": [0, 1],
//!     "ranks": [1, 2],
//!     "differentials": [[["x", "y"]]]
//!   }
//! }
//! ```
//!
//! `field` is `"Q"` or `"F<p>"`; `order` is `"grevlex"`, `"lex"` or
//! `{"weight": [..]}`. Differential `k` maps degree `lo+k+1` to `lo+k` and
//! is written as rows of polynomial strings. Koszul data is
//! `{"elements": [..]}`, the trivial-differential algebra is
//! `{"generator": "X", "degree": 2}`, and a multiplicative set is
//! `{"koszul": [..], "generators": [[{"coeff": "1+x", "indices": []}]],
//! "closure_bound": 4}` with 1-based exterior indices.

use crate::complex::FreeComplex;
use crate::dg_localize::{MultiplicativeSet, DEFAULT_CLOSURE_BOUND};
use crate::dg_spec::TrivialDiffAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::koszul::{KoszulAlgebra, KoszulElement};
use crate::matrix::PolyMatrix;
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};
use serde::Deserialize;
use std::sync::Arc;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub schema_version: u32,
    pub ring: RingDecl,
    pub object: ObjectKind,
    pub data: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDecl {
    pub vars: Vec<String>,
    pub field: String,
    #[serde(default)]
    pub order: OrderDecl,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderDecl {
    #[default]
    Grevlex,
    Lex,
    #[serde(untagged)]
    Weight {
        weight: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Complex,
    Koszul,
    TrivialDiffAlgebra,
    MultSet,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexData {
    window: [i64; 2],
    ranks: Vec<usize>,
    #[serde(default)]
    differentials: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KoszulData {
    elements: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrivialDiffData {
    generator: String,
    degree: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultSetData {
    koszul: Vec<String>,
    generators: Vec<Vec<ElementTermDecl>>,
    closure_bound: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementTermDecl {
    coeff: String,
    /// 1-based indices of the exterior generators in the wedge monomial.
    indices: Vec<usize>,
}

#[derive(Debug)]
pub enum LoadedObject {
    Complex(FreeComplex),
    Koszul(Arc<KoszulAlgebra>),
    TrivialDiff(Arc<TrivialDiffAlgebra>),
    MultSet(MultiplicativeSet),
}

#[derive(Debug)]
pub struct LoadedDoc {
    pub ring: Arc<PolyRing>,
    pub object: LoadedObject,
}

fn parse_field(s: &str) -> Result<FieldKind> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldKind::Q);
    }
    if let Some(p) = s.strip_prefix('F').or_else(|| s.strip_prefix('f')) {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::invalid(format!("bad field descriptor {s:?}")))?;
        return Ok(FieldKind::Fp(p));
    }
    Err(Error::invalid(format!(
        "bad field descriptor {s:?}: expected \"Q\" or \"F<p>\""
    )))
}

impl RingDecl {
    pub fn build(&self) -> Result<Arc<PolyRing>> {
        if self.vars.len() > 16 {
            return Err(Error::unsupported(
                "rings are limited to 16 variables (subset enumeration)",
            ));
        }
        let field = parse_field(&self.field)?;
        let order = match &self.order {
            OrderDecl::Grevlex => MonomialOrder::GrevLex,
            OrderDecl::Lex => MonomialOrder::Lex,
            OrderDecl::Weight { weight } => MonomialOrder::Weight(weight.clone()),
        };
        PolyRing::new(self.vars.clone(), field, order)
    }
}

pub fn load_document(text: &str) -> Result<LoadedDoc> {
    let doc: InputDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: 0,
        msg: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::invalid(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    let ring = doc.ring.build()?;
    let object = match doc.object {
        ObjectKind::Complex => LoadedObject::Complex(load_complex(&ring, doc.data)?),
        ObjectKind::Koszul => {
            let data: KoszulData = from_data(doc.data)?;
            LoadedObject::Koszul(build_koszul(&ring, &data.elements)?)
        }
        ObjectKind::TrivialDiffAlgebra => {
            let data: TrivialDiffData = from_data(doc.data)?;
            LoadedObject::TrivialDiff(TrivialDiffAlgebra::new(
                ring.field().clone(),
                data.generator,
                data.degree,
            )?)
        }
        ObjectKind::MultSet => {
            let data: MultSetData = from_data(doc.data)?;
            let algebra = build_koszul(&ring, &data.koszul)?;
            let mut gens = Vec::new();
            for decl in &data.generators {
                gens.push(build_element(&algebra, decl)?);
            }
            LoadedObject::MultSet(MultiplicativeSet::new(
                &algebra,
                gens,
                data.closure_bound.unwrap_or(DEFAULT_CLOSURE_BOUND),
            )?)
        }
    };
    Ok(LoadedDoc { ring, object })
}

fn from_data<T: serde::de::DeserializeOwned>(data: serde_json::Value) -> Result<T> {
    serde_json::from_value(data)
        .map_err(|e| Error::Parse { offset: 0, msg: format!("data section: {e}") })
}

fn build_koszul(ring: &Arc<PolyRing>, elements: &[String]) -> Result<Arc<KoszulAlgebra>> {
    let polys: Result<Vec<Polynomial>> =
        elements.iter().map(|s| parse_polynomial(ring, s)).collect();
    KoszulAlgebra::new(ring, polys?)
}

fn build_element(
    algebra: &Arc<KoszulAlgebra>,
    terms: &[ElementTermDecl],
) -> Result<KoszulElement> {
    let mut acc = KoszulElement::zero(algebra);
    for t in terms {
        let coeff = parse_polynomial(algebra.ring(), &t.coeff)?;
        let mut mask: u32 = 0;
        let mut wedge_sign_indices = Vec::new();
        for &i in &t.indices {
            if i == 0 || i > algebra.len() {
                return Err(Error::invalid(format!(
                    "exterior index {i} out of range 1..={}",
                    algebra.len()
                )));
            }
            let bit = 1u32 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::invalid(format!("repeated exterior index {i}")));
            }
            mask |= bit;
            wedge_sign_indices.push(i - 1);
        }
        // indices are declared as a wedge word; normalize the sign to the
        // sorted basis element
        let mut sign = 1i32;
        for a in 0..wedge_sign_indices.len() {
            for b in (a + 1)..wedge_sign_indices.len() {
                if wedge_sign_indices[a] > wedge_sign_indices[b] {
                    sign = -sign;
                }
            }
        }
        let coeff = if sign < 0 { coeff.negate() } else { coeff };
        acc = acc.add(&KoszulElement::from_terms(algebra, [(mask, coeff)]));
    }
    Ok(acc)
}

fn load_complex(ring: &Arc<PolyRing>, data: serde_json::Value) -> Result<FreeComplex> {
    let data: ComplexData = from_data(data)?;
    let [lo, hi] = data.window;
    if hi < lo {
        return Err(Error::invalid(format!("window [{lo}, {hi}] is empty")));
    }
    let span = (hi - lo + 1) as usize;
    if data.ranks.len() != span {
        return Err(Error::invalid(format!(
            "window [{lo}, {hi}] needs {span} ranks, got {}",
            data.ranks.len()
        )));
    }
    let expected_diffs = span - 1;
    if data.differentials.len() != expected_diffs {
        return Err(Error::invalid(format!(
            "expected {expected_diffs} differentials, got {}",
            data.differentials.len()
        )));
    }
    let mut diffs = Vec::new();
    for (k, rows) in data.differentials.iter().enumerate() {
        let (nrows, ncols) = (data.ranks[k], data.ranks[k + 1]);
        if rows.len() != nrows {
            return Err(Error::invalid(format!(
                "differential {k}: expected {nrows} rows, got {}",
                rows.len()
            )));
        }
        let mut m = PolyMatrix::zero(ring, nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::invalid(format!(
                    "differential {k}, row {i}: expected {ncols} entries, got {}",
                    row.len()
                )));
            }
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, parse_polynomial(ring, s)?);
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(ring, lo, data.ranks, diffs)
}
