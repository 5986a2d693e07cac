//! JSON documents for tensors, dual bases and `W` presentations.
//!
//! Rationals are written as `"a/b"` (or `"a"`) strings. A tensor entry is
//! `num / (den_scale · (v − u)^den_power)` with `num` a list of
//! `[deg_u, deg_v, coeff]` terms; the first tensor leg carries `u`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lagrangian::{DualElement, WPresentation};
use crate::lie::{build_sl, ConstTensor2, GElement, LieAlgebraData};
use crate::pairing::{CaseSpec, DoubleElement};
use crate::poly::Poly2;
use crate::rat;
use crate::ratfun::BivarRat;
use crate::rmatrix::SpectralTensor2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
}

impl AlgebraDoc {
    pub fn of(alg: &LieAlgebraData) -> Self {
        Self {
            kind: "A".into(),
            rank: alg.rank(),
        }
    }

    pub fn build(&self) -> Result<LieAlgebraData> {
        if self.kind != "A" {
            return Err(Error::InvalidInput(format!(
                "only type A algebras are supported, got {:?}",
                self.kind
            )));
        }
        if self.rank == 0 {
            return Err(Error::InvalidRank("rank must be at least 1".into()));
        }
        build_sl(self.rank + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub i: String,
    pub j: String,
    pub num: Vec<(i32, i32, String)>,
    pub den_power: u32,
    pub den_scale: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub algebra: AlgebraDoc,
    pub basis: Vec<String>,
    pub entries: Vec<EntryDoc>,
}

pub fn tensor_doc(alg: &LieAlgebraData, r: &SpectralTensor2) -> TensorDoc {
    let entries = r
        .entries()
        .map(|((i, j), f)| EntryDoc {
            i: alg.label(i).to_string(),
            j: alg.label(j).to_string(),
            num: f.num().terms().map(|(e, c)| (e[0], e[1], rat::fmt(c))).collect(),
            den_power: f.den_power(),
            den_scale: "1".into(),
        })
        .collect();
    TensorDoc {
        algebra: AlgebraDoc::of(alg),
        basis: alg.labels().to_vec(),
        entries,
    }
}

pub fn tensor_to_json(alg: &LieAlgebraData, r: &SpectralTensor2) -> String {
    serde_json::to_string_pretty(&tensor_doc(alg, r)).expect("tensor documents serialize")
}

fn lookup(alg: &LieAlgebraData, label: &str) -> Result<usize> {
    alg.index_of(label)
        .ok_or_else(|| Error::InvalidInput(format!("unknown basis label {label:?}")))
}

pub fn tensor_from_doc(doc: &TensorDoc) -> Result<(LieAlgebraData, SpectralTensor2)> {
    let alg = doc.algebra.build()?;
    if doc.basis != alg.labels() {
        return Err(Error::InvalidInput("basis labels do not match the algebra".into()));
    }
    let mut r = SpectralTensor2::zero();
    for e in &doc.entries {
        let (i, j) = (lookup(&alg, &e.i)?, lookup(&alg, &e.j)?);
        let mut num = Poly2::zero();
        for (du, dv, c) in &e.num {
            if *du < 0 || *dv < 0 {
                return Err(Error::InvalidInput(format!(
                    "numerator of ({}, {}) has a negative exponent",
                    e.i, e.j
                )));
            }
            num.add_term([*du, *dv], rat::parse(c)?);
        }
        let scale = rat::parse(&e.den_scale)?;
        r.add_entry(i, j, &BivarRat::new(num, &scale, e.den_power)?);
    }
    Ok((alg, r))
}

pub fn tensor_from_json(text: &str) -> Result<(LieAlgebraData, SpectralTensor2)> {
    let doc: TensorDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    tensor_from_doc(&doc)
}

/// Reads a constant tensor stored in the same schema (no `u`, `v`
/// dependence).
pub fn constant_from_json(text: &str) -> Result<(LieAlgebraData, ConstTensor2)> {
    let (alg, r) = tensor_from_json(text)?;
    let mut t = ConstTensor2::zero();
    for ((i, j), f) in r.entries() {
        let c = f.num().coeff(&[0, 0]);
        if f.den_power() != 0 || f.num().len() != 1 || c.is_zero() {
            return Err(Error::InvalidInput(format!(
                "entry ({}, {}) is not constant",
                alg.label(i),
                alg.label(j)
            )));
        }
        t.add_term(i, j, c);
    }
    Ok((alg, t))
}

pub fn constant_to_json(alg: &LieAlgebraData, t: &ConstTensor2) -> String {
    tensor_to_json(alg, &SpectralTensor2::constant(t))
}

fn g_terms(alg: &LieAlgebraData, x: &GElement) -> Vec<(String, String)> {
    x.iter().map(|(i, c)| (alg.label(i).to_string(), rat::fmt(c))).collect()
}

/// A double element: loop terms `[label, deg_u, coeff]` plus the finite
/// summands as `[label, coeff]` lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    #[serde(rename = "loop")]
    pub loop_terms: Vec<(String, i32, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub finite: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub eps: Vec<(String, String)>,
}

impl ElementDoc {
    pub fn of(alg: &LieAlgebraData, x: &DoubleElement) -> Self {
        Self {
            loop_terms: x
                .loop_part
                .monomials()
                .map(|(b, d, c)| (alg.label(b).to_string(), d, rat::fmt(c)))
                .collect(),
            finite: g_terms(alg, &x.finite),
            eps: g_terms(alg, &x.eps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDoc {
    pub basis: String,
    pub degree: u32,
    pub element: ElementDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualBasisDoc {
    pub algebra: AlgebraDoc,
    pub case: String,
    pub basis: Vec<String>,
    pub duals: Vec<DualDoc>,
}

pub fn dual_basis_doc(alg: &LieAlgebraData, spec: &CaseSpec, duals: &[DualElement]) -> DualBasisDoc {
    DualBasisDoc {
        algebra: AlgebraDoc::of(alg),
        case: spec.to_string(),
        basis: alg.labels().to_vec(),
        duals: duals
            .iter()
            .map(|d| DualDoc {
                basis: alg.label(d.basis).to_string(),
                degree: d.degree,
                element: ElementDoc::of(alg, &d.element),
            })
            .collect(),
    }
}

/// `W` as head generators plus the ideal generator `m(t)`, `t = u^{-1}`,
/// given by `[deg_t, coeff]` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub algebra: AlgebraDoc,
    pub case: String,
    pub head: Vec<ElementDoc>,
    pub tail: Vec<(i32, String)>,
}

pub fn presentation_doc(alg: &LieAlgebraData, w: &WPresentation) -> PresentationDoc {
    PresentationDoc {
        algebra: AlgebraDoc::of(alg),
        case: w.spec.to_string(),
        head: w.head.iter().map(|h| ElementDoc::of(alg, h)).collect(),
        tail: w.tail.terms().map(|(e, c)| (e[0], rat::fmt(c))).collect(),
    }
}

/// `1` when the document's scale is already canonical.
pub fn is_canonical(doc: &TensorDoc) -> bool {
    doc.entries.iter().all(|e| rat::parse(&e.den_scale).map(|s| s.is_one()).unwrap_or(false))
}
