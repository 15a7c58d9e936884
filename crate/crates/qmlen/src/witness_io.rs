//! Witness file format: deterministic JSON, schema `qmlen.witness/1`.
//!
//! Elements are stored as their canonical display strings and reparsed on
//! load, so serialize-then-parse is the identity on canonical forms. The
//! format carries no timestamps: identical witnesses serialize to identical
//! bytes.

use std::fmt;

use serde::{Deserialize, Serialize};

use qmlen_core::cert::{verify_witness, Claim, FactorizationWitness, WitnessFailure};
use qmlen_core::group::{FreeWord, Mat2, Perm, ProjMat2};

use crate::element::{parse_element, AnyElement, GroupSpec};

pub const WITNESS_SCHEMA: &str = "qmlen.witness/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub schema: String,
    pub group: String,
    pub target: String,
    pub factors: Vec<FactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub element: String,
    pub claim: ClaimDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ClaimDoc {
    Torsion { order: u64 },
    Commutator { x: String, y: String },
}

/// A witness over whichever group its file declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyWitness {
    Free(FactorizationWitness<FreeWord>),
    Mat(FactorizationWitness<Mat2>),
    Proj(FactorizationWitness<ProjMat2>),
    Perm(FactorizationWitness<Perm>),
}

impl AnyWitness {
    pub fn verify(&self) -> Result<(), WitnessFailure> {
        match self {
            AnyWitness::Free(w) => verify_witness(w),
            AnyWitness::Mat(w) => verify_witness(w),
            AnyWitness::Proj(w) => verify_witness(w),
            AnyWitness::Perm(w) => verify_witness(w),
        }
    }

    pub fn factor_count(&self) -> u32 {
        match self {
            AnyWitness::Free(w) => w.factor_count(),
            AnyWitness::Mat(w) => w.factor_count(),
            AnyWitness::Proj(w) => w.factor_count(),
            AnyWitness::Perm(w) => w.factor_count(),
        }
    }
}

/// Schema or content problem in a witness file, with a JSON-path diagnostic.
#[derive(Debug)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

pub fn witness_to_doc<G: fmt::Display>(
    group: GroupSpec,
    w: &FactorizationWitness<G>,
) -> WitnessDoc {
    WitnessDoc {
        schema: WITNESS_SCHEMA.to_string(),
        group: group.to_string(),
        target: w.target.to_string(),
        factors: w
            .factors
            .iter()
            .map(|(element, claim)| FactorDoc {
                element: element.to_string(),
                claim: match claim {
                    Claim::TorsionOfOrder(m) => ClaimDoc::Torsion { order: *m },
                    Claim::CommutatorOf(x, y) => ClaimDoc::Commutator {
                        x: x.to_string(),
                        y: y.to_string(),
                    },
                },
            })
            .collect(),
    }
}

pub fn doc_to_json(doc: &WitnessDoc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("witness docs always serialize");
    out.push('\n');
    out
}

pub fn doc_from_json(text: &str) -> Result<WitnessDoc, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: WitnessDoc = serde_path_to_error::deserialize(de).map_err(|e| SchemaError {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    if doc.schema != WITNESS_SCHEMA {
        return Err(SchemaError {
            path: "schema".to_string(),
            message: format!("expected \"{WITNESS_SCHEMA}\", found \"{}\"", doc.schema),
        });
    }
    Ok(doc)
}

pub fn witness_from_doc(doc: &WitnessDoc) -> Result<(GroupSpec, AnyWitness), SchemaError> {
    let group: GroupSpec = doc.group.parse().map_err(|e| SchemaError {
        path: "group".to_string(),
        message: format!("{e}"),
    })?;
    let parse = |path: String, text: &str| -> Result<AnyElement, SchemaError> {
        parse_element(group, text).map_err(|e| SchemaError {
            path,
            message: format!("{e}"),
        })
    };
    let target = parse("target".to_string(), &doc.target)?;
    let mut elements: Vec<(AnyElement, Claim<AnyElement>)> = Vec::with_capacity(doc.factors.len());
    for (i, factor) in doc.factors.iter().enumerate() {
        let element = parse(format!("factors[{i}].element"), &factor.element)?;
        let claim = match &factor.claim {
            ClaimDoc::Torsion { order } => Claim::TorsionOfOrder(*order),
            ClaimDoc::Commutator { x, y } => Claim::CommutatorOf(
                parse(format!("factors[{i}].claim.x"), x)?,
                parse(format!("factors[{i}].claim.y"), y)?,
            ),
        };
        elements.push((element, claim));
    }
    let witness = assemble(group, target, elements)?;
    Ok((group, witness))
}

fn assemble(
    group: GroupSpec,
    target: AnyElement,
    factors: Vec<(AnyElement, Claim<AnyElement>)>,
) -> Result<AnyWitness, SchemaError> {
    // Parsers are group-directed, so every AnyElement is the right variant;
    // anything else is a bug, not bad input.
    macro_rules! build {
        ($variant:ident, $wit:ident) => {{
            let target = match target {
                AnyElement::$variant(t) => t,
                _ => unreachable!("parser returned a foreign element"),
            };
            let factors = factors
                .into_iter()
                .map(|(e, c)| {
                    let e = match e {
                        AnyElement::$variant(e) => e,
                        _ => unreachable!("parser returned a foreign element"),
                    };
                    let c = match c {
                        Claim::TorsionOfOrder(m) => Claim::TorsionOfOrder(m),
                        Claim::CommutatorOf(AnyElement::$variant(x), AnyElement::$variant(y)) => {
                            Claim::CommutatorOf(x, y)
                        }
                        _ => unreachable!("parser returned a foreign element"),
                    };
                    (e, c)
                })
                .collect();
            Ok(AnyWitness::$wit(FactorizationWitness::new(target, factors)))
        }};
    }
    match group {
        GroupSpec::Free(_) => build!(Free, Free),
        GroupSpec::Sl2z => build!(Mat, Mat),
        GroupSpec::Psl2z => build!(Proj, Proj),
        GroupSpec::Perm(_) => build!(Perm, Perm),
    }
}
