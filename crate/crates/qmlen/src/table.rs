//! Bound tables: per-power lower bounds next to witness upper bounds, with a
//! machine-checked consistency column.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use qmlen_core::cert::{
    bound_from_qm, mcg_dehn_bounds, sl2z_torsion_witness, stable_bound_from_qm, verify_witness,
    CertError, Inequality,
};
use qmlen_core::group::GroupElement;
use qmlen_core::length::torsion_length_upper_projective;
use qmlen_core::qm::CertifiedValue;

use crate::element::{AnyElement, GroupSpec};
use crate::registry::QmHandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Length,
    Comm,
    Torsion,
    StableComm,
    StableTorsion,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::Length => "length",
            TableKind::Comm => "comm",
            TableKind::Torsion => "torsion",
            TableKind::StableComm => "stable-comm",
            TableKind::StableTorsion => "stable-torsion",
        }
    }
}

pub fn inequality_tag(i: Inequality) -> &'static str {
    match i {
        Inequality::PowerWordLength => "power-word-length",
        Inequality::StableWordLength => "stable-word-length",
        Inequality::PowerCommutatorLength => "power-commutator-length",
        Inequality::StableCommutatorLength => "stable-commutator-length",
        Inequality::PowerTorsionLength => "power-torsion-length",
        Inequality::StableTorsionLength => "stable-torsion-length",
        Inequality::DehnTwistCommutator => "dehn-twist-commutator",
        Inequality::DehnTwistStableTorsion => "dehn-twist-stable-torsion",
    }
}

/// One lower bound in a row. `bound = None` is the explicit "no bound"
/// marker (the quasimorphism vanished on the element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub inequality: &'static str,
    pub bound: Option<BigRational>,
    pub ceiling: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperWitness {
    pub count: u32,
    pub witness_id: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub n: i64,
    pub lower_bounds: Vec<LowerBound>,
    pub upper_witness: Option<UpperWitness>,
    pub consistent: bool,
}

impl ReportRow {
    fn close(n: i64, lower_bounds: Vec<LowerBound>, upper_witness: Option<UpperWitness>) -> Self {
        let consistent = match &upper_witness {
            None => true,
            Some(u) => {
                let count = BigRational::from(BigInt::from(u.count));
                lower_bounds
                    .iter()
                    .filter_map(|lb| lb.bound.as_ref())
                    .all(|b| *b <= count)
            }
        };
        ReportRow {
            n,
            lower_bounds,
            upper_witness,
            consistent,
        }
    }

    pub fn has_bound(&self) -> bool {
        self.lower_bounds.iter().any(|lb| lb.bound.is_some())
    }
}

/// Rows n = 1..=n_max for one element and one homogeneous quasimorphism.
/// Stable kinds repeat the (n-independent) stable bound on every row.
/// Rows are independent; each is recomputed from scratch and merged in order.
pub fn build_qm_table(
    group: GroupSpec,
    element: &AnyElement,
    qm: &QmHandle,
    kind: TableKind,
    n_max: i64,
    generators: &[AnyElement],
) -> Result<Vec<ReportRow>, String> {
    if !qm.is_homogeneous() {
        return Err(format!(
            "table bounds need a homogeneous quasimorphism; `{}` is not",
            qm.id()
        ));
    }
    if n_max < 1 {
        return Err("n-max must be at least 1".to_string());
    }
    let phi_g = CertifiedValue::exact(qm.evaluate(element)?);
    let inequality = match kind {
        TableKind::Length => Inequality::PowerWordLength,
        TableKind::Comm => Inequality::PowerCommutatorLength,
        TableKind::Torsion => Inequality::PowerTorsionLength,
        TableKind::StableComm => Inequality::StableCommutatorLength,
        TableKind::StableTorsion => Inequality::StableTorsionLength,
    };
    // C(phi, S) for the word-length inequality: sup of |phi| over the
    // declared generators, exact because phi is homogeneous.
    let c_upper = if kind == TableKind::Length {
        if generators.is_empty() {
            return Err("length tables need a generating set for C(phi, S)".to_string());
        }
        let mut c = BigRational::from(BigInt::from(0));
        for s in generators {
            let v = qm.evaluate(s)?.abs();
            if v > c {
                c = v;
            }
        }
        c
    } else {
        BigRational::from(BigInt::from(0))
    };

    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let cert = match qm {
            QmHandle::Mat(f) => match inequality.is_stable() {
                false => bound_from_qm(f.as_ref(), &phi_g, n, inequality, &c_upper),
                true => stable_bound_from_qm(f.as_ref(), &phi_g, inequality, &c_upper),
            },
            QmHandle::Proj(f) => match inequality.is_stable() {
                false => bound_from_qm(f.as_ref(), &phi_g, n, inequality, &c_upper),
                true => stable_bound_from_qm(f.as_ref(), &phi_g, inequality, &c_upper),
            },
            QmHandle::Free(f) => match inequality.is_stable() {
                false => bound_from_qm(f.as_ref(), &phi_g, n, inequality, &c_upper),
                true => stable_bound_from_qm(f.as_ref(), &phi_g, inequality, &c_upper),
            },
        };
        let lower = match cert {
            Ok(cert) => LowerBound {
                inequality: inequality_tag(inequality),
                bound: Some(cert.bound),
                ceiling: cert.ceiling,
            },
            Err(CertError::NoCertificate) => LowerBound {
                inequality: inequality_tag(inequality),
                bound: None,
                ceiling: None,
            },
            Err(e) => return Err(format!("{e}")),
        };
        let upper = upper_witness(group, element, kind, n)?;
        rows.push(ReportRow::close(n, vec![lower], upper));
    }
    Ok(rows)
}

/// Witness-backed upper bound for row `n`, where a generator applies.
/// Every emitted count comes from a witness that passed verification here.
fn upper_witness(
    group: GroupSpec,
    element: &AnyElement,
    kind: TableKind,
    n: i64,
) -> Result<Option<UpperWitness>, String> {
    if kind != TableKind::Torsion {
        return Ok(None);
    }
    match (group, element) {
        (GroupSpec::Sl2z, AnyElement::Mat(m)) => {
            let w = sl2z_torsion_witness(&m.power(n)).map_err(|e| format!("{e}"))?;
            verify_witness(&w).map_err(|e| format!("generated witness failed to verify: {e}"))?;
            Ok(Some(UpperWitness {
                count: w.factor_count(),
                witness_id: "syllable-lift",
            }))
        }
        (GroupSpec::Psl2z, AnyElement::Proj(p)) => {
            let pn = p.power(n);
            if pn.is_identity() {
                return Ok(None);
            }
            let (count, w) = torsion_length_upper_projective(&pn).map_err(|e| format!("{e}"))?;
            verify_witness(&w).map_err(|e| format!("generated witness failed to verify: {e}"))?;
            Ok(Some(UpperWitness {
                count,
                witness_id: "syllables",
            }))
        }
        _ => Ok(None),
    }
}

/// Rows for the surface twist calculators: `k` right-handed twists on genus
/// `h`, commutator bound per power plus the (constant) stable torsion bound.
pub fn build_dehn_table(h: u64, k: u64, n_max: u64) -> Result<Vec<ReportRow>, String> {
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let (comm, stable) = mcg_dehn_bounds(h, k, n).map_err(|e| format!("{e}"))?;
        let lower_bounds = vec![
            LowerBound {
                inequality: inequality_tag(Inequality::DehnTwistCommutator),
                ceiling: Some(comm.ceil().to_integer()),
                bound: Some(comm),
            },
            LowerBound {
                inequality: inequality_tag(Inequality::DehnTwistStableTorsion),
                ceiling: None,
                bound: Some(stable),
            },
        ];
        rows.push(ReportRow::close(n as i64, lower_bounds, None));
    }
    Ok(rows)
}

// --- serialization -----------------------------------------------------

pub const TABLE_SCHEMA: &str = "qmlen.table/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub schema: String,
    pub group: Option<String>,
    pub element: Option<String>,
    pub qm: Option<String>,
    pub kind: String,
    pub rows: Vec<RowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDoc {
    pub n: i64,
    pub lower_bounds: Vec<LowerBoundDoc>,
    pub upper_witness: Option<UpperWitnessDoc>,
    pub consistent: bool,
}

/// Rationals serialize as exact `p/q` strings; `bound = null` is the
/// "no bound" marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundDoc {
    pub inequality: String,
    pub bound: Option<String>,
    pub ceiling: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperWitnessDoc {
    pub count: u32,
    pub witness_id: String,
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn table_doc(
    group: Option<GroupSpec>,
    element: Option<&AnyElement>,
    qm: Option<&str>,
    kind: &str,
    rows: &[ReportRow],
) -> TableDoc {
    TableDoc {
        schema: TABLE_SCHEMA.to_string(),
        group: group.map(|g| g.to_string()),
        element: element.map(|e| e.to_string()),
        qm: qm.map(|s| s.to_string()),
        kind: kind.to_string(),
        rows: rows
            .iter()
            .map(|row| RowDoc {
                n: row.n,
                lower_bounds: row
                    .lower_bounds
                    .iter()
                    .map(|lb| LowerBoundDoc {
                        inequality: lb.inequality.to_string(),
                        bound: lb.bound.as_ref().map(rational_string),
                        ceiling: lb.ceiling.as_ref().map(|c| c.to_string()),
                    })
                    .collect(),
                upper_witness: row.upper_witness.as_ref().map(|u| UpperWitnessDoc {
                    count: u.count,
                    witness_id: u.witness_id.to_string(),
                }),
                consistent: row.consistent,
            })
            .collect(),
    }
}

pub fn table_json(doc: &TableDoc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("table docs always serialize");
    out.push('\n');
    out
}

/// CSV mirror of the JSON rows, one line per (row, lower bound) pair so every
/// field stays a scalar.
pub fn table_csv(doc: &TableDoc) -> String {
    let mut out = String::from("n,inequality,bound,ceiling,upper_count,upper_witness_id,consistent\n");
    for row in &doc.rows {
        for lb in &row.lower_bounds {
            let (count, wid) = match &row.upper_witness {
                Some(u) => (u.count.to_string(), u.witness_id.clone()),
                None => (String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.n,
                lb.inequality,
                lb.bound.clone().unwrap_or_else(|| "no bound".to_string()),
                lb.ceiling.clone().unwrap_or_default(),
                count,
                wid,
                row.consistent
            ));
        }
    }
    out
}

/// Plain-text rendering. All rationals are exact `p/q`.
pub fn table_text(doc: &TableDoc) -> String {
    let mut out = String::new();
    if let (Some(group), Some(element)) = (&doc.group, &doc.element) {
        out.push_str(&format!("group {group}, element {element}"));
        if let Some(qm) = &doc.qm {
            out.push_str(&format!(", qm {qm}"));
        }
        out.push_str(&format!(", kind {}\n", doc.kind));
    } else {
        out.push_str(&format!("kind {}\n", doc.kind));
    }
    for row in &doc.rows {
        out.push_str(&format!("n={}", row.n));
        for lb in &row.lower_bounds {
            match (&lb.bound, &lb.ceiling) {
                (Some(b), Some(c)) => {
                    out.push_str(&format!("  {} >= {} (ceil {})", lb.inequality, b, c))
                }
                (Some(b), None) => out.push_str(&format!("  {} >= {}", lb.inequality, b)),
                (None, _) => out.push_str(&format!("  {}: no bound", lb.inequality)),
            }
        }
        if let Some(u) = &row.upper_witness {
            out.push_str(&format!("  upper <= {} ({})", u.count, u.witness_id));
        }
        out.push_str(&format!(
            "  [{}]\n",
            if row.consistent { "consistent" } else { "INCONSISTENT" }
        ));
    }
    out
}
