//! Quasimorphism registry: string ids to evaluable quasimorphisms, per group.
//!
//! Registered ids:
//! - `rademacher` on `sl2z` and `psl2z` (homogeneous, defect bound 3)
//! - `dedekind-phi` on `sl2z` (raw, not homogeneous)
//! - `brooks:<word>` on `free:<rank>` (counting quasimorphism for the word)

use num_rational::BigRational;
use qmlen_core::group::{FreeWord, Mat2, ProjMat2};
use qmlen_core::qm::{Brooks, DedekindPhi, Quasimorphism, Rademacher, RademacherProj};

use crate::element::{parse_free_word, AnyElement, GroupSpec};

pub enum QmHandle {
    Mat(Box<dyn Quasimorphism<Elt = Mat2>>),
    Proj(Box<dyn Quasimorphism<Elt = ProjMat2>>),
    Free(Box<dyn Quasimorphism<Elt = FreeWord>>),
}

impl QmHandle {
    pub fn id(&self) -> String {
        match self {
            QmHandle::Mat(f) => f.id(),
            QmHandle::Proj(f) => f.id(),
            QmHandle::Free(f) => f.id(),
        }
    }

    pub fn defect_upper(&self) -> BigRational {
        match self {
            QmHandle::Mat(f) => f.defect_upper(),
            QmHandle::Proj(f) => f.defect_upper(),
            QmHandle::Free(f) => f.defect_upper(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self {
            QmHandle::Mat(f) => f.is_homogeneous(),
            QmHandle::Proj(f) => f.is_homogeneous(),
            QmHandle::Free(f) => f.is_homogeneous(),
        }
    }

    /// Evaluation; the element must come from the group the handle was built
    /// for.
    pub fn evaluate(&self, g: &AnyElement) -> Result<BigRational, String> {
        match (self, g) {
            (QmHandle::Mat(f), AnyElement::Mat(m)) => Ok(f.evaluate(m)),
            (QmHandle::Proj(f), AnyElement::Proj(p)) => Ok(f.evaluate(p)),
            (QmHandle::Free(f), AnyElement::Free(w)) => Ok(f.evaluate(w)),
            _ => Err("element does not belong to the quasimorphism's group".to_string()),
        }
    }
}

pub fn lookup(group: GroupSpec, id: &str) -> Result<QmHandle, String> {
    match group {
        GroupSpec::Sl2z => match id {
            "rademacher" => Ok(QmHandle::Mat(Box::new(Rademacher))),
            "dedekind-phi" => Ok(QmHandle::Mat(Box::new(DedekindPhi))),
            _ => Err(format!(
                "unknown quasimorphism `{id}` for {group}; available: rademacher, dedekind-phi"
            )),
        },
        GroupSpec::Psl2z => match id {
            "rademacher" => Ok(QmHandle::Proj(Box::new(RademacherProj))),
            _ => Err(format!(
                "unknown quasimorphism `{id}` for {group}; available: rademacher"
            )),
        },
        GroupSpec::Free(rank) => {
            let Some(word) = id.strip_prefix("brooks:") else {
                return Err(format!(
                    "unknown quasimorphism `{id}` for {group}; available: brooks:<word>"
                ));
            };
            let pattern = parse_free_word(rank, word).map_err(|e| format!("bad pattern: {e}"))?;
            let qm = Brooks::new(pattern).map_err(|e| format!("{e}"))?;
            Ok(QmHandle::Free(Box::new(qm)))
        }
        GroupSpec::Perm(_) => Err(format!(
            "no quasimorphisms are registered for {group} (finite groups admit none that are unbounded)"
        )),
    }
}
