//! Generic bidirectional typechecking driven by node constraints.
//!
//! Each constructor node solves its own equations by first-order
//! unification over `B`, `S`, `R` and payload metavariables. The expected
//! type flows down as a pattern that may contain holes, so a node can be
//! checked against a fully known type, inferred from nothing, or anything
//! in between. Terms whose binder types are fixed only by later uses fall
//! back to one unification problem over the whole term.

mod check;
mod solve;
pub mod unify;
mod validate;

use std::fmt;

use crate::terms::TermPath;

pub use check::{check, infer};
pub use unify::{unify, Meta, Pat, UnifyError, UnifyState};
pub use validate::validate_typed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    Mismatch { expected: Pat, got: Pat },
    AnnotationRequired(Meta),
    UnboundVar(usize),
    OccursCheck { meta: Meta, pat: Pat },
    ConstraintUnsatisfied { index: usize, equation: String },
    ContextMismatch { scope: usize, ctx: usize },
    MalformedNode(String),
}

impl TypeErrorKind {
    pub fn name(&self) -> &'static str {
        match self {
            TypeErrorKind::Mismatch { .. } => "Mismatch",
            TypeErrorKind::AnnotationRequired(_) => "AnnotationRequired",
            TypeErrorKind::UnboundVar(_) => "UnboundVar",
            TypeErrorKind::OccursCheck { .. } => "OccursCheck",
            TypeErrorKind::ConstraintUnsatisfied { .. } => "ConstraintUnsatisfied",
            TypeErrorKind::ContextMismatch { .. } => "ContextMismatch",
            TypeErrorKind::MalformedNode(_) => "MalformedNode",
        }
    }
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name())?;
        match self {
            TypeErrorKind::Mismatch { expected, got } => write!(f, "expected {expected}, got {got}"),
            TypeErrorKind::AnnotationRequired(m) => write!(f, "cannot determine {m}"),
            TypeErrorKind::UnboundVar(i) => write!(f, "index {i} is out of scope"),
            TypeErrorKind::OccursCheck { meta, pat } => write!(f, "{meta} occurs in {pat}"),
            TypeErrorKind::ConstraintUnsatisfied { index, equation } => {
                write!(f, "equation {index} ({equation}) does not hold")
            }
            TypeErrorKind::ContextMismatch { scope, ctx } => {
                write!(f, "term has {scope} variables in scope, context has {ctx} entries")
            }
            TypeErrorKind::MalformedNode(msg) => f.write_str(msg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {kind}")]
pub struct TypeError {
    pub path: TermPath,
    pub kind: TypeErrorKind,
}

impl TypeError {
    pub fn new(path: TermPath, kind: TypeErrorKind) -> Self {
        TypeError { path, kind }
    }
}
