//! Language descriptions: the data from which term representations, renaming,
//! substitution and typechecking are derived.
//!
//! A description is a tree of [`Desc`] values. Interior `SgTag` and `SgTy`
//! nodes store user data in syntax nodes (a production tag or an object type),
//! and every leaf is a [`NodeDesc`] giving the number of newly bound variables
//! `n`, a `k`-row binder [`Shape`], and a typing [`Constraint`] relating the
//! bound-variable types, subterm types and the type of the node itself.

mod json;
mod ty;

use std::collections::BTreeSet;
use std::fmt;

pub use json::{parse_description, print_description, JsonError};
pub use ty::{Ident, Ty, TyError, TySig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binder {
    Bound,
    Unbound,
}

impl Binder {
    pub fn as_str(self) -> &'static str {
        match self {
            Binder::Bound => "bound",
            Binder::Unbound => "unbound",
        }
    }
}

/// Which of a node's newly bound variables is in scope in which subterm:
/// one row per subterm, one flag per new variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Shape {
    pub rows: Vec<Vec<Binder>>,
}

impl Shape {
    pub fn new(rows: Vec<Vec<Binder>>) -> Self {
        Shape { rows }
    }

    /// `k` subterms, none of which sees a new variable.
    pub fn plain(n: usize, k: usize) -> Self {
        Shape {
            rows: vec![vec![Binder::Unbound; n]; k],
        }
    }
}

/// Number of `bound` flags in a shape row.
pub fn count_bound(row: &[Binder]) -> usize {
    row.iter().filter(|b| **b == Binder::Bound).count()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("binder row has {row} entries but {tys} types were supplied")]
pub struct LengthMismatch {
    pub row: usize,
    pub tys: usize,
}

/// The types of the variables a shape row brings into scope, in row order.
pub fn visible_types(row: &[Binder], ts0: &[Ty]) -> Result<Vec<Ty>, LengthMismatch> {
    if row.len() != ts0.len() {
        return Err(LengthMismatch {
            row: row.len(),
            tys: ts0.len(),
        });
    }
    Ok(row
        .iter()
        .zip(ts0)
        .filter(|(b, _)| **b == Binder::Bound)
        .map(|(_, t)| t.clone())
        .collect())
}

/// Type expressions appearing in node constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TyPattern {
    Con(Ident, Vec<TyPattern>),
    /// Type of the i-th newly bound variable.
    MetaB(usize),
    /// Type of the j-th subterm.
    MetaS(usize),
    /// Type of the node itself.
    MetaR,
    /// Object type stored by an enclosing `SgTy`.
    MetaP(Ident),
}

impl TyPattern {
    pub fn con(ctor: impl Into<Ident>, args: Vec<TyPattern>) -> Self {
        TyPattern::Con(ctor.into(), args)
    }

    pub fn payload(name: impl Into<Ident>) -> Self {
        TyPattern::MetaP(name.into())
    }
}

impl From<&Ty> for TyPattern {
    fn from(t: &Ty) -> Self {
        TyPattern::Con(t.ctor.clone(), t.args.iter().map(TyPattern::from).collect())
    }
}

impl fmt::Display for TyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TyPattern::Con(c, args) if args.is_empty() => write!(f, "{c}"),
            TyPattern::Con(c, args) => {
                write!(f, "({c}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            TyPattern::MetaB(i) => write!(f, "B{i}"),
            TyPattern::MetaS(j) => write!(f, "S{j}"),
            TyPattern::MetaR => f.write_str("R"),
            TyPattern::MetaP(n) => write!(f, "P({n})"),
        }
    }
}

/// A conjunction of type equations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Constraint {
    pub equations: Vec<(TyPattern, TyPattern)>,
}

impl Constraint {
    pub fn new(equations: Vec<(TyPattern, TyPattern)>) -> Self {
        Constraint { equations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeDesc {
    pub n: usize,
    pub shape: Shape,
    pub constraint: Constraint,
}

impl NodeDesc {
    pub fn new(n: usize, shape: Shape, constraint: Constraint) -> Self {
        NodeDesc {
            n,
            shape,
            constraint,
        }
    }

    /// Number of subterms.
    pub fn k(&self) -> usize {
        self.shape.rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Desc {
    SgTag { label: Ident, arms: Vec<(Ident, Desc)> },
    SgTy { binder: Ident, rest: Box<Desc> },
    Node(NodeDesc),
}

impl Desc {
    pub fn sg_tag<I, S>(label: impl Into<Ident>, arms: I) -> Self
    where
        I: IntoIterator<Item = (S, Desc)>,
        S: Into<Ident>,
    {
        Desc::SgTag {
            label: label.into(),
            arms: arms.into_iter().map(|(t, d)| (t.into(), d)).collect(),
        }
    }

    pub fn sg_ty(binder: impl Into<Ident>, rest: Desc) -> Self {
        Desc::SgTy {
            binder: binder.into(),
            rest: Box::new(rest),
        }
    }

    pub fn node(n: usize, shape: Shape, equations: Vec<(TyPattern, TyPattern)>) -> Self {
        Desc::Node(NodeDesc::new(n, shape, Constraint::new(equations)))
    }
}

/// A named language: its type signature and the description of its syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageDescription {
    pub name: Ident,
    pub tysig: TySig,
    pub root: Desc,
}

impl LanguageDescription {
    pub fn new(name: impl Into<Ident>, tysig: TySig, root: Desc) -> Self {
        LanguageDescription {
            name: name.into(),
            tysig,
            root,
        }
    }
}

/// Tag reserved by the term syntax for variable occurrences.
pub const RESERVED_TAG: &str = "var";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescStep {
    Arm(Ident),
    Rest,
    Row(usize),
    Equation(usize),
}

/// Position inside a description tree, rendered as `$.lam.rest.eq[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DescPath(pub Vec<DescStep>);

impl fmt::Display for DescPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("$")?;
        for step in &self.0 {
            match step {
                DescStep::Arm(t) => write!(f, ".{t}")?,
                DescStep::Rest => f.write_str(".rest")?,
                DescStep::Row(i) => write!(f, ".shape[{i}]")?,
                DescStep::Equation(i) => write!(f, ".eq[{i}]")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    ShapeNotRectangular { expected: usize, found: usize },
    MetaOutOfRange { meta: String, bound: usize },
    UnknownPayload(Ident),
    DuplicateTag(Ident),
    DuplicateBinder(Ident),
    ReservedTag(Ident),
    DuplicateTyCtor(Ident),
    BadType(TyError),
}

impl DiagnosticKind {
    pub fn name(&self) -> &'static str {
        match self {
            DiagnosticKind::ShapeNotRectangular { .. } => "ShapeNotRectangular",
            DiagnosticKind::MetaOutOfRange { .. } => "MetaOutOfRange",
            DiagnosticKind::UnknownPayload(_) => "UnknownPayload",
            DiagnosticKind::DuplicateTag(_) => "DuplicateTag",
            DiagnosticKind::DuplicateBinder(_) => "DuplicateBinder",
            DiagnosticKind::ReservedTag(_) => "ReservedTag",
            DiagnosticKind::DuplicateTyCtor(_) => "DuplicateTyCtor",
            DiagnosticKind::BadType(_) => "BadType",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: DescPath,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: ", self.path, self.kind.name())?;
        match &self.kind {
            DiagnosticKind::ShapeNotRectangular { expected, found } => {
                write!(f, "row has {found} binder flags, node binds {expected}")
            }
            DiagnosticKind::MetaOutOfRange { meta, bound } => {
                write!(f, "{meta} exceeds bound {bound}")
            }
            DiagnosticKind::UnknownPayload(n) => write!(f, "no enclosing sg-ty binds `{n}`"),
            DiagnosticKind::DuplicateTag(t) => write!(f, "tag `{t}` appears twice"),
            DiagnosticKind::DuplicateBinder(b) => write!(f, "sg-ty binder `{b}` shadows an outer one"),
            DiagnosticKind::ReservedTag(t) => write!(f, "tag `{t}` is reserved"),
            DiagnosticKind::DuplicateTyCtor(c) => write!(f, "type constructor `{c}` declared twice"),
            DiagnosticKind::BadType(e) => write!(f, "{e}"),
        }
    }
}

/// Checks every structural invariant of a description. An empty result means
/// the description is valid.
pub fn validate_description(lang: &LanguageDescription) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (c, _) in &lang.tysig.ctors {
        if !seen.insert(c.clone()) {
            out.push(Diagnostic {
                path: DescPath::default(),
                kind: DiagnosticKind::DuplicateTyCtor(c.clone()),
            });
        }
    }
    let mut v = Validator {
        sig: &lang.tysig,
        out,
        path: Vec::new(),
        payloads: Vec::new(),
    };
    v.desc(&lang.root);
    v.out
}

struct Validator<'a> {
    sig: &'a TySig,
    out: Vec<Diagnostic>,
    path: Vec<DescStep>,
    payloads: Vec<Ident>,
}

impl Validator<'_> {
    fn report(&mut self, kind: DiagnosticKind) {
        self.out.push(Diagnostic {
            path: DescPath(self.path.clone()),
            kind,
        });
    }

    fn desc(&mut self, d: &Desc) {
        match d {
            Desc::SgTag { arms, .. } => {
                let mut tags = BTreeSet::new();
                for (tag, arm) in arms {
                    self.path.push(DescStep::Arm(tag.clone()));
                    if !tags.insert(tag.clone()) {
                        self.report(DiagnosticKind::DuplicateTag(tag.clone()));
                    }
                    if tag.as_str() == RESERVED_TAG {
                        self.report(DiagnosticKind::ReservedTag(tag.clone()));
                    }
                    self.desc(arm);
                    self.path.pop();
                }
            }
            Desc::SgTy { binder, rest } => {
                self.path.push(DescStep::Rest);
                if self.payloads.contains(binder) {
                    self.report(DiagnosticKind::DuplicateBinder(binder.clone()));
                }
                self.payloads.push(binder.clone());
                self.desc(rest);
                self.payloads.pop();
                self.path.pop();
            }
            Desc::Node(node) => self.node(node),
        }
    }

    fn node(&mut self, node: &NodeDesc) {
        for (i, row) in node.shape.rows.iter().enumerate() {
            if row.len() != node.n {
                self.path.push(DescStep::Row(i));
                self.report(DiagnosticKind::ShapeNotRectangular {
                    expected: node.n,
                    found: row.len(),
                });
                self.path.pop();
            }
        }
        for (i, (l, r)) in node.constraint.equations.iter().enumerate() {
            self.path.push(DescStep::Equation(i));
            self.pattern(l, node);
            self.pattern(r, node);
            self.path.pop();
        }
    }

    fn pattern(&mut self, p: &TyPattern, node: &NodeDesc) {
        match p {
            TyPattern::Con(c, args) => {
                match self.sig.arity(c) {
                    None => self.report(DiagnosticKind::BadType(TyError::UnknownCtor(c.clone()))),
                    Some(a) if a != args.len() => {
                        self.report(DiagnosticKind::BadType(TyError::Arity {
                            ctor: c.clone(),
                            expected: a,
                            found: args.len(),
                        }))
                    }
                    Some(_) => {}
                }
                for a in args {
                    self.pattern(a, node);
                }
            }
            TyPattern::MetaB(i) if *i >= node.n => self.report(DiagnosticKind::MetaOutOfRange {
                meta: format!("B{i}"),
                bound: node.n,
            }),
            TyPattern::MetaS(j) if *j >= node.k() => {
                self.report(DiagnosticKind::MetaOutOfRange {
                    meta: format!("S{j}"),
                    bound: node.k(),
                })
            }
            TyPattern::MetaP(name) if !self.payloads.contains(name) => {
                self.report(DiagnosticKind::UnknownPayload(name.clone()))
            }
            _ => {}
        }
    }
}
