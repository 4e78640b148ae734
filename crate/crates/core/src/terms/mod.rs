//! Term representations derived from a description.
//!
//! * [`Form`]: named syntax with no scoping discipline.
//! * [`Expr`]: well-scoped, de Bruijn indexed, untyped.
//! * [`Tm`]: well-scoped and well-typed; every constructor node records the
//!   types of its newly bound variables (`ts0`) and its own type.
//!
//! De Bruijn index 0 is the innermost binding. Contexts grow on the right, so
//! index `i` in a context of length `n` refers to entry `n - 1 - i`.

mod path;
mod resolve;
mod sexpr;

use std::fmt;

use crate::descriptions::{Ident, Ty};

pub use path::{PathError, ProdStep, Production};
pub use resolve::{resolve, validate_expr, ResolveError, ScopeViolation};
pub use sexpr::{parse_expr, parse_form, parse_ty, SyntaxError};

/// Typing context: types of the variables in scope, oldest first.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Ctx(Vec<Ty>);

impl Ctx {
    pub fn empty() -> Self {
        Ctx(Vec::new())
    }

    pub fn new(tys: Vec<Ty>) -> Self {
        Ctx(tys)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Ty] {
        &self.0
    }

    pub fn snoc(mut self, t: Ty) -> Self {
        self.0.push(t);
        self
    }

    /// `self <>< tys`: appends `tys` left to right.
    pub fn extend(&self, tys: &[Ty]) -> Ctx {
        let mut v = Vec::with_capacity(self.0.len() + tys.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(tys);
        Ctx(v)
    }

    /// Type of the variable with de Bruijn index `index`.
    pub fn lookup(&self, index: usize) -> Option<&Ty> {
        let n = self.0.len();
        if index < n {
            Some(&self.0[n - 1 - index])
        } else {
            None
        }
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(Ty::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Debug for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

pub fn ctx_extend(ctx: &Ctx, tys: &[Ty]) -> Ctx {
    ctx.extend(tys)
}

pub fn ctx_size(ctx: &Ctx) -> usize {
    ctx.len()
}

/// A typed variable reference: `vz` is index 0, `vs v` adds one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedVar(pub usize);

impl TypedVar {
    pub fn vz() -> Self {
        TypedVar(0)
    }

    pub fn vs(self) -> Self {
        TypedVar(self.0 + 1)
    }
}

pub fn untype_var(v: TypedVar) -> usize {
    v.0
}

/// One step along a description path: an `SgTag` arm or an `SgTy` payload.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SgChoice {
    Tag(Ident),
    TyPayload(Ty),
}

impl fmt::Debug for SgChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SgChoice::Tag(t) => write!(f, "{t}"),
            SgChoice::TyPayload(t) => write!(f, "{{{t}}}"),
        }
    }
}

pub type Path = Vec<SgChoice>;

/// Address of a subterm: child indices from the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TermPath(pub Vec<usize>);

impl TermPath {
    pub fn child(&self, i: usize) -> TermPath {
        let mut v = self.0.clone();
        v.push(i);
        TermPath(v)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("$")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

/// Named syntax.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Var(String),
    Con {
        path: Path,
        binders: Vec<String>,
        children: Vec<Form>,
    },
}

/// Well-scoped untyped term with `scope` variables available at the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    pub scope: usize,
    pub root: ExprNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExprNode {
    Var(usize),
    Con { path: Path, children: Vec<ExprNode> },
}

/// Typed term in context `ctx`. Interior contexts are implied by the
/// description's shapes and are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tm {
    pub ctx: Ctx,
    pub root: TmNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TmNode {
    Var {
        ty: Ty,
        index: usize,
    },
    Con {
        ty: Ty,
        path: Path,
        ts0: Vec<Ty>,
        children: Vec<TmNode>,
    },
}

impl TmNode {
    pub fn ty(&self) -> &Ty {
        match self {
            TmNode::Var { ty, .. } | TmNode::Con { ty, .. } => ty,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            TmNode::Var { .. } => 1,
            TmNode::Con { children, .. } => 1 + children.iter().map(TmNode::node_count).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TmNode::Var { .. } => 1,
            TmNode::Con { children, .. } => 1 + children.iter().map(TmNode::depth).max().unwrap_or(0),
        }
    }

    /// The first tag on the node's path, if it is a constructor.
    pub fn tag(&self) -> Option<&str> {
        match self {
            TmNode::Con { path, .. } => path.iter().find_map(|c| match c {
                SgChoice::Tag(t) => Some(t.as_str()),
                SgChoice::TyPayload(_) => None,
            }),
            TmNode::Var { .. } => None,
        }
    }

    /// Every tag appearing anywhere in the tree.
    pub fn contains_tag(&self, tag: &str) -> bool {
        match self {
            TmNode::Var { .. } => false,
            TmNode::Con { path, children, .. } => {
                path.iter().any(|c| matches!(c, SgChoice::Tag(t) if t.as_str() == tag))
                    || children.iter().any(|c| c.contains_tag(tag))
            }
        }
    }
}

impl Tm {
    pub fn new(ctx: Ctx, root: TmNode) -> Self {
        Tm { ctx, root }
    }

    pub fn ty(&self) -> &Ty {
        self.root.ty()
    }
}

/// Type erasure: forgets `ts0` and node types; scope becomes the context size.
pub fn untype(e: &Tm) -> Expr {
    Expr {
        scope: ctx_size(&e.ctx),
        root: untype_node(&e.root),
    }
}

fn untype_node(e: &TmNode) -> ExprNode {
    match e {
        TmNode::Var { index, .. } => ExprNode::Var(untype_var(TypedVar(*index))),
        TmNode::Con { path, children, .. } => ExprNode::Con {
            path: path.clone(),
            children: children.iter().map(untype_node).collect(),
        },
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Var(x) => write!(f, "(var {x})"),
            Form::Con {
                path,
                binders,
                children,
            } => {
                if let Some(tag) = bare_tag(path, binders.len(), children.len()) {
                    return write!(f, "{tag}");
                }
                f.write_str("(")?;
                write_path(f, path)?;
                if !binders.is_empty() {
                    write!(f, " [{}]", binders.join(" "))?;
                }
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Var(i) => write!(f, "(var {i})"),
            ExprNode::Con { path, children } => {
                if let Some(tag) = bare_tag(path, 0, children.len()) {
                    return write!(f, "{tag}");
                }
                f.write_str("(")?;
                write_path(f, path)?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

/// Typed terms print like `Expr`, with the types of newly bound variables in
/// the binder slot: `(lam [base] (var 0))`.
impl fmt::Display for TmNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TmNode::Var { index, .. } => write!(f, "(var {index})"),
            TmNode::Con {
                path, ts0, children, ..
            } => {
                if let Some(tag) = bare_tag(path, ts0.len(), children.len()) {
                    return write!(f, "{tag}");
                }
                f.write_str("(")?;
                write_path(f, path)?;
                if !ts0.is_empty() {
                    let tys: Vec<String> = ts0.iter().map(Ty::to_string).collect();
                    write!(f, " [{}]", tys.join(" "))?;
                }
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

fn bare_tag(path: &Path, n: usize, k: usize) -> Option<&Ident> {
    match path.as_slice() {
        [SgChoice::Tag(t)] if n == 0 && k == 0 => Some(t),
        _ => None,
    }
}

fn write_path(f: &mut fmt::Formatter<'_>, path: &Path) -> fmt::Result {
    for (i, c) in path.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match c {
            SgChoice::Tag(t) => write!(f, "{t}")?,
            SgChoice::TyPayload(t) => write!(f, "{{{t}}}")?,
        }
    }
    Ok(())
}
