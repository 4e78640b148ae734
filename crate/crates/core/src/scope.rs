//! Renamings as order-preserving embeddings and substitutions as snoc-lists
//! of typed terms, with their compositions.
//!
//! An [`Ope`] from `Γ` to `Δ` (written `Γ ⊇ Δ`) embeds the smaller context
//! `Δ` into `Γ`: each entry of `Γ` is either kept (it is also in `Δ`) or
//! dropped. A [`Subst`] `Γ ⊢* Δ` holds one term in `Γ` for every entry of `Δ`.

use std::fmt;

use crate::descriptions::{LanguageDescription, LengthMismatch, Ty};
use crate::subst::{ren_node, sub_node};
use crate::terms::{Ctx, PathError, Tm, TmNode, TypedVar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("ContextMismatch: expected [{expected}], found [{found}]")]
    ContextMismatch { expected: Ctx, found: Ctx },
    #[error("UnboundVar: index {index} in a context of size {size}")]
    VarOutOfRange { index: usize, size: usize },
    #[error("MalformedNode: {0}")]
    Path(#[from] PathError),
    #[error("MalformedNode: {0}")]
    Shape(#[from] LengthMismatch),
}

fn expect_ctx(expected: &Ctx, found: &Ctx) -> Result<(), ScopeError> {
    if expected != found {
        return Err(ScopeError::ContextMismatch {
            expected: expected.clone(),
            found: found.clone(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpeStep {
    Drop,
    Keep,
}

/// Order-preserving embedding, stored oldest entry first. Each step records
/// the type at that position so both contexts can be rebuilt.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ope {
    steps: Vec<(OpeStep, Ty)>,
}

impl Ope {
    pub fn done() -> Self {
        Ope { steps: Vec::new() }
    }

    pub fn drop(mut self, t: Ty) -> Self {
        self.steps.push((OpeStep::Drop, t));
        self
    }

    pub fn keep(mut self, t: Ty) -> Self {
        self.steps.push((OpeStep::Keep, t));
        self
    }

    pub fn steps(&self) -> &[(OpeStep, Ty)] {
        &self.steps
    }

    /// The larger context `Γ`.
    pub fn source(&self) -> Ctx {
        Ctx::new(self.steps.iter().map(|(_, t)| t.clone()).collect())
    }

    /// The embedded context `Δ`.
    pub fn target(&self) -> Ctx {
        Ctx::new(
            self.steps
                .iter()
                .filter(|(s, _)| *s == OpeStep::Keep)
                .map(|(_, t)| t.clone())
                .collect(),
        )
    }

    /// `refl_ope(ctx)` followed by a drop for every type in `tys`.
    pub fn weakening(ctx: &Ctx, tys: &[Ty]) -> Self {
        let mut o = refl_ope(ctx);
        for t in tys {
            o = o.drop(t.clone());
        }
        o
    }
}

impl fmt::Display for Ope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("done");
        for (step, t) in &self.steps {
            let name = match step {
                OpeStep::Drop => "drop",
                OpeStep::Keep => "keep",
            };
            s = format!("{name}({s}, {t})");
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Ope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn refl_ope(ctx: &Ctx) -> Ope {
    Ope {
        steps: ctx.as_slice().iter().map(|t| (OpeStep::Keep, t.clone())).collect(),
    }
}

/// Maps a variable of the embedded context to the same entry in the larger
/// one. `None` if `v` is out of range.
pub fn ren_var(rho: &Ope, v: TypedVar) -> Option<TypedVar> {
    let mut remaining = v.0;
    for (out, (step, _)) in rho.steps.iter().rev().enumerate() {
        if *step == OpeStep::Keep {
            if remaining == 0 {
                return Some(TypedVar(out));
            }
            remaining -= 1;
        }
    }
    None
}

/// Extends `rho` with a keep for each of `tys`, left to right.
pub fn keep_star(tys: &[Ty], rho: &Ope) -> Ope {
    let mut o = rho.clone();
    for t in tys {
        o = o.keep(t.clone());
    }
    o
}

/// `rho2 ∘ rho1` for `rho2: Γ ⊇ Θ` and `rho1: Θ ⊇ Δ`.
pub fn compose_ope(rho2: &Ope, rho1: &Ope) -> Result<Ope, ScopeError> {
    expect_ctx(&rho2.target(), &rho1.source())?;
    let mut inner = rho1.steps.iter();
    let steps = rho2
        .steps
        .iter()
        .map(|(step, t)| match step {
            OpeStep::Drop => (OpeStep::Drop, t.clone()),
            OpeStep::Keep => {
                let (s, _) = inner.next().expect("contexts agree");
                (*s, t.clone())
            }
        })
        .collect();
    Ok(Ope { steps })
}

/// Simultaneous substitution `Γ ⊢* Δ`: one term in `Γ` per entry of `Δ`,
/// oldest first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subst {
    source: Ctx,
    entries: Vec<TmNode>,
}

impl Subst {
    /// The empty substitution `Γ ⊢* ∅`.
    pub fn empty(source: Ctx) -> Self {
        Subst {
            source,
            entries: Vec::new(),
        }
    }

    /// Builds a substitution from entries that are already terms in `source`.
    pub fn from_entries(source: Ctx, entries: Vec<TmNode>) -> Self {
        Subst { source, entries }
    }

    /// `σ , e`.
    pub fn snoc(mut self, e: Tm) -> Result<Self, ScopeError> {
        expect_ctx(&self.source, &e.ctx)?;
        self.entries.push(e.root);
        Ok(self)
    }

    pub fn source(&self) -> &Ctx {
        &self.source
    }

    pub fn target(&self) -> Ctx {
        Ctx::new(self.entries.iter().map(|e| e.ty().clone()).collect())
    }

    pub fn entries(&self) -> &[TmNode] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn lookup_node(&self, index: usize) -> Option<&TmNode> {
        let n = self.entries.len();
        (index < n).then(|| &self.entries[n - 1 - index])
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ⊢* ", self.source)?;
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "(∅")?;
        for p in parts {
            write!(f, " , {p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The term `sigma` assigns to `v`; index 0 is the rightmost entry.
pub fn lookup(sigma: &Subst, v: TypedVar) -> Option<Tm> {
    sigma
        .lookup_node(v.0)
        .map(|e| Tm::new(sigma.source.clone(), e.clone()))
}

/// The identity substitution: entry `i` (from the right) is variable `i`.
pub fn refl_sub(ctx: &Ctx) -> Subst {
    let n = ctx.len();
    Subst {
        source: ctx.clone(),
        entries: ctx
            .as_slice()
            .iter()
            .enumerate()
            .map(|(pos, t)| TmNode::Var {
                ty: t.clone(),
                index: n - 1 - pos,
            })
            .collect(),
    }
}

/// Lifts `sigma: Γ ⊢* Δ` under binders of types `tys`, giving
/// `Γ <>< tys ⊢* Δ <>< tys`.
pub fn shift_star(lang: &LanguageDescription, tys: &[Ty], sigma: &Subst) -> Result<Subst, ScopeError> {
    if tys.is_empty() {
        return Ok(sigma.clone());
    }
    let weaken = Ope::weakening(&sigma.source, tys);
    let mut entries = sigma
        .entries
        .iter()
        .map(|e| ren_node(lang, &weaken, e))
        .collect::<Result<Vec<_>, _>>()?;
    let m = tys.len();
    entries.extend(tys.iter().enumerate().map(|(i, t)| TmNode::Var {
        ty: t.clone(),
        index: m - 1 - i,
    }));
    Ok(Subst {
        source: sigma.source.extend(tys),
        entries,
    })
}

/// `sigma ∘ rho` for `sigma: Γ ⊢* Θ` and `rho: Θ ⊇ Δ`: the entries of
/// `sigma` at the positions `rho` keeps.
pub fn compose_sub_ope(sigma: &Subst, rho: &Ope) -> Result<Subst, ScopeError> {
    expect_ctx(&sigma.target(), &rho.source())?;
    let entries = sigma
        .entries
        .iter()
        .zip(&rho.steps)
        .filter(|(_, (s, _))| *s == OpeStep::Keep)
        .map(|(e, _)| e.clone())
        .collect();
    Ok(Subst {
        source: sigma.source.clone(),
        entries,
    })
}

/// `rho ∘ sigma` for `rho: Γ ⊇ Θ` and `sigma: Θ ⊢* Δ`: every entry renamed.
pub fn compose_ope_sub(lang: &LanguageDescription, rho: &Ope, sigma: &Subst) -> Result<Subst, ScopeError> {
    expect_ctx(&rho.target(), &sigma.source)?;
    let entries = sigma
        .entries
        .iter()
        .map(|e| ren_node(lang, rho, e))
        .collect::<Result<_, _>>()?;
    Ok(Subst {
        source: rho.source(),
        entries,
    })
}

/// `sigma2 ∘ sigma1` for `sigma2: Γ ⊢* Θ` and `sigma1: Θ ⊢* Δ`.
pub fn compose_sub_sub(lang: &LanguageDescription, sigma2: &Subst, sigma1: &Subst) -> Result<Subst, ScopeError> {
    expect_ctx(&sigma2.target(), &sigma1.source)?;
    let entries = sigma1
        .entries
        .iter()
        .map(|e| sub_node(lang, sigma2, e))
        .collect::<Result<_, _>>()?;
    Ok(Subst {
        source: sigma2.source.clone(),
        entries,
    })
}
