//! Type-preserving renaming and simultaneous substitution, once for every
//! description.
//!
//! Both traversals walk a constructor's path to its node description and use
//! the shape row of each child to decide how far to extend the renaming or
//! substitution before descending: by the types of the newly bound variables
//! that row makes visible.

use crate::descriptions::{visible_types, LanguageDescription};
use crate::scope::{keep_star, ren_var, refl_sub, shift_star, Ope, ScopeError, Subst};
use crate::terms::{Ctx, Tm, TmNode, TypedVar};

/// Renames `e: Tm Δ t` along `rho: Γ ⊇ Δ`, giving a `Tm Γ t`.
pub fn ren(lang: &LanguageDescription, rho: &Ope, e: &Tm) -> Result<Tm, ScopeError> {
    let target = rho.target();
    if target != e.ctx {
        return Err(ScopeError::ContextMismatch {
            expected: target,
            found: e.ctx.clone(),
        });
    }
    Ok(Tm::new(rho.source(), ren_node(lang, rho, &e.root)?))
}

pub(crate) fn ren_node(lang: &LanguageDescription, rho: &Ope, e: &TmNode) -> Result<TmNode, ScopeError> {
    match e {
        TmNode::Var { ty, index } => {
            let v = ren_var(rho, TypedVar(*index)).ok_or(ScopeError::VarOutOfRange {
                index: *index,
                size: rho.target().len(),
            })?;
            Ok(TmNode::Var {
                ty: ty.clone(),
                index: v.0,
            })
        }
        TmNode::Con {
            ty,
            path,
            ts0,
            children,
        } => {
            let node = lang.node_at(path)?;
            let mut out = Vec::with_capacity(children.len());
            for (child, row) in children.iter().zip(&node.shape.rows) {
                let visible = visible_types(row, ts0)?;
                let r = if visible.is_empty() {
                    ren_node(lang, rho, child)?
                } else {
                    ren_node(lang, &keep_star(&visible, rho), child)?
                };
                out.push(r);
            }
            Ok(TmNode::Con {
                ty: ty.clone(),
                path: path.clone(),
                ts0: ts0.clone(),
                children: out,
            })
        }
    }
}

/// Applies `sigma: Γ ⊢* Δ` to `e: Tm Δ t`, giving a `Tm Γ t`.
pub fn sub(lang: &LanguageDescription, sigma: &Subst, e: &Tm) -> Result<Tm, ScopeError> {
    let target = sigma.target();
    if target != e.ctx {
        return Err(ScopeError::ContextMismatch {
            expected: target,
            found: e.ctx.clone(),
        });
    }
    Ok(Tm::new(sigma.source().clone(), sub_node(lang, sigma, &e.root)?))
}

pub(crate) fn sub_node(lang: &LanguageDescription, sigma: &Subst, e: &TmNode) -> Result<TmNode, ScopeError> {
    match e {
        TmNode::Var { index, .. } => sigma
            .lookup_node(*index)
            .cloned()
            .ok_or(ScopeError::VarOutOfRange {
                index: *index,
                size: sigma.len(),
            }),
        TmNode::Con {
            ty,
            path,
            ts0,
            children,
        } => {
            let node = lang.node_at(path)?;
            let mut out = Vec::with_capacity(children.len());
            for (child, row) in children.iter().zip(&node.shape.rows) {
                let visible = visible_types(row, ts0)?;
                let s = if visible.is_empty() {
                    sub_node(lang, sigma, child)?
                } else {
                    sub_node(lang, &shift_star(lang, &visible, sigma)?, child)?
                };
                out.push(s);
            }
            Ok(TmNode::Con {
                ty: ty.clone(),
                path: path.clone(),
                ts0: ts0.clone(),
                children: out,
            })
        }
    }
}

/// Single-variable substitution: replaces variable 0 of `body: Tm (Γ, t) u`
/// by `e0: Tm Γ t`.
pub fn sub1(lang: &LanguageDescription, e0: &Tm, body: &Tm) -> Result<Tm, ScopeError> {
    let expected: Ctx = e0.ctx.clone().snoc(e0.ty().clone());
    if body.ctx != expected {
        return Err(ScopeError::ContextMismatch {
            expected,
            found: body.ctx.clone(),
        });
    }
    let sigma = refl_sub(&e0.ctx).snoc(e0.clone())?;
    sub(lang, &sigma, body)
}
