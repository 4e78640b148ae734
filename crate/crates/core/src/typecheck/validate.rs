use crate::descriptions::{visible_types, LanguageDescription, NodeDesc, Ty, TyPattern};
use crate::terms::{Ctx, TermPath, Tm, TmNode};

use super::unify::Pat;
use super::{TypeError, TypeErrorKind};

/// Independent check of a typed term: every node's stored types satisfy its
/// equations and every variable's type agrees with its context. Errors are
/// sorted by path.
pub fn validate_typed(lang: &LanguageDescription, e: &Tm) -> Vec<TypeError> {
    let mut out = Vec::new();
    let root = TermPath::default();
    for t in e.ctx.as_slice() {
        if let Err(err) = lang.tysig.check(t) {
            out.push(TypeError::new(root.clone(), TypeErrorKind::MalformedNode(err.to_string())));
        }
    }
    go(lang, &e.ctx, &e.root, &root, &mut out);
    out.sort_by(|a, b| a.path.cmp(&b.path));
    out
}

fn go(lang: &LanguageDescription, ctx: &Ctx, e: &TmNode, at: &TermPath, out: &mut Vec<TypeError>) {
    let push = |out: &mut Vec<TypeError>, kind| out.push(TypeError::new(at.clone(), kind));
    if let Err(err) = lang.tysig.check(e.ty()) {
        push(out, TypeErrorKind::MalformedNode(err.to_string()));
        return;
    }
    match e {
        TmNode::Var { ty, index } => match ctx.lookup(*index) {
            None => push(out, TypeErrorKind::UnboundVar(*index)),
            Some(t) if t != ty => push(
                out,
                TypeErrorKind::Mismatch {
                    expected: Pat::from(t),
                    got: Pat::from(ty),
                },
            ),
            Some(_) => {}
        },
        TmNode::Con {
            ty,
            path,
            ts0,
            children,
        } => {
            let (node, payloads) = match lang.node_with_payloads(path) {
                Ok(x) => x,
                Err(err) => return push(out, TypeErrorKind::MalformedNode(err.to_string())),
            };
            if ts0.len() != node.n || children.len() != node.k() {
                return push(
                    out,
                    TypeErrorKind::MalformedNode(format!(
                        "expected {} binder types and {} children, found {} and {}",
                        node.n,
                        node.k(),
                        ts0.len(),
                        children.len()
                    )),
                );
            }
            for t in ts0.iter().chain(payloads.iter().map(|(_, t)| t)) {
                if let Err(err) = lang.tysig.check(t) {
                    return push(out, TypeErrorKind::MalformedNode(err.to_string()));
                }
            }
            let env = Env {
                ty,
                ts0,
                children,
                payloads: &payloads,
            };
            for (i, (l, r)) in node.constraint.equations.iter().enumerate() {
                match (env.eval(l), env.eval(r)) {
                    (Some(a), Some(b)) if a == b => {}
                    _ => push(out, unsatisfied(node, i)),
                }
            }
            for (j, (child, row)) in children.iter().zip(&node.shape.rows).enumerate() {
                let visible = visible_types(row, ts0).expect("row length checked");
                go(lang, &ctx.extend(&visible), child, &at.child(j), out);
            }
        }
    }
}

fn unsatisfied(node: &NodeDesc, index: usize) -> TypeErrorKind {
    let (l, r) = &node.constraint.equations[index];
    TypeErrorKind::ConstraintUnsatisfied {
        index,
        equation: format!("{l} = {r}"),
    }
}

struct Env<'a> {
    ty: &'a Ty,
    ts0: &'a [Ty],
    children: &'a [TmNode],
    payloads: &'a [(crate::descriptions::Ident, Ty)],
}

impl Env<'_> {
    /// `None` when a metavariable is out of range or a payload is missing.
    fn eval(&self, p: &TyPattern) -> Option<Ty> {
        Some(match p {
            TyPattern::Con(c, args) => Ty::new(
                c.clone(),
                args.iter().map(|a| self.eval(a)).collect::<Option<Vec<_>>>()?,
            ),
            TyPattern::MetaB(i) => self.ts0.get(*i)?.clone(),
            TyPattern::MetaS(j) => self.children.get(*j)?.ty().clone(),
            TyPattern::MetaR => self.ty.clone(),
            TyPattern::MetaP(n) => self.payloads.iter().rev().find(|(b, _)| b == n)?.1.clone(),
        })
    }
}
