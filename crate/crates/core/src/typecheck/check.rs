use crate::descriptions::{Binder, LanguageDescription, NodeDesc, Ty};
use crate::terms::{Ctx, Expr, ExprNode, SgChoice, TermPath, Tm, TmNode};

use super::solve::solve;
use super::unify::{Meta, Pat, UnifyError, UnifyState};
use super::{TypeError, TypeErrorKind};

/// Elaborates `e` against the known type `t` in `ctx`.
pub fn check(lang: &LanguageDescription, ctx: &Ctx, e: &Expr, t: &Ty) -> Result<Tm, TypeError> {
    prepare(lang, ctx, e)?;
    lang.tysig.check(t).map_err(|err| malformed(&TermPath::default(), err.to_string()))?;
    let root = Elab { lang }
        .node(ctx, &e.root, &Pat::from(t), &TermPath::default())
        .or_else(|err| fallback(lang, ctx, e, Some(t), err))?;
    Ok(Tm::new(ctx.clone(), root))
}

/// Elaborates `e` in `ctx`, synthesising its type.
pub fn infer(lang: &LanguageDescription, ctx: &Ctx, e: &Expr) -> Result<Tm, TypeError> {
    prepare(lang, ctx, e)?;
    let root = Elab { lang }
        .node(ctx, &e.root, &Pat::Meta(Meta::Hole(0)), &TermPath::default())
        .or_else(|err| fallback(lang, ctx, e, None, err))?;
    Ok(Tm::new(ctx.clone(), root))
}

/// Retries a term that stopped on an undetermined type as one whole-term
/// unification problem. Keeps the original error if that fails too.
fn fallback(lang: &LanguageDescription, ctx: &Ctx, e: &Expr, t: Option<&Ty>, err: TypeError) -> Result<TmNode, TypeError> {
    if !matches!(err.kind, TypeErrorKind::AnnotationRequired(_)) {
        return Err(err);
    }
    solve(lang, ctx.as_slice(), &e.root, t).ok_or(err)
}

fn prepare(lang: &LanguageDescription, ctx: &Ctx, e: &Expr) -> Result<(), TypeError> {
    let root = TermPath::default();
    if e.scope != ctx.len() {
        return Err(TypeError::new(
            root,
            TypeErrorKind::ContextMismatch {
                scope: e.scope,
                ctx: ctx.len(),
            },
        ));
    }
    for t in ctx.as_slice() {
        lang.tysig.check(t).map_err(|err| malformed(&root, err.to_string()))?;
    }
    Ok(())
}

fn malformed(at: &TermPath, msg: String) -> TypeError {
    TypeError::new(at.clone(), TypeErrorKind::MalformedNode(msg))
}

/// Replaces every metavariable by a hole, keeping sharing.
fn to_hint(p: &Pat) -> Pat {
    let metas = p.metas();
    fn go(p: &Pat, metas: &[Meta]) -> Pat {
        match p {
            Pat::Con(c, args) => Pat::Con(c.clone(), args.iter().map(|a| go(a, metas)).collect()),
            Pat::Meta(m) => Pat::Meta(Meta::Hole(metas.iter().position(|x| x == m).unwrap())),
        }
    }
    go(p, &metas)
}

struct Elab<'l> {
    lang: &'l LanguageDescription,
}

type Equations = Vec<(Pat, Pat)>;

impl Elab<'_> {
    fn node(&self, ctx: &Ctx, e: &ExprNode, expected: &Pat, at: &TermPath) -> Result<TmNode, TypeError> {
        match e {
            ExprNode::Var(i) => {
                let ty = ctx
                    .lookup(*i)
                    .ok_or_else(|| TypeError::new(at.clone(), TypeErrorKind::UnboundVar(*i)))?;
                let got = Pat::from(ty);
                UnifyState::new().unify_pats(expected, &got).map_err(|_| {
                    TypeError::new(
                        at.clone(),
                        TypeErrorKind::Mismatch {
                            expected: expected.clone(),
                            got,
                        },
                    )
                })?;
                Ok(TmNode::Var {
                    ty: ty.clone(),
                    index: *i,
                })
            }
            ExprNode::Con { path, children } => self.con(ctx, path, children, expected, at),
        }
    }

    fn con(
        &self,
        ctx: &Ctx,
        path: &[SgChoice],
        children: &[ExprNode],
        expected: &Pat,
        at: &TermPath,
    ) -> Result<TmNode, TypeError> {
        let (node, payloads) = self
            .lang
            .node_with_payloads(path)
            .map_err(|err| malformed(at, err.to_string()))?;
        if children.len() != node.k() {
            return Err(malformed(
                at,
                format!("expected {} children, found {}", node.k(), children.len()),
            ));
        }
        let eqs: Equations = node
            .constraint
            .equations
            .iter()
            .map(|(l, r)| (Pat::from(l), Pat::from(r)))
            .collect();

        let mut st = self.seed(&payloads, at)?;
        for (i, (l, r)) in eqs.iter().enumerate() {
            st.unify_pats(l, r).map_err(|err| equation_error(node, at, i, err))?;
        }
        let got = st.resolve(&Pat::Meta(Meta::R));
        st.unify_pats(&Pat::Meta(Meta::R), expected).map_err(|err| match err {
            UnifyError::Occurs { meta, pat } => TypeError::new(at.clone(), TypeErrorKind::OccursCheck { meta, pat }),
            UnifyError::Mismatch { .. } => TypeError::new(
                at.clone(),
                TypeErrorKind::Mismatch {
                    expected: expected.clone(),
                    got,
                },
            ),
        })?;

        let k = node.k();
        let mut done: Vec<Option<TmNode>> = vec![None; k];
        while done.iter().any(Option::is_none) {
            let mut progress = false;
            let mut deferred: Option<TypeError> = None;
            for j in 0..k {
                if done[j].is_some() {
                    continue;
                }
                let mut visible = Vec::new();
                let mut missing = None;
                for (i, b) in node.shape.rows[j].iter().enumerate() {
                    if *b == Binder::Bound {
                        match st.ground_meta(Meta::B(i)) {
                            Some(t) => visible.push(t),
                            None => {
                                missing = Some(i);
                                break;
                            }
                        }
                    }
                }
                if let Some(i) = missing {
                    deferred.get_or_insert_with(|| {
                        TypeError::new(at.clone(), TypeErrorKind::AnnotationRequired(Meta::B(i)))
                    });
                    continue;
                }
                let child_ctx = ctx.extend(&visible);
                let child_at = at.child(j);
                let hint = to_hint(&st.resolve(&Pat::Meta(Meta::S(j))));
                match self.node(&child_ctx, &children[j], &hint, &child_at) {
                    Ok(tm) => {
                        if let Err(err) = st.unify_pats(&Pat::Meta(Meta::S(j)), &Pat::from(tm.ty())) {
                            let i = self.failing_equation(node, &payloads, &done, j, tm.ty(), at)?;
                            return Err(match i {
                                Some(i) => unsatisfied(node, at, i),
                                None => equation_error(node, at, 0, err),
                            });
                        }
                        done[j] = Some(tm);
                        progress = true;
                    }
                    Err(err) if matches!(err.kind, TypeErrorKind::AnnotationRequired(_)) => {
                        deferred.get_or_insert(err);
                    }
                    Err(err) if err.path == child_at && matches!(err.kind, TypeErrorKind::Mismatch { .. }) => {
                        // Blame this node when the child is fine on its own.
                        let alone = self.node(&child_ctx, &children[j], &Pat::Meta(Meta::Hole(0)), &child_at);
                        if let Ok(tm) = alone {
                            let mut pinned: Vec<Option<Ty>> = done.iter().map(|d| d.as_ref().map(|t| t.ty().clone())).collect();
                            pinned[j] = Some(tm.ty().clone());
                            for s in 0..k {
                                if pinned[s].is_none() {
                                    pinned[s] = self.infer_alone(ctx, node, &st, &children[s], &at.child(s));
                                }
                            }
                            if let Some(i) = self.failing_equation_pinned(node, &payloads, &pinned, at)? {
                                return Err(unsatisfied(node, at, i));
                            }
                        }
                        return Err(err);
                    }
                    Err(err) => return Err(err),
                }
            }
            if !progress && done.iter().any(Option::is_none) {
                return Err(deferred.expect("an unfinished child was deferred"));
            }
        }

        let ground = |m: Meta| {
            st.ground_meta(m.clone())
                .ok_or_else(|| TypeError::new(at.clone(), TypeErrorKind::AnnotationRequired(m)))
        };
        let ts0 = (0..node.n).map(|i| ground(Meta::B(i))).collect::<Result<Vec<_>, _>>()?;
        let ty = ground(Meta::R)?;
        for (i, (l, r)) in eqs.iter().enumerate() {
            if st.resolve(l) != st.resolve(r) {
                return Err(unsatisfied(node, at, i));
            }
        }
        Ok(TmNode::Con {
            ty,
            path: path.to_vec(),
            ts0,
            children: done.into_iter().map(Option::unwrap).collect(),
        })
    }

    fn seed(&self, payloads: &[(crate::descriptions::Ident, Ty)], at: &TermPath) -> Result<UnifyState, TypeError> {
        let mut st = UnifyState::new();
        for (b, t) in payloads {
            self.lang.tysig.check(t).map_err(|err| malformed(at, err.to_string()))?;
            st.unify_pats(&Pat::Meta(Meta::P(b.clone())), &Pat::from(t))
                .map_err(|_| malformed(at, format!("conflicting payloads for `{b}`")))?;
        }
        Ok(st)
    }

    /// The first equation that fails once the finished children and child
    /// `j` are pinned to their own types, ignoring the expected type.
    fn failing_equation(
        &self,
        node: &NodeDesc,
        payloads: &[(crate::descriptions::Ident, Ty)],
        done: &[Option<TmNode>],
        j: usize,
        ty: &Ty,
        at: &TermPath,
    ) -> Result<Option<usize>, TypeError> {
        let mut pinned: Vec<Option<Ty>> = done.iter().map(|d| d.as_ref().map(|t| t.ty().clone())).collect();
        pinned[j] = Some(ty.clone());
        self.failing_equation_pinned(node, payloads, &pinned, at)
    }

    /// The type of child `e` inferred without any expectation, if the
    /// variables it sees are already known.
    fn infer_alone(&self, ctx: &Ctx, node: &NodeDesc, st: &UnifyState, e: &ExprNode, at: &TermPath) -> Option<Ty> {
        let j = *at.0.last()?;
        let mut visible = Vec::new();
        for (i, b) in node.shape.rows[j].iter().enumerate() {
            if *b == Binder::Bound {
                visible.push(st.ground_meta(Meta::B(i))?);
            }
        }
        let tm = self.node(&ctx.extend(&visible), e, &Pat::Meta(Meta::Hole(0)), at).ok()?;
        Some(tm.ty().clone())
    }

    fn failing_equation_pinned(
        &self,
        node: &NodeDesc,
        payloads: &[(crate::descriptions::Ident, Ty)],
        pinned: &[Option<Ty>],
        at: &TermPath,
    ) -> Result<Option<usize>, TypeError> {
        let mut st = self.seed(payloads, at)?;
        for (s, ty) in pinned.iter().enumerate() {
            if let Some(ty) = ty {
                st.unify_pats(&Pat::Meta(Meta::S(s)), &Pat::from(ty)).ok();
            }
        }
        for (i, (l, r)) in node.constraint.equations.iter().enumerate() {
            if st.unify_pats(&Pat::from(l), &Pat::from(r)).is_err() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

fn unsatisfied(node: &NodeDesc, at: &TermPath, index: usize) -> TypeError {
    let (l, r) = &node.constraint.equations[index];
    TypeError::new(
        at.clone(),
        TypeErrorKind::ConstraintUnsatisfied {
            index,
            equation: format!("{l} = {r}"),
        },
    )
}

fn equation_error(node: &NodeDesc, at: &TermPath, index: usize, err: UnifyError) -> TypeError {
    match err {
        UnifyError::Occurs { meta, pat } => TypeError::new(at.clone(), TypeErrorKind::OccursCheck { meta, pat }),
        UnifyError::Mismatch { .. } => unsatisfied(node, at, index),
    }
}
