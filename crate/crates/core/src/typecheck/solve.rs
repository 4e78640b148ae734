//! Whole-term fallback for terms the node-by-node pass cannot finish
//! because a bound variable's type is only fixed by how it is used.
//! All node equations go into one unification problem and unknown binder
//! types sit in the context as holes.

use std::collections::BTreeMap;

use crate::descriptions::{Binder, LanguageDescription, Ty};
use crate::terms::{ExprNode, SgChoice, TmNode};

use super::unify::{Meta, Pat, UnifyState};

enum Draft {
    Var {
        ty: Pat,
        index: usize,
    },
    Con {
        ty: Pat,
        path: Vec<SgChoice>,
        ts0: Vec<Pat>,
        children: Vec<Draft>,
    },
}

impl Draft {
    fn ty(&self) -> &Pat {
        match self {
            Draft::Var { ty, .. } | Draft::Con { ty, .. } => ty,
        }
    }
}

struct Solver<'l> {
    lang: &'l LanguageDescription,
    st: UnifyState,
    next: usize,
}

/// `None` when the constraints are unsatisfiable or leave a type open.
pub(super) fn solve(lang: &LanguageDescription, ctx: &[Ty], e: &ExprNode, expected: Option<&Ty>) -> Option<TmNode> {
    let mut s = Solver {
        lang,
        st: UnifyState::new(),
        next: 0,
    };
    let mut scope: Vec<Pat> = ctx.iter().map(Pat::from).collect();
    let draft = s.draft(&mut scope, e)?;
    if let Some(t) = expected {
        s.st.unify_pats(draft.ty(), &Pat::from(t)).ok()?;
    }
    s.ground(&draft)
}

impl Solver<'_> {
    fn fresh(&mut self) -> Pat {
        self.next += 1;
        Pat::Meta(Meta::Hole(self.next - 1))
    }

    fn draft(&mut self, scope: &mut Vec<Pat>, e: &ExprNode) -> Option<Draft> {
        let (path, children) = match e {
            ExprNode::Var(i) => {
                let p = scope.len().checked_sub(i + 1)?;
                return Some(Draft::Var {
                    ty: scope[p].clone(),
                    index: *i,
                });
            }
            ExprNode::Con { path, children } => (path, children),
        };
        let (node, payloads) = self.lang.node_with_payloads(path).ok()?;
        if children.len() != node.k() {
            return None;
        }
        let mut local: BTreeMap<Meta, Pat> = BTreeMap::new();
        for (b, t) in &payloads {
            self.lang.tysig.check(t).ok()?;
            local.insert(Meta::P(b.clone()), Pat::from(t));
        }
        for i in 0..node.n {
            let h = self.fresh();
            local.insert(Meta::B(i), h);
        }
        for j in 0..node.k() {
            let h = self.fresh();
            local.insert(Meta::S(j), h);
        }
        let r = self.fresh();
        local.insert(Meta::R, r);

        for (l, r) in &node.constraint.equations {
            let (l, r) = (instantiate(&local, &Pat::from(l))?, instantiate(&local, &Pat::from(r))?);
            self.st.unify_pats(&l, &r).ok()?;
        }
        let mut out = Vec::with_capacity(children.len());
        for (j, (row, c)) in node.shape.rows.iter().zip(children).enumerate() {
            let before = scope.len();
            for (i, b) in row.iter().enumerate() {
                if *b == Binder::Bound {
                    scope.push(local[&Meta::B(i)].clone());
                }
            }
            let child = self.draft(scope, c);
            scope.truncate(before);
            let child = child?;
            self.st.unify_pats(&local[&Meta::S(j)], child.ty()).ok()?;
            out.push(child);
        }
        Some(Draft::Con {
            ty: local[&Meta::R].clone(),
            path: path.clone(),
            ts0: (0..node.n).map(|i| local[&Meta::B(i)].clone()).collect(),
            children: out,
        })
    }

    fn ground(&self, d: &Draft) -> Option<TmNode> {
        Some(match d {
            Draft::Var { ty, index } => TmNode::Var {
                ty: self.st.ground(ty)?,
                index: *index,
            },
            Draft::Con {
                ty,
                path,
                ts0,
                children,
            } => TmNode::Con {
                ty: self.st.ground(ty)?,
                path: path.clone(),
                ts0: ts0.iter().map(|t| self.st.ground(t)).collect::<Option<_>>()?,
                children: children.iter().map(|c| self.ground(c)).collect::<Option<_>>()?,
            },
        })
    }
}

fn instantiate(local: &BTreeMap<Meta, Pat>, p: &Pat) -> Option<Pat> {
    Some(match p {
        Pat::Con(c, args) => Pat::Con(
            c.clone(),
            args.iter().map(|a| instantiate(local, a)).collect::<Option<_>>()?,
        ),
        Pat::Meta(m) => local.get(m)?.clone(),
    })
}
