//! Hand-written reference implementations for the lambda calculus pack. They
//! read library trees only through `T`, a plain local term type, and share
//! no code with scoping, substitution, typechecking or generation.

use std::collections::{HashMap, HashSet};

use gensyn::terms::{ExprNode, SgChoice, TmNode};
use gensyn::Ty;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum T {
    Var(usize),
    /// Domain, when known.
    Lam(Option<Ty>, Box<T>),
    App(Box<T>, Box<T>),
    Let(Box<T>, Box<T>),
    Bool(bool),
    If(Box<T>, Box<T>, Box<T>),
}

fn tag_of(path: &[SgChoice]) -> &str {
    match &path[0] {
        SgChoice::Tag(t) => t.as_str(),
        SgChoice::TyPayload(_) => panic!("path starts with a payload"),
    }
}

fn build(tag: &str, dom: Option<Ty>, mut cs: Vec<T>) -> T {
    let mut next = || Box::new(cs.remove(0));
    match tag {
        "lam" => T::Lam(dom, next()),
        "app" => T::App(next(), next()),
        "let" => T::Let(next(), next()),
        "true" => T::Bool(true),
        "false" => T::Bool(false),
        "if" => T::If(next(), next(), next()),
        other => panic!("unexpected tag {other}"),
    }
}

pub fn from_tm(e: &TmNode) -> T {
    match e {
        TmNode::Var { index, .. } => T::Var(*index),
        TmNode::Con {
            path, ts0, children, ..
        } => {
            let tag = tag_of(path);
            let dom = (tag == "lam").then(|| ts0[0].clone());
            build(tag, dom, children.iter().map(from_tm).collect())
        }
    }
}

pub fn from_expr(e: &ExprNode) -> T {
    match e {
        ExprNode::Var(i) => T::Var(*i),
        ExprNode::Con { path, children } => {
            let dom = path.iter().find_map(|c| match c {
                SgChoice::TyPayload(t) => Some(t.clone()),
                SgChoice::Tag(_) => None,
            });
            build(tag_of(path), dom, children.iter().map(from_expr).collect())
        }
    }
}

pub fn base() -> Ty {
    Ty::atom("base")
}

pub fn boolean() -> Ty {
    Ty::atom("bool")
}

pub fn arrow(a: Ty, b: Ty) -> Ty {
    Ty::new("->", vec![a, b])
}

fn split_arrow(t: &Ty) -> Option<(&Ty, &Ty)> {
    (t.ctor.as_str() == "->").then(|| (&t.args[0], &t.args[1]))
}

/// `base`, `bool` and the four arrows between them.
pub fn small_types() -> Vec<Ty> {
    let atoms = [base(), boolean()];
    let mut out = atoms.to_vec();
    for a in &atoms {
        for b in &atoms {
            out.push(arrow(a.clone(), b.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Bool(bool),
    Clo(Vec<Val>, T),
}

/// Environment-passing evaluator with native `let`.
pub fn bigstep(env: &[Val], t: &T) -> Val {
    match t {
        T::Var(i) => env[env.len() - 1 - i].clone(),
        T::Lam(_, body) => Val::Clo(env.to_vec(), (**body).clone()),
        T::App(f, x) => {
            let Val::Clo(mut cenv, body) = bigstep(env, f) else {
                panic!("applied a boolean")
            };
            cenv.push(bigstep(env, x));
            bigstep(&cenv, &body)
        }
        T::Let(e0, body) => {
            let mut env2 = env.to_vec();
            env2.push(bigstep(env, e0));
            bigstep(&env2, body)
        }
        T::Bool(b) => Val::Bool(*b),
        T::If(c, thn, els) => match bigstep(env, c) {
            Val::Bool(true) => bigstep(env, thn),
            Val::Bool(false) => bigstep(env, els),
            Val::Clo(..) => panic!("branched on a closure"),
        },
    }
}

/// Syntax-directed typing for fully annotated terms.
pub fn church_infer(ctx: &mut Vec<Ty>, t: &T) -> Option<Ty> {
    match t {
        T::Var(i) => ctx.len().checked_sub(i + 1).map(|p| ctx[p].clone()),
        T::Lam(dom, body) => {
            let dom = dom.clone()?;
            ctx.push(dom.clone());
            let r = church_infer(ctx, body);
            ctx.pop();
            Some(arrow(dom, r?))
        }
        T::App(f, x) => {
            let tf = church_infer(ctx, f)?;
            let tx = church_infer(ctx, x)?;
            let (a, r) = split_arrow(&tf)?;
            (a == &tx).then(|| r.clone())
        }
        T::Let(e0, body) => {
            let a = church_infer(ctx, e0)?;
            ctx.push(a);
            let r = church_infer(ctx, body);
            ctx.pop();
            r
        }
        T::Bool(_) => Some(boolean()),
        T::If(c, thn, els) => {
            let tc = church_infer(ctx, c)?;
            let (a, b) = (church_infer(ctx, thn)?, church_infer(ctx, els)?);
            (tc == boolean() && a == b).then_some(a)
        }
    }
}

/// Every term of type `t` in `ctx` with exactly `n` nodes, over variables,
/// `lam`, `app`, booleans and `if`. Argument types of applications range over
/// `types`; lambda domains come from the expected type.
pub struct Enumerator {
    types: Vec<Ty>,
    bools: bool,
    memo: HashMap<(Vec<Ty>, Ty, usize), Vec<T>>,
}

impl Enumerator {
    pub fn new(types: Vec<Ty>, bools: bool) -> Self {
        Enumerator {
            types,
            bools,
            memo: HashMap::new(),
        }
    }

    pub fn terms(&mut self, ctx: &[Ty], t: &Ty, n: usize) -> Vec<T> {
        let key = (ctx.to_vec(), t.clone(), n);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            for (p, c) in ctx.iter().enumerate() {
                if c == t {
                    out.push(T::Var(ctx.len() - 1 - p));
                }
            }
            if self.bools && *t == boolean() {
                out.push(T::Bool(true));
                out.push(T::Bool(false));
            }
        }
        if n >= 2 {
            if let Some((a, b)) = split_arrow(t) {
                let mut inner = ctx.to_vec();
                inner.push(a.clone());
                for body in self.terms(&inner, b, n - 1) {
                    out.push(T::Lam(Some(a.clone()), Box::new(body)));
                }
            }
            for a in self.types.clone() {
                let ft = arrow(a.clone(), t.clone());
                for n1 in 1..n - 1 {
                    let fs = self.terms(ctx, &ft, n1);
                    if fs.is_empty() {
                        continue;
                    }
                    let xs = self.terms(ctx, &a, n - 1 - n1);
                    for f in &fs {
                        for x in &xs {
                            out.push(T::App(Box::new(f.clone()), Box::new(x.clone())));
                        }
                    }
                }
            }
            if self.bools {
                for n1 in 1..n {
                    for n2 in 1..n {
                        if n1 + n2 + 1 >= n {
                            continue;
                        }
                        let n3 = n - 1 - n1 - n2;
                        let cs = self.terms(ctx, &boolean(), n1);
                        let ts = self.terms(ctx, t, n2);
                        let es = self.terms(ctx, t, n3);
                        for c in &cs {
                            for a in &ts {
                                for b in &es {
                                    out.push(T::If(Box::new(c.clone()), Box::new(a.clone()), Box::new(b.clone())));
                                }
                            }
                        }
                    }
                }
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// Closed terms of at most `max_nodes` nodes at every type in `result_types`.
    pub fn closed(&mut self, result_types: &[Ty], max_nodes: usize) -> HashSet<(Ty, T)> {
        let mut out = HashSet::new();
        for t in result_types {
            for n in 1..=max_nodes {
                for e in self.terms(&[], t, n) {
                    out.insert((t.clone(), e));
                }
            }
        }
        out
    }
}

/// Whether some term of type `t` exists in `ctx` within a constructor
/// nesting budget (variables cost nothing).
pub fn inhabited(types: &[Ty], bools: bool, ctx: &[Ty], t: &Ty, budget: usize) -> bool {
    if ctx.contains(t) {
        return true;
    }
    if budget == 0 {
        return false;
    }
    if bools && *t == boolean() {
        return true;
    }
    if let Some((a, b)) = split_arrow(t) {
        let mut inner = ctx.to_vec();
        inner.push(a.clone());
        if inhabited(types, bools, &inner, b, budget - 1) {
            return true;
        }
    }
    types.iter().any(|a| {
        inhabited(types, bools, ctx, &arrow(a.clone(), t.clone()), budget - 1)
            && inhabited(types, bools, ctx, a, budget - 1)
    })
}
