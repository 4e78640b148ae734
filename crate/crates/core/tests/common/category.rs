//! Exhaustive action-level checks for embeddings and substitution
//! environments over every context up to a size bound.
//!
//! Embeddings are compared against a kept-position map: an embedding of
//! `delta` into `gamma` is the ascending list of `gamma` positions it keeps.

use std::collections::HashMap;

use gensyn::descriptions::LanguageDescription;
use gensyn::scope::{
    compose_ope, compose_ope_sub, compose_sub_ope, compose_sub_sub, keep_star, lookup, ren_var, refl_ope, refl_sub,
    shift_star,
};
use gensyn::subst::{ren, sub};
use gensyn::termgen::TermSpace;
use gensyn::terms::TypedVar;
use gensyn::{Ctx, Ope, Subst, Tm, TmNode, Ty};

pub fn contexts(types: &[Ty], max: usize) -> Vec<Ctx> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for c in &layer {
            for t in types {
                let mut c2: Vec<Ty> = c.clone();
                c2.push(t.clone());
                next.push(c2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(Ctx::new).collect()
}

/// Every embedding into `gamma`, with the positions it keeps.
pub fn embeddings(gamma: &Ctx) -> Vec<(Ope, Vec<usize>)> {
    let g = gamma.as_slice();
    (0u32..1 << g.len())
        .map(|mask| {
            let mut ope = Ope::done();
            let mut kept = Vec::new();
            for (p, t) in g.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    ope = ope.keep(t.clone());
                    kept.push(p);
                } else {
                    ope = ope.drop(t.clone());
                }
            }
            (ope, kept)
        })
        .collect()
}

pub fn oracle_ren_var(gamma_len: usize, kept: &[usize], i: usize) -> usize {
    gamma_len - 1 - kept[kept.len() - 1 - i]
}

fn restrict(gamma: &Ctx, kept: &[usize]) -> Ctx {
    Ctx::new(kept.iter().map(|p| gamma.as_slice()[*p].clone()).collect())
}

fn rv(rho: &Ope, i: usize) -> usize {
    ren_var(rho, TypedVar(i)).expect("variable in range").0
}

/// Checks the embedding algebra; returns how many facts were checked.
pub fn ope_laws(types: &[Ty], max_ctx: usize) -> Result<usize, String> {
    let mut checks = 0;
    for gamma in contexts(types, max_ctx) {
        let m = gamma.len();
        let id = refl_ope(&gamma);
        for (rho, kept) in embeddings(&gamma) {
            let delta = restrict(&gamma, &kept);
            if rho.source() != gamma || rho.target() != delta {
                return Err(format!("{rho}: replay gives [{}] <- [{}]", rho.source(), rho.target()));
            }
            let mut prev = None;
            for i in 0..delta.len() {
                let got = rv(&rho, i);
                if got != oracle_ren_var(m, &kept, i) {
                    return Err(format!("ren_var({rho}, {i}) = {got}"));
                }
                if gamma.lookup(got) != delta.lookup(i) {
                    return Err(format!("ren_var({rho}, {i}) changes the type"));
                }
                // Indices count from the right, so order is preserved
                // when larger inputs give larger outputs.
                if prev.is_some_and(|p| p >= got) {
                    return Err(format!("ren_var({rho}, ·) is not monotone at {i}"));
                }
                prev = Some(got);
                checks += 3;
            }
            if compose_ope(&id, &rho).as_ref() != Ok(&rho) || compose_ope(&rho, &refl_ope(&delta)).as_ref() != Ok(&rho) {
                return Err(format!("refl is not an identity for {rho}"));
            }
            for (rho1, kept1) in embeddings(&delta) {
                let c = compose_ope(&rho, &rho1).map_err(|e| e.to_string())?;
                for i in 0..kept1.len() {
                    let via = rv(&rho, rv(&rho1, i));
                    let expected = oracle_ren_var(m, &kept1.iter().map(|p| kept[*p]).collect::<Vec<_>>(), i);
                    if rv(&c, i) != via || via != expected {
                        return Err(format!("compose_ope({rho}, {rho1}) at {i}"));
                    }
                    checks += 1;
                }
            }
            for n in 0..=2usize.min(types.len()) {
                let ts: Vec<Ty> = types[..n].to_vec();
                let k = keep_star(&ts, &rho);
                for i in 0..n + delta.len() {
                    let expected = if i < n { i } else { rv(&rho, i - n) + n };
                    if rv(&k, i) != expected {
                        return Err(format!("keep_star({n} types, {rho}) at {i}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

/// Substitution entries: every term a constructor-budget of one allows.
struct Entries<'l> {
    space: TermSpace<'l>,
    memo: HashMap<(Ctx, Ty), Vec<TmNode>>,
}

impl Entries<'_> {
    fn get(&mut self, gamma: &Ctx, t: &Ty) -> Vec<TmNode> {
        if let Some(v) = self.memo.get(&(gamma.clone(), t.clone())) {
            return v.clone();
        }
        let v = self.space.within_budget(gamma, t, 1);
        self.memo.insert((gamma.clone(), t.clone()), v.clone());
        v
    }

    fn substs(&mut self, gamma: &Ctx, delta: &Ctx) -> Vec<Subst> {
        let mut partial: Vec<Vec<TmNode>> = vec![Vec::new()];
        for t in delta.as_slice() {
            let cands = self.get(gamma, t);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    cands.iter().map(move |c| {
                        let mut p = p.clone();
                        p.push(c.clone());
                        p
                    })
                })
                .collect();
        }
        partial
            .into_iter()
            .map(|es| Subst::from_entries(gamma.clone(), es))
            .collect()
    }
}

fn shift_all(lang: &LanguageDescription, tys: &[Ty], sigmas: &[Subst]) -> Result<Vec<Subst>, String> {
    sigmas
        .iter()
        .map(|s| shift_star(lang, tys, s).map_err(|e| e.to_string()))
        .collect()
}

fn oracle_lookup(sigma: &Subst, i: usize) -> Tm {
    let es = sigma.entries();
    Tm::new(sigma.source().clone(), es[es.len() - 1 - i].clone())
}

fn lk(sigma: &Subst, i: usize) -> Tm {
    lookup(sigma, TypedVar(i)).expect("variable in range")
}

/// Checks the substitution algebra; returns how many facts were checked.
pub fn subst_laws(lang: &LanguageDescription, types: &[Ty], max_ctx: usize) -> Result<usize, String> {
    let mut en = Entries {
        space: TermSpace::new(lang, 2),
        memo: HashMap::new(),
    };
    let ctxs = contexts(types, max_ctx);
    let mut checks = 0;
    let var = |c: &Ctx, i: usize| Tm::new(c.clone(), TmNode::Var { ty: c.lookup(i).unwrap().clone(), index: i });

    for gamma in &ctxs {
        let id = refl_sub(gamma);
        for i in 0..gamma.len() {
            if lk(&id, i) != var(gamma, i) {
                return Err(format!("lookup(refl_sub [{gamma}], {i})"));
            }
            checks += 1;
        }
        for ts in contexts(types, 2) {
            let shifted = shift_star(lang, ts.as_slice(), &id).map_err(|e| e.to_string())?;
            if shifted != refl_sub(&gamma.extend(ts.as_slice())) {
                return Err(format!("shift_star([{ts}], refl_sub [{gamma}])"));
            }
            checks += 1;
        }
    }

    for gamma in &ctxs {
        for theta in &ctxs {
            let sigmas = en.substs(gamma, theta);
            for sigma in &sigmas {
                for i in 0..theta.len() {
                    if lk(sigma, i) != oracle_lookup(sigma, i) {
                        return Err(format!("lookup({sigma}, {i})"));
                    }
                }
                // sub . ope
                for (rho, _) in embeddings(theta) {
                    let c = compose_sub_ope(sigma, &rho).map_err(|e| e.to_string())?;
                    for i in 0..rho.target().len() {
                        if lk(&c, i) != lk(sigma, rv(&rho, i)) {
                            return Err(format!("compose_sub_ope({sigma}, {rho}) at {i}"));
                        }
                        checks += 1;
                    }
                }
                if compose_sub_ope(sigma, &refl_ope(theta)).as_ref() != Ok(sigma) {
                    return Err(format!("compose_sub_ope({sigma}, refl)"));
                }
                if compose_ope_sub(lang, &refl_ope(gamma), sigma).as_ref() != Ok(sigma) {
                    return Err(format!("compose_ope_sub(refl, {sigma})"));
                }
                if compose_sub_sub(lang, &refl_sub(gamma), sigma).as_ref() != Ok(sigma)
                    || compose_sub_sub(lang, sigma, &refl_sub(theta)).as_ref() != Ok(sigma)
                {
                    return Err(format!("refl_sub is not an identity for {sigma}"));
                }
                checks += 3;
            }
        }
    }

    // ope . sub: the embedding is into a larger context, so enumerate it
    // from the outer context downwards.
    for outer in &ctxs {
        for (rho, kept) in embeddings(outer) {
            let gamma = restrict(outer, &kept);
            for delta in &ctxs {
                for sigma in en.substs(&gamma, delta) {
                    let c = compose_ope_sub(lang, &rho, &sigma).map_err(|e| e.to_string())?;
                    for i in 0..delta.len() {
                        let expected = ren(lang, &rho, &lk(&sigma, i)).map_err(|e| e.to_string())?;
                        if lk(&c, i) != expected {
                            return Err(format!("compose_ope_sub({rho}, {sigma}) at {i}"));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }

    // sub . sub, and shift_star commuting with it.
    let one: Vec<Ty> = types[..1].to_vec();
    for gamma in &ctxs {
        for theta in &ctxs {
            let s2s = en.substs(gamma, theta);
            if s2s.is_empty() {
                continue;
            }
            let s2_up = shift_all(lang, &one, &s2s)?;
            for delta in &ctxs {
                let s1s = en.substs(theta, delta);
                let s1_up = shift_all(lang, &one, &s1s)?;
                for (s1, s1_up) in s1s.iter().zip(&s1_up) {
                    for (s2, s2_up) in s2s.iter().zip(&s2_up) {
                        let c = compose_sub_sub(lang, s2, s1).map_err(|e| e.to_string())?;
                        for i in 0..delta.len() {
                            let expected = sub(lang, s2, &lk(s1, i)).map_err(|e| e.to_string())?;
                            if lk(&c, i) != expected {
                                return Err(format!("compose_sub_sub({s2}, {s1}) at {i}"));
                            }
                            checks += 1;
                        }
                        let lhs = compose_sub_sub(lang, s2_up, s1_up).map_err(|e| e.to_string())?;
                        let rhs = shift_star(lang, &one, &c).map_err(|e| e.to_string())?;
                        if lhs != rhs {
                            return Err(format!("shift_star does not commute with compose_sub_sub({s2}, {s1})"));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(checks)
}
