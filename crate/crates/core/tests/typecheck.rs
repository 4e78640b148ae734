mod common;

use common::oracle::{arrow, base, boolean, church_infer, from_expr, from_tm, small_types};
use common::{church_bool, ctx, curry_bool, expr, products, sample, stlc, tm, ty};
use gensyn::descriptions::{LanguageDescription, TyPattern};
use gensyn::langpack::stlc::{Flavour, Style};
use gensyn::terms::{untype, TermPath};
use gensyn::typecheck::{
    check, infer, unify, validate_typed, Meta, Pat, TypeErrorKind, UnifyError, UnifyState,
};
use gensyn::{Ctx, Expr, Ty, TmNode};
use proptest::prelude::*;

fn parrow(a: TyPattern, b: TyPattern) -> TyPattern {
    TyPattern::con("->", vec![a, b])
}

fn pbase() -> TyPattern {
    TyPattern::from(&base())
}

#[test]
fn unify_solves_through_a_bound_meta() {
    let st = unify(&TyPattern::MetaR, &TyPattern::from(&arrow(base(), base())), UnifyState::new()).unwrap();
    let st = unify(&TyPattern::MetaR, &parrow(TyPattern::MetaB(0), TyPattern::MetaS(0)), st).unwrap();
    assert_eq!(st.ground_meta(Meta::B(0)), Some(base()));
    assert_eq!(st.ground_meta(Meta::S(0)), Some(base()));
}

#[test]
fn unify_occurs_check() {
    let m = TyPattern::MetaS(0);
    let err = unify(&m, &parrow(m.clone(), pbase()), UnifyState::new()).unwrap_err();
    assert!(matches!(err, UnifyError::Occurs { meta: Meta::S(0), .. }));
}

#[test]
fn unify_constructor_clash() {
    let err = unify(&TyPattern::from(&boolean()), &pbase(), UnifyState::new()).unwrap_err();
    assert!(matches!(err, UnifyError::Mismatch { .. }));
}

#[test]
fn unify_bindings_are_idempotent() {
    let st = unify(&TyPattern::MetaS(0), &parrow(TyPattern::MetaS(1), TyPattern::MetaR), UnifyState::new()).unwrap();
    let st = unify(&TyPattern::MetaS(1), &TyPattern::MetaR, st).unwrap();
    let st = unify(&TyPattern::MetaR, &pbase(), st).unwrap();
    let solved = st.solved();
    for p in solved.values() {
        for m in p.metas() {
            assert!(!solved.contains_key(&m), "{m} still bound inside {p}");
        }
    }
    assert_eq!(st.ground_meta(Meta::S(0)), Some(arrow(base(), base())));
}

/// Ground types of depth at most three over `base` and `->`.
fn ground3() -> Vec<Ty> {
    let d1 = [base()];
    let d2: Vec<Ty> = d1.iter().chain([arrow(base(), base())].iter()).cloned().collect();
    let mut out = d2.clone();
    for a in &d2 {
        for b in &d2 {
            let t = arrow(a.clone(), b.clone());
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

const METAS: [Meta; 3] = [Meta::B(0), Meta::S(0), Meta::R];

fn patterns() -> Vec<TyPattern> {
    let atoms = vec![pbase(), TyPattern::MetaB(0), TyPattern::MetaS(0), TyPattern::MetaR];
    let mut out = atoms.clone();
    for a in &atoms {
        for b in &atoms {
            out.push(parrow(a.clone(), b.clone()));
        }
    }
    out
}

fn apply(theta: &[Ty; 3], p: &Pat) -> Ty {
    match p {
        Pat::Con(c, args) => Ty::new(c.clone(), args.iter().map(|a| apply(theta, a)).collect()),
        Pat::Meta(m) => theta[METAS.iter().position(|n| n == m).unwrap()].clone(),
    }
}

#[test]
fn unify_agrees_with_brute_force() {
    let grounds = ground3();
    let mut assignments = Vec::new();
    for a in &grounds {
        for b in &grounds {
            for c in &grounds {
                assignments.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let ps = patterns();
    for p1 in &ps {
        for p2 in &ps {
            let (q1, q2) = (Pat::from(p1), Pat::from(p2));
            let solutions: Vec<&[Ty; 3]> = assignments.iter().filter(|th| apply(th, &q1) == apply(th, &q2)).collect();
            match unify(p1, p2, UnifyState::new()) {
                Err(_) => assert!(solutions.is_empty(), "{p1} = {p2} has solution {:?}", solutions[0]),
                Ok(st) => {
                    assert_eq!(st.resolve(&q1), st.resolve(&q2), "{p1} = {p2}");
                    // Most general: every ground solution factors through it.
                    for th in &solutions {
                        for (i, m) in METAS.iter().enumerate() {
                            assert_eq!(apply(th, &st.resolve(&Pat::Meta(m.clone()))), th[i], "{p1} = {p2}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn check_examples() {
    let lang = curry_bool().lang;
    let id = check(&lang, &Ctx::empty(), &expr(&lang, "(lam (var 0))", 0), &ty("(-> base base)")).unwrap();
    let TmNode::Con { ts0, children, .. } = &id.root else { panic!() };
    assert_eq!(ts0, &vec![base()]);
    assert_eq!(children[0], TmNode::Var { ty: base(), index: 0 });

    let err = check(&lang, &Ctx::empty(), &expr(&lang, "(lam (var 0))", 0), &boolean()).unwrap_err();
    assert_eq!((err.path.clone(), err.kind.name()), (TermPath::default(), "Mismatch"));

    let c = ctx(&["base"]);
    let v = infer(&lang, &c, &expr(&lang, "(var 0)", 1)).unwrap();
    assert_eq!((v.root.clone(), v.ty().clone()), (TmNode::Var { ty: base(), index: 0 }, base()));
}

#[test]
fn infer_examples() {
    let curry = curry_bool().lang;
    let err = infer(&curry, &Ctx::empty(), &expr(&curry, "(lam (var 0))", 0)).unwrap_err();
    assert_eq!(err.kind, TypeErrorKind::AnnotationRequired(Meta::B(0)));
    assert_eq!(err.to_string(), "$: AnnotationRequired: cannot determine B0");

    let church = church_bool().lang;
    let id = infer(&church, &Ctx::empty(), &expr(&church, "(lam {base} (var 0))", 0)).unwrap();
    assert_eq!(id.ty(), &arrow(base(), base()));

    let t = infer(&curry, &Ctx::empty(), &expr(&curry, "(app (lam (var 0)) true)", 0)).unwrap();
    assert_eq!(t.ty(), &boolean());
}

#[test]
fn unsatisfied_constraints_name_the_equation() {
    let curry = curry_bool().lang;
    let err = infer(&curry, &Ctx::empty(), &expr(&curry, "(app true true)", 0)).unwrap_err();
    assert_eq!(err.to_string(), "$: ConstraintUnsatisfied: equation 0 (S0 = (-> S1 R)) does not hold");

    // Branch types disagree: the branch equations of `if` fail.
    let church = church_bool().lang;
    let e = expr(&church, "(if true (lam {base} (var 0)) false)", 0);
    let err = infer(&church, &Ctx::empty(), &e).unwrap_err();
    let TypeErrorKind::ConstraintUnsatisfied { index, .. } = err.kind else {
        panic!("{err}")
    };
    assert_eq!((err.path, index), (TermPath::default(), 2));
    let err = check(&church, &Ctx::empty(), &e, &boolean()).unwrap_err();
    assert_eq!(err.kind.name(), "ConstraintUnsatisfied");
}

#[test]
fn unbound_and_context_errors() {
    let lang = curry_bool().lang;
    let e = Expr {
        scope: 1,
        root: gensyn::terms::ExprNode::Var(3),
    };
    assert_eq!(infer(&lang, &ctx(&["base"]), &e).unwrap_err().kind, TypeErrorKind::UnboundVar(3));
    let e = expr(&lang, "(var 0)", 1);
    assert_eq!(infer(&lang, &Ctx::empty(), &e).unwrap_err().kind.name(), "ContextMismatch");
}

#[test]
fn validator_catches_tampering() {
    let lang = curry_bool().lang;
    let good = tm(&lang, &Ctx::empty(), "(lam (var 0))", "(-> base base)");
    assert!(validate_typed(&lang, &good).is_empty());

    let mut bad = good.clone();
    if let TmNode::Con { ts0, .. } = &mut bad.root {
        ts0[0] = boolean();
    }
    let errs = validate_typed(&lang, &bad);
    assert!(errs.iter().any(|e| e.kind.name() == "ConstraintUnsatisfied"), "{errs:?}");

    let mut out_of_range = good;
    if let TmNode::Con { children, .. } = &mut out_of_range.root {
        children[0] = TmNode::Var { ty: base(), index: 1 };
    }
    let errs = validate_typed(&lang, &out_of_range);
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].kind, TypeErrorKind::UnboundVar(1));
    assert_eq!(errs[0].path.to_string(), "$.0");
}

/// Source text of every term with exactly `n` nodes and `scope` variables.
fn sources(scope: usize, n: usize, church: bool) -> Vec<String> {
    let mut out = Vec::new();
    if n == 1 {
        out.extend((0..scope).map(|i| format!("(var {i})")));
        out.extend(["true".to_string(), "false".to_string()]);
        return out;
    }
    for body in sources(scope + 1, n - 1, church) {
        if church {
            out.push(format!("(lam {{base}} {body})"));
            out.push(format!("(lam {{bool}} {body})"));
        } else {
            out.push(format!("(lam {body})"));
        }
    }
    for n1 in 1..n - 1 {
        for f in sources(scope, n1, church) {
            for x in sources(scope, n - 1 - n1, church) {
                out.push(format!("(app {f} {x})"));
            }
        }
    }
    for n1 in 1..n {
        for n2 in 1..n - n1 {
            let Some(n3) = (n - 1).checked_sub(n1 + n2).filter(|k| *k > 0) else {
                continue;
            };
            for c in sources(scope, n1, church) {
                for a in sources(scope, n2, church) {
                    for b in sources(scope, n3, church) {
                        out.push(format!("(if {c} {a} {b})"));
                    }
                }
            }
        }
    }
    out
}

fn contexts() -> Vec<Ctx> {
    vec![Ctx::empty(), ctx(&["bool"]), ctx(&["(-> base bool)"])]
}

#[test]
fn church_inference_is_complete_and_sound() {
    let lang = church_bool().lang;
    let mut typed = 0;
    for g in contexts() {
        for n in 1..=5 {
            for src in sources(g.len(), n, true) {
                let e = expr(&lang, &src, g.len());
                let expected = church_infer(&mut g.as_slice().to_vec(), &from_expr(&e.root));
                match (infer(&lang, &g, &e), expected) {
                    (Ok(t), Some(want)) => {
                        assert_eq!(t.ty(), &want, "{src}");
                        assert!(validate_typed(&lang, &t).is_empty(), "{src}");
                        assert_eq!(untype(&t), e, "{src}");
                        assert_eq!(check(&lang, &g, &e, &want).unwrap(), t, "{src}");
                        typed += 1;
                    }
                    (Err(_), None) => {}
                    (got, want) => panic!("{src}: infer {got:?}, oracle {want:?}"),
                }
            }
        }
    }
    assert!(typed > 900, "{typed}");
}

#[test]
fn curry_checking_is_sound() {
    let lang = curry_bool().lang;
    let mut typed = 0;
    for g in contexts() {
        for n in 1..=5 {
            for src in sources(g.len(), n, false) {
                let e = expr(&lang, &src, g.len());
                for t in small_types() {
                    let Ok(out) = check(&lang, &g, &e, &t) else { continue };
                    assert!(validate_typed(&lang, &out).is_empty(), "{src}");
                    assert_eq!(untype(&out), e, "{src}");
                    // The lambda domains chosen by the checker form a typing
                    // derivation the reference checker accepts.
                    assert_eq!(church_infer(&mut g.as_slice().to_vec(), &from_tm(&out.root)), Some(t), "{src}");
                    typed += 1;
                }
            }
        }
    }
    assert!(typed > 400, "{typed}");
}

fn annotated() -> Vec<LanguageDescription> {
    vec![church_bool().lang, stlc(Flavour::Sugared, Style::Church, true).lang, products()]
}

fn curry() -> Vec<LanguageDescription> {
    vec![
        curry_bool().lang,
        stlc(Flavour::Sugared, Style::Curry, true).lang,
        stlc(Flavour::Desugared, Style::Curry, false).lang,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Curry-style erasure forgets lambda domains that nothing else
    // determines, so only annotated languages round-trip.
    #[test]
    fn erasure_round_trips(which in 0usize..3, seed in any::<u64>()) {
        let lang = &annotated()[which];
        for e in sample(lang, seed, 5, 4) {
            prop_assert!(validate_typed(lang, &e).is_empty());
            let back = check(lang, &e.ctx, &untype(&e), e.ty());
            prop_assert_eq!(back.as_ref(), Ok(&e));
            // Deterministic: a second run gives the same answer.
            prop_assert_eq!(check(lang, &e.ctx, &untype(&e), e.ty()), back);
            if let Ok(inferred) = infer(lang, &e.ctx, &untype(&e)) {
                prop_assert!(validate_typed(lang, &inferred).is_empty());
                let again = check(lang, &e.ctx, &untype(&e), inferred.ty());
                prop_assert_eq!(again.as_ref(), Ok(&inferred));
            }
        }
    }

    #[test]
    fn curry_elaboration_is_sound(which in 0usize..3, seed in any::<u64>()) {
        let lang = &curry()[which];
        for e in sample(lang, seed, 5, 4) {
            prop_assert!(validate_typed(lang, &e).is_empty());
            let erased = untype(&e);
            for out in [check(lang, &e.ctx, &erased, e.ty()), infer(lang, &e.ctx, &erased)].into_iter().flatten() {
                prop_assert!(validate_typed(lang, &out).is_empty());
                prop_assert_eq!(&untype(&out), &erased);
                prop_assert_eq!(&out.ctx, &e.ctx);
            }
        }
    }
}
