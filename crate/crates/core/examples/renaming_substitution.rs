//! Weakening, simultaneous substitution, and single-variable substitution,
//! including a substitution that would capture if done naively.

use gensyn::langpack::stlc::{bool_ty, Flavour, Stlc, StlcConfig, Style};
use gensyn::scope::{refl_ope, shift_star};
use gensyn::subst::{ren, sub, sub1};
use gensyn::terms::{parse_expr, parse_ty};
use gensyn::typecheck::check;
use gensyn::{Ctx, Subst, Tm};

fn main() {
    let stlc = Stlc::new(StlcConfig::new(Flavour::Desugared, Style::Curry).with_bools());
    let lang = &stlc.lang;
    let ty = |s: &str| parse_ty(&lang.tysig, s).unwrap();
    let term = |ctx: &Ctx, src: &str, t: &str| -> Tm {
        check(lang, ctx, &parse_expr(lang, src, ctx.len()).unwrap(), &ty(t)).unwrap()
    };

    // f : bool -> bool  |-  \x. f x
    let gamma = Ctx::empty().snoc(ty("(-> bool bool)"));
    let e = term(&gamma, "(lam (app (var 1) (var 0)))", "(-> bool bool)");
    println!("e            = {e}");

    // Add an unused variable on the right of the context.
    let weakened = ren(lang, &refl_ope(&gamma).drop(bool_ty()), &e).unwrap();
    println!("weakened     = {weakened}");

    // f := \y. z, where z is free in the outer context. The binder of e must
    // not capture it.
    let outer = Ctx::empty().snoc(bool_ty());
    let replacement = term(&outer, "(lam (var 1))", "(-> bool bool)");
    let sigma = Subst::empty(outer.clone()).snoc(replacement).unwrap();
    let substituted = sub(lang, &sigma, &e).unwrap();
    println!("substituted  = {substituted}");

    // Pushing a substitution under one binder.
    let under = shift_star(lang, &[bool_ty()], &sigma).unwrap();
    println!("under binder = {under}");

    // Beta-style: (x := true) in (if x false true)
    let body = term(&Ctx::empty().snoc(bool_ty()), "(if (var 0) false true)", "bool");
    let t = term(&Ctx::empty(), "true", "bool");
    println!("sub1         = {}", sub1(lang, &t, &body).unwrap());
}
