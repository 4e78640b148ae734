//! Named syntax, de Bruijn syntax, and typed terms for the same program.

use gensyn::langpack::stlc::{Flavour, Stlc, StlcConfig, Style};
use gensyn::terms::{parse_form, parse_ty, resolve, untype, validate_expr};
use gensyn::typecheck::check;
use gensyn::Ctx;

fn main() {
    let stlc = Stlc::new(StlcConfig::new(Flavour::Sugared, Style::Church).with_bools());
    let lang = &stlc.lang;

    let named = parse_form(lang, "(let [x] (var f) (lam {bool} [x] (app (var f) (var x))))").unwrap();
    println!("named:      {named}");

    // `f` is free, so it goes in the environment; the inner `x` shadows the outer one.
    let expr = resolve(lang, &["f".to_string()], &named).unwrap();
    println!("de Bruijn:  {expr}");
    validate_expr(lang, &expr).unwrap();

    let f_ty = parse_ty(&lang.tysig, "(-> bool bool)").unwrap();
    let ctx = Ctx::empty().snoc(f_ty.clone());
    let tm = check(lang, &ctx, &expr, &parse_ty(&lang.tysig, "(-> bool bool)").unwrap()).unwrap();
    println!("typed:      {tm}");
    println!("type:       {}", tm.ty());
    println!("nodes:      {}, depth {}", tm.root.node_count(), tm.root.depth());
    assert_eq!(untype(&tm), expr);

    let unbound = parse_form(lang, "(lam {bool} [x] (var y))").unwrap();
    println!("unbound:    {}", resolve(lang, &[], &unbound).unwrap_err());
}
