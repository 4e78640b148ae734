//! Checking and inference in both lambda styles, the errors the checker
//! reports, and a recursive binding whose type comes from its uses.

use gensyn::langpack::stlc::{Flavour, Stlc, StlcConfig, Style};
use gensyn::terms::{parse_expr, parse_ty};
use gensyn::typecheck::{check, infer, validate_typed};
use gensyn::Ctx;

fn main() {
    let curry = Stlc::new(StlcConfig::new(Flavour::Desugared, Style::Curry).with_bools());
    let church = Stlc::new(StlcConfig::new(Flavour::Desugared, Style::Church).with_bools());
    let empty = Ctx::empty();

    let id = parse_expr(&curry.lang, "(lam (var 0))", 0).unwrap();
    let t = parse_ty(&curry.lang.tysig, "(-> bool bool)").unwrap();
    println!("curry check  {id} : {t}  =>  {}", check(&curry.lang, &empty, &id, &t).unwrap());
    println!("curry infer  {id}  =>  {}", infer(&curry.lang, &empty, &id).unwrap_err());

    let id = parse_expr(&church.lang, "(lam {bool} (var 0))", 0).unwrap();
    let tm = infer(&church.lang, &empty, &id).unwrap();
    println!("church infer {id}  =>  {tm} : {}", tm.ty());
    assert!(validate_typed(&church.lang, &tm).is_empty());

    // Each error names the offending subterm by its child path.
    let b = Ctx::empty().snoc(parse_ty(&curry.lang.tysig, "bool").unwrap());
    for src in ["(if (var 0) (lam (var 0)) false)", "(app (var 0) false)", "(app (lam (var 1)) (var 1))"] {
        let e = parse_expr(&curry.lang, src, 1).unwrap();
        match infer(&curry.lang, &b, &e) {
            Ok(tm) => println!("{src}  =>  {tm}"),
            Err(err) => println!("{src}  =>  {err}"),
        }
    }

    // The recursive variable has no annotation; its uses fix its type.
    let rec = Stlc::new(StlcConfig::new(Flavour::Sugared, Style::Curry).with_bools().with_letrec());
    let e = parse_expr(&rec.lang, "(letrec (lam (app (var 1) (var 0))) (app (var 0) true))", 0).unwrap();
    let b = parse_ty(&rec.lang.tysig, "bool").unwrap();
    println!("letrec       {}", check(&rec.lang, &empty, &e, &b).unwrap());
}
