//! Translating `let` into an applied lambda, in both styles.

use gensyn::langpack::stlc::{desugar, eval, Flavour, Stlc, StlcConfig, Style};
use gensyn::terms::{parse_expr, parse_ty};
use gensyn::typecheck::{check, validate_typed};
use gensyn::Ctx;

fn main() {
    for (style, src) in [
        (Style::Curry, "(let (if true false true) (let (lam (var 1)) (app (var 0) true)))"),
        (Style::Church, "(let (lam {bool} (var 0)) (app (var 0) false))"),
    ] {
        let sugared = Stlc::new(StlcConfig::new(Flavour::Sugared, style).with_bools());
        let core = Stlc::new(sugared.config.desugared());
        let bool_ty = parse_ty(&sugared.lang.tysig, "bool").unwrap();
        let e = check(&sugared.lang, &Ctx::empty(), &parse_expr(&sugared.lang, src, 0).unwrap(), &bool_ty).unwrap();
        let out = desugar(&sugared, &e);
        assert!(validate_typed(&core.lang, &out).is_empty());
        println!("{style:?}");
        println!("  sugared   {e}");
        println!("  desugared {out}");
        println!("  value     {}", eval(&core.lang, &out, 100).unwrap().result());
    }
}
