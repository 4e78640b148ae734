//! Small-step call-by-value evaluation with the rules used at each step.

use gensyn::langpack::stlc::{eval, EvalError, Flavour, Stlc, StlcConfig, Style};
use gensyn::terms::{parse_expr, parse_ty};
use gensyn::typecheck::check;
use gensyn::Ctx;

fn main() {
    let stlc = Stlc::new(StlcConfig::new(Flavour::Desugared, Style::Curry).with_bools());
    let lang = &stlc.lang;
    let not = "(lam (if (var 0) false true))";
    let src = format!("(app {not} (app (lam (app {not} (var 0))) (if false false true)))");
    let e = check(lang, &Ctx::empty(), &parse_expr(lang, &src, 0).unwrap(), &parse_ty(&lang.tysig, "bool").unwrap()).unwrap();

    let trace = eval(lang, &e, 100).unwrap();
    println!("{e}");
    for s in &trace.steps {
        let rules: Vec<&str> = s.rules.iter().map(|r| r.name()).collect();
        println!("  --[{}]--> {}", rules.join(", "), s.term);
    }

    match eval(lang, &e, 2) {
        Err(EvalError::FuelExhausted { trace }) => println!("with fuel 2: stopped at {}", trace.result()),
        other => println!("{other:?}"),
    }
}
