//! A language loaded from JSON: unit, pairs with a pattern-matching
//! `split` that binds two variables, and annotated functions.

use gensyn::descriptions::{parse_description, validate_description};
use gensyn::laws::check_laws;
use gensyn::termgen::{GenConfig, Generator};
use gensyn::terms::{parse_form, parse_ty, resolve};
use gensyn::typecheck::infer;
use gensyn::Ctx;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/languages/products.json");
    let lang = parse_description(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(validate_description(&lang).is_empty());

    let swap = parse_form(&lang, "(lam {(* unit (-> unit unit))} [p] (split [a f] (var p) (pair (var f) (var a))))").unwrap();
    let e = resolve(&lang, &[], &swap).unwrap();
    let tm = infer(&lang, &Ctx::empty(), &e).unwrap();
    println!("{swap}\n  : {}", tm.ty());

    let mut g = Generator::new(
        &lang,
        GenConfig {
            seed: 3,
            max_depth: 4,
            ..Default::default()
        },
    );
    let pair = parse_ty(&lang.tysig, "(* unit unit)").unwrap();
    for _ in 0..3 {
        println!("generated {}", g.gen_tm(&Ctx::empty(), &pair).unwrap());
    }

    let report = check_laws(&lang, &GenConfig { count: 100, ..Default::default() }).unwrap();
    print!("{report}");
}
