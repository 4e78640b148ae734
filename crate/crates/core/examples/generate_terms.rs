//! Random well-typed terms, and exhaustive enumeration by size.

use gensyn::langpack::stlc::{Flavour, Stlc, StlcConfig, Style};
use gensyn::termgen::{enum_closed, enumerate_typed, GenConfig, Generator};
use gensyn::terms::parse_ty;
use gensyn::Ctx;

fn main() {
    let stlc = Stlc::new(StlcConfig::new(Flavour::Desugared, Style::Church).with_bools());
    let lang = &stlc.lang;
    let ty = |s: &str| parse_ty(&lang.tysig, s).unwrap();

    let mut g = Generator::new(
        lang,
        GenConfig {
            seed: 1,
            max_depth: 4,
            ..Default::default()
        },
    );
    println!("random terms:");
    for _ in 0..5 {
        let e = g.gen_any().unwrap();
        println!("  [{}] {} : {}", e.ctx, e.root, e.ty());
    }

    let ctx = Ctx::empty().snoc(ty("base"));
    let all = enumerate_typed(lang, &ctx, &ty("(-> bool base)"), 2, 2).unwrap();
    println!("{} terms of (-> bool base) in [base] within budget 2", all.len());

    // base has no closed inhabitants.
    println!("{}", enumerate_typed(lang, &Ctx::empty(), &ty("base"), 4, 2).unwrap_err());

    for n in [2, 4, 6] {
        println!("closed terms with at most {n} nodes: {}", enum_closed(lang, n).len());
    }
}
