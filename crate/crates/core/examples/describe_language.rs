//! Builds a small language description by hand, validates it, and prints
//! it as JSON. Then shows the diagnostics for a broken one.

use gensyn::descriptions::{
    print_description, validate_description, Binder, Desc, LanguageDescription, Shape, TyPattern, TySig,
};

fn arrow(a: TyPattern, b: TyPattern) -> TyPattern {
    TyPattern::con("->", vec![a, b])
}

fn main() {
    use TyPattern::{MetaB, MetaR, MetaS};
    let sig = TySig::new([("base", 0), ("->", 2)]);
    let root = Desc::sg_tag(
        "tag",
        [
            ("app", Desc::node(0, Shape::plain(0, 2), vec![(MetaS(0), arrow(MetaS(1), MetaR))])),
            (
                "lam",
                Desc::node(1, Shape::new(vec![vec![Binder::Bound]]), vec![(MetaR, arrow(MetaB(0), MetaS(0)))]),
            ),
        ],
    );
    let lang = LanguageDescription::new("tiny", sig.clone(), root);
    assert!(validate_description(&lang).is_empty());
    for p in lang.productions() {
        println!("production: {}", p.name().map(|n| n.to_string()).unwrap_or_default());
    }
    print!("{}", print_description(&lang));

    // Two rows for a node that binds one variable, but the second row is empty.
    let broken = LanguageDescription::new(
        "broken",
        sig,
        Desc::sg_tag(
            "tag",
            [(
                "c",
                Desc::node(1, Shape::new(vec![vec![Binder::Bound], vec![]]), vec![(MetaS(3), MetaR)]),
            )],
        ),
    );
    for d in validate_description(&broken) {
        println!("{d}");
    }
}
