//! Runs the renaming and substitution laws on several STLC variants.

use gensyn::langpack::stlc::{Flavour, Stlc, StlcConfig, Style};
use gensyn::laws::check_laws;
use gensyn::termgen::GenConfig;

fn main() {
    let cfg = GenConfig {
        seed: 7,
        count: 200,
        ..Default::default()
    };
    let base = |s| StlcConfig::new(Flavour::Desugared, s);
    for c in [
        base(Style::Curry),
        base(Style::Church),
        base(Style::Curry).with_bools(),
        base(Style::Curry).with_letrec(),
        StlcConfig::new(Flavour::Sugared, Style::Church).with_bools(),
    ] {
        let report = check_laws(&Stlc::new(c).lang, &cfg).unwrap();
        println!("{}", c.id());
        for o in &report.outcomes {
            println!("  {o}  [{} outputs typechecked]", o.outputs_validated);
        }
    }
}
