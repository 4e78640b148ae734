#![allow(dead_code)]

pub mod category;
pub mod golden;
pub mod oracle;

use gensyn::descriptions::LanguageDescription;
use gensyn::langpack::stlc::{stlc_tysig, Flavour, Stlc, StlcConfig, Style};
use gensyn::terms::{parse_expr, parse_ty};
use gensyn::typecheck::check;
use gensyn::{Ctx, Expr, Tm, Ty};

pub fn stlc(flavour: Flavour, style: Style, bools: bool) -> Stlc {
    let cfg = StlcConfig::new(flavour, style);
    Stlc::new(if bools { cfg.with_bools() } else { cfg })
}

pub fn curry_bool() -> Stlc {
    stlc(Flavour::Desugared, Style::Curry, true)
}

pub fn church_bool() -> Stlc {
    stlc(Flavour::Desugared, Style::Church, true)
}

pub fn ty(src: &str) -> Ty {
    parse_ty(&stlc_tysig(true), src).unwrap()
}

pub fn ctx(tys: &[&str]) -> Ctx {
    Ctx::new(tys.iter().map(|t| ty(t)).collect())
}

pub fn expr(lang: &LanguageDescription, src: &str, scope: usize) -> Expr {
    parse_expr(lang, src, scope).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Parses and checks a de Bruijn term.
pub fn tm(lang: &LanguageDescription, c: &Ctx, src: &str, t: &str) -> Tm {
    let e = expr(lang, src, c.len());
    check(lang, c, &e, &ty(t)).unwrap_or_else(|err| panic!("{src}: {err}"))
}

/// `n` generated terms in random contexts.
pub fn sample(lang: &LanguageDescription, seed: u64, depth: usize, n: usize) -> Vec<Tm> {
    let mut g = gensyn::termgen::Generator::new(
        lang,
        gensyn::termgen::GenConfig {
            seed,
            max_depth: depth,
            max_ctx: 3,
            ..Default::default()
        },
    );
    (0..n).map(|_| g.gen_any().unwrap()).collect()
}

pub fn products() -> LanguageDescription {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/languages/products.json");
    gensyn::descriptions::parse_description(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const PACK_WORDS: [&str; 10] = [
    "stlc", "langpack", "lam", "app", "letrec", "curry", "church", "flavour", "sugared", "desugar",
];
const PACK_LITERALS: [&str; 7] = ["bool", "true", "false", "if", "let", "base", "->"];

fn words(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    for ident in line.split(|c: char| !c.is_ascii_alphanumeric()) {
        let mut cur = String::new();
        for (i, c) in ident.char_indices() {
            if c.is_ascii_uppercase() && i > 0 && !cur.is_empty() {
                out.push(std::mem::take(&mut cur).to_ascii_lowercase());
            }
            cur.push(c);
        }
        if !cur.is_empty() {
            out.push(cur.to_ascii_lowercase());
        }
    }
    out
}

fn string_literals(line: &str) -> Vec<&str> {
    line.split('"').skip(1).step_by(2).collect()
}

/// Every mention of a language-pack identifier in the generic modules, as
/// `file:line: token`.
pub fn pack_mentions() -> Vec<String> {
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("src");
    let mut files = vec![src.join("scope.rs"), src.join("subst.rs")];
    let mut tc: Vec<_> = std::fs::read_dir(src.join("typecheck"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    tc.sort();
    files.extend(tc);
    let mut out = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        for (n, line) in text.lines().enumerate() {
            for w in words(line) {
                if PACK_WORDS.contains(&w.as_str()) {
                    out.push(format!("{name}:{}: {w}", n + 1));
                }
            }
            for lit in string_literals(line) {
                if PACK_LITERALS.contains(&lit) {
                    out.push(format!("{name}:{}: \"{lit}\"", n + 1));
                }
            }
        }
    }
    out
}

pub fn scanned_words(line: &str) -> Vec<String> {
    words(line)
}
