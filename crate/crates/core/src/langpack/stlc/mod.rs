//! Simply typed lambda calculus in two flavours (with or without `let`) and
//! two styles (unannotated or annotated lambdas), optionally extended with
//! booleans and a recursive `letrec`.

mod desugar;
mod eval;

use std::fmt;
use std::str::FromStr;

use crate::descriptions::{Binder, Desc, LanguageDescription, Shape, Ty, TyPattern, TySig};
use crate::terms::{Expr, ExprNode, SgChoice, TmNode};

pub use desugar::desugar;
pub use eval::{eval, is_value, step, EvalError, Rule, Step, StepTrace};

pub const APP: &str = "app";
pub const LAM: &str = "lam";
pub const LET: &str = "let";
pub const TRUE: &str = "true";
pub const FALSE: &str = "false";
pub const IF: &str = "if";
pub const LETREC: &str = "letrec";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavour {
    Sugared,
    Desugared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Style {
    Curry,
    Church,
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavour::Sugared => "sugared",
            Flavour::Desugared => "desugared",
        })
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Curry => "Curry",
            Style::Church => "Church",
        })
    }
}

impl FromStr for Style {
    type Err = StlcError;

    fn from_str(s: &str) -> Result<Self, StlcError> {
        match s {
            "Curry" | "curry" => Ok(Style::Curry),
            "Church" | "church" => Ok(Style::Church),
            _ => Err(StlcError::BadId(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StlcError {
    #[error("unknown language id `{0}`; expected stlc:<sugared|desugared>:<Curry|Church>[:bool][:letrec]")]
    BadId(String),
    #[error("expected {expected} binder annotations, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StlcConfig {
    pub flavour: Flavour,
    pub style: Style,
    pub bools: bool,
    pub letrec: bool,
}

impl StlcConfig {
    pub fn new(flavour: Flavour, style: Style) -> Self {
        StlcConfig {
            flavour,
            style,
            bools: false,
            letrec: false,
        }
    }

    pub fn with_bools(mut self) -> Self {
        self.bools = true;
        self
    }

    pub fn with_letrec(mut self) -> Self {
        self.letrec = true;
        self
    }

    pub fn desugared(mut self) -> Self {
        self.flavour = Flavour::Desugared;
        self
    }

    /// `stlc:<flavour>:<style>[:bool][:letrec]`
    pub fn id(&self) -> String {
        let mut s = format!("stlc:{}:{}", self.flavour, self.style);
        if self.bools {
            s.push_str(":bool");
        }
        if self.letrec {
            s.push_str(":letrec");
        }
        s
    }

    /// Parses an id, with or without a leading `builtin:`.
    pub fn parse_id(id: &str) -> Result<Self, StlcError> {
        let bad = || StlcError::BadId(id.to_string());
        let rest = id.strip_prefix("builtin:").unwrap_or(id);
        let mut parts = rest.split(':');
        if parts.next() != Some("stlc") {
            return Err(bad());
        }
        let flavour = match parts.next() {
            Some("sugared") => Flavour::Sugared,
            Some("desugared") => Flavour::Desugared,
            _ => return Err(bad()),
        };
        let style = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut cfg = StlcConfig::new(flavour, style);
        let mut last = 0;
        for p in parts {
            let rank = match p {
                "bool" if last < 1 => 1,
                "letrec" if last < 2 => 2,
                _ => return Err(bad()),
            };
            match rank {
                1 => cfg.bools = true,
                _ => cfg.letrec = true,
            }
            last = rank;
        }
        Ok(cfg)
    }
}

impl fmt::Display for StlcConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

pub fn base() -> Ty {
    Ty::atom("base")
}

pub fn bool_ty() -> Ty {
    Ty::atom("bool")
}

pub fn arrow(a: Ty, b: Ty) -> Ty {
    Ty::new("->", vec![a, b])
}

fn arrow_p(a: TyPattern, b: TyPattern) -> TyPattern {
    TyPattern::con("->", vec![a, b])
}

pub fn stlc_tysig(bools: bool) -> TySig {
    let mut ctors = vec![("base", 0), ("->", 2)];
    if bools {
        ctors.push(("bool", 0));
    }
    TySig::new(ctors)
}

pub fn stlc_description(cfg: StlcConfig) -> LanguageDescription {
    use TyPattern::{MetaB, MetaR, MetaS};
    let bound = Binder::Bound;
    let mut arms = vec![
        (APP, Desc::node(0, Shape::plain(0, 2), vec![(MetaS(0), arrow_p(MetaS(1), MetaR))])),
        (
            LAM,
            match cfg.style {
                Style::Curry => Desc::node(
                    1,
                    Shape::new(vec![vec![bound]]),
                    vec![(MetaR, arrow_p(MetaB(0), MetaS(0)))],
                ),
                Style::Church => Desc::sg_ty(
                    "t",
                    Desc::node(
                        1,
                        Shape::new(vec![vec![bound]]),
                        vec![
                            (TyPattern::payload("t"), MetaB(0)),
                            (MetaR, arrow_p(TyPattern::payload("t"), MetaS(0))),
                        ],
                    ),
                ),
            },
        ),
    ];
    if cfg.flavour == Flavour::Sugared {
        arms.push((
            LET,
            Desc::node(
                1,
                Shape::new(vec![vec![Binder::Unbound], vec![bound]]),
                vec![(MetaB(0), MetaS(0)), (MetaR, MetaS(1))],
            ),
        ));
    }
    if cfg.bools {
        let b = TyPattern::con("bool", vec![]);
        arms.push((TRUE, Desc::node(0, Shape::plain(0, 0), vec![(MetaR, b.clone())])));
        arms.push((FALSE, Desc::node(0, Shape::plain(0, 0), vec![(MetaR, b.clone())])));
        arms.push((
            IF,
            Desc::node(
                0,
                Shape::plain(0, 3),
                vec![(MetaS(0), b), (MetaS(1), MetaR), (MetaS(2), MetaR)],
            ),
        ));
    }
    if cfg.letrec {
        arms.push((
            LETREC,
            Desc::node(
                1,
                Shape::new(vec![vec![bound], vec![bound]]),
                vec![(MetaB(0), MetaS(0)), (MetaR, MetaS(1))],
            ),
        ));
    }
    LanguageDescription::new(cfg.id(), stlc_tysig(cfg.bools), Desc::sg_tag("tag", arms))
}

/// A configured STLC together with its description, plus constructors for
/// typed nodes that compute each node's type from its children.
#[derive(Clone, Debug)]
pub struct Stlc {
    pub config: StlcConfig,
    pub lang: LanguageDescription,
}

fn tag(t: &str) -> SgChoice {
    SgChoice::Tag(t.into())
}

impl Stlc {
    pub fn new(config: StlcConfig) -> Self {
        Stlc {
            config,
            lang: stlc_description(config),
        }
    }

    pub fn lam_path(&self, dom: &Ty) -> Vec<SgChoice> {
        match self.config.style {
            Style::Curry => vec![tag(LAM)],
            Style::Church => vec![tag(LAM), SgChoice::TyPayload(dom.clone())],
        }
    }

    pub fn var(&self, ty: Ty, index: usize) -> TmNode {
        TmNode::Var { ty, index }
    }

    /// Panics unless `f` has an arrow type.
    pub fn app(&self, f: TmNode, e: TmNode) -> TmNode {
        let ty = f.ty().args.get(1).expect("function type").clone();
        TmNode::Con {
            ty,
            path: vec![tag(APP)],
            ts0: vec![],
            children: vec![f, e],
        }
    }

    pub fn lam(&self, dom: Ty, body: TmNode) -> TmNode {
        TmNode::Con {
            ty: arrow(dom.clone(), body.ty().clone()),
            path: self.lam_path(&dom),
            ts0: vec![dom],
            children: vec![body],
        }
    }

    pub fn let_(&self, e0: TmNode, body: TmNode) -> TmNode {
        TmNode::Con {
            ty: body.ty().clone(),
            path: vec![tag(LET)],
            ts0: vec![e0.ty().clone()],
            children: vec![e0, body],
        }
    }

    pub fn boolean(&self, b: bool) -> TmNode {
        TmNode::Con {
            ty: bool_ty(),
            path: vec![tag(if b { TRUE } else { FALSE })],
            ts0: vec![],
            children: vec![],
        }
    }

    pub fn if_(&self, c: TmNode, thn: TmNode, els: TmNode) -> TmNode {
        TmNode::Con {
            ty: thn.ty().clone(),
            path: vec![tag(IF)],
            ts0: vec![],
            children: vec![c, thn, els],
        }
    }

    /// Wraps an open `Expr` in one lambda per variable in scope. Church style
    /// needs one annotation per variable, outermost first.
    pub fn close(&self, e: &Expr, binder_tys: &[Ty]) -> Result<Expr, StlcError> {
        if self.config.style == Style::Church && binder_tys.len() != e.scope {
            return Err(StlcError::ArityMismatch {
                expected: e.scope,
                found: binder_tys.len(),
            });
        }
        let mut root = e.root.clone();
        for v in (0..e.scope).rev() {
            let path = match self.config.style {
                Style::Curry => vec![tag(LAM)],
                Style::Church => vec![tag(LAM), SgChoice::TyPayload(binder_tys[v].clone())],
            };
            root = ExprNode::Con {
                path,
                children: vec![root],
            };
        }
        Ok(Expr { scope: 0, root })
    }
}
