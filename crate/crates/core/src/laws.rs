//! The renaming and substitution laws, checked on generated terms.
//!
//! Every case also checks that each `ren`/`sub` result is well typed at the
//! context and type it should have.

use std::fmt;

use crate::descriptions::LanguageDescription;
use crate::scope::{compose_ope, compose_ope_sub, compose_sub_ope, compose_sub_sub, refl_ope, refl_sub};
use crate::subst::{ren, sub};
use crate::termgen::{GenConfig, GenError, Generator};
use crate::terms::{Ctx, Tm};
use crate::typecheck::validate_typed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    RenRefl,
    SubRefl,
    RenRen,
    SubRen,
    RenSub,
    SubSub,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::RenRefl,
        Law::SubRefl,
        Law::RenRen,
        Law::SubRen,
        Law::RenSub,
        Law::SubSub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::RenRefl => "ren-refl",
            Law::SubRefl => "sub-refl",
            Law::RenRen => "ren-ren",
            Law::SubRen => "sub-ren",
            Law::RenSub => "ren-sub",
            Law::SubSub => "sub-sub",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Law::RenRefl => "ren(refl, e) = e",
            Law::SubRefl => "sub(refl, e) = e",
            Law::RenRen => "ren(r2, ren(r1, e)) = ren(r2 . r1, e)",
            Law::SubRen => "sub(s, ren(r, e)) = sub(s . r, e)",
            Law::RenSub => "ren(r, sub(s, e)) = sub(r . s, e)",
            Law::SubSub => "sub(s2, sub(s1, e)) = sub(s2 . s1, e)",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: Law,
    pub cases: usize,
    /// Number of `ren`/`sub` results checked for well-typedness.
    pub outputs_validated: usize,
    pub counterexample: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "{}: pass ({} cases)", self.law, self.cases),
            Some(c) => write!(f, "{}: FAIL after {} cases\n  {}", self.law, self.cases, c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Runs each law on `cfg.count` generated cases, stopping a law at its
/// first counterexample.
pub fn check_laws(lang: &LanguageDescription, cfg: &GenConfig) -> Result<LawReport, GenError> {
    let mut outcomes = Vec::new();
    for (i, law) in Law::ALL.into_iter().enumerate() {
        let mut g = Generator::new(
            lang,
            GenConfig {
                seed: cfg.seed.wrapping_add(i as u64),
                ..cfg.clone()
            },
        );
        let mut outcome = LawOutcome {
            law,
            cases: 0,
            outputs_validated: 0,
            counterexample: None,
        };
        for _ in 0..cfg.count {
            let mut case = Case {
                lang,
                validated: 0,
            };
            let r = case.run(law, &mut g)?;
            outcome.cases += 1;
            outcome.outputs_validated += case.validated;
            if let Err(c) = r {
                outcome.counterexample = Some(c);
                break;
            }
        }
        outcomes.push(outcome);
    }
    Ok(LawReport { outcomes })
}

/// Largest number of extra entries a generated embedding adds.
const MAX_EXTRA: usize = 2;
/// Nesting budget for generated substitution entries.
const ENTRY_BUDGET: usize = 2;

struct Case<'l> {
    lang: &'l LanguageDescription,
    validated: usize,
}

type Verdict = Result<(), String>;

fn compose<T>(r: Result<T, crate::scope::ScopeError>) -> Result<T, String> {
    r.map_err(|err| format!("composition failed: {err}"))
}

impl Case<'_> {
    /// Checks that `out` is well typed in `ctx` at the type of `e`.
    fn typed(&mut self, what: &str, out: Result<Tm, crate::scope::ScopeError>, ctx: &Ctx, e: &Tm) -> Result<Tm, String> {
        let out = out.map_err(|err| format!("{what} failed: {err}"))?;
        self.validated += 1;
        let errors = validate_typed(self.lang, &out);
        if let Some(err) = errors.first() {
            return Err(format!("{what} = {out} is ill typed: {err}"));
        }
        if &out.ctx != ctx || out.ty() != e.ty() {
            return Err(format!(
                "{what} = {out} has context [{}] and type {}, expected [{ctx}] and {}",
                out.ctx,
                out.ty(),
                e.ty()
            ));
        }
        Ok(out)
    }

    fn equal(law: Law, e: &Tm, lhs: &Tm, rhs: &Tm, ops: String) -> Verdict {
        if lhs == rhs {
            return Ok(());
        }
        Err(format!(
            "{}: e = {e} in [{}]; {ops}; lhs = {lhs}; rhs = {rhs}",
            law.statement(),
            e.ctx
        ))
    }

    fn run(&mut self, law: Law, g: &mut Generator<'_>) -> Result<Verdict, GenError> {
        let e = g.gen_any()?;
        let delta = e.ctx.clone();
        let lang = self.lang;
        let verdict = match law {
            Law::RenRefl => (|| {
                let out = self.typed("ren(refl, e)", ren(lang, &refl_ope(&delta), &e), &delta, &e)?;
                Self::equal(law, &e, &out, &e, String::new())
            })(),
            Law::SubRefl => (|| {
                let out = self.typed("sub(refl, e)", sub(lang, &refl_sub(&delta), &e), &delta, &e)?;
                Self::equal(law, &e, &out, &e, String::new())
            })(),
            Law::RenRen => {
                let r1 = g.gen_ope(&delta, MAX_EXTRA);
                let r2 = g.gen_ope(&r1.source(), MAX_EXTRA);
                (|| {
                    let gamma = r2.source();
                    let inner = self.typed("ren(r1, e)", ren(lang, &r1, &e), &r1.source(), &e)?;
                    let lhs = self.typed("ren(r2, ren(r1, e))", ren(lang, &r2, &inner), &gamma, &e)?;
                    let r = compose(compose_ope(&r2, &r1))?;
                    let rhs = self.typed("ren(r2 . r1, e)", ren(lang, &r, &e), &gamma, &e)?;
                    Self::equal(law, &e, &lhs, &rhs, format!("r1 = {r1}; r2 = {r2}"))
                })()
            }
            Law::SubRen => {
                let r = g.gen_ope(&delta, MAX_EXTRA);
                let theta = r.source();
                let gamma = g.gen_ope(&theta, MAX_EXTRA).source();
                let s = g.gen_subst(&gamma, &theta, ENTRY_BUDGET)?;
                (|| {
                    let inner = self.typed("ren(r, e)", ren(lang, &r, &e), &theta, &e)?;
                    let lhs = self.typed("sub(s, ren(r, e))", sub(lang, &s, &inner), &gamma, &e)?;
                    let c = compose(compose_sub_ope(&s, &r))?;
                    let rhs = self.typed("sub(s . r, e)", sub(lang, &c, &e), &gamma, &e)?;
                    Self::equal(law, &e, &lhs, &rhs, format!("r = {r}; s = {s}"))
                })()
            }
            Law::RenSub => {
                let theta = g.gen_ope(&delta, MAX_EXTRA).source();
                let s = g.gen_subst(&theta, &delta, ENTRY_BUDGET)?;
                let r = g.gen_ope(&theta, MAX_EXTRA);
                (|| {
                    let gamma = r.source();
                    let inner = self.typed("sub(s, e)", sub(lang, &s, &e), &theta, &e)?;
                    let lhs = self.typed("ren(r, sub(s, e))", ren(lang, &r, &inner), &gamma, &e)?;
                    let c = compose(compose_ope_sub(lang, &r, &s))?;
                    let rhs = self.typed("sub(r . s, e)", sub(lang, &c, &e), &gamma, &e)?;
                    Self::equal(law, &e, &lhs, &rhs, format!("s = {s}; r = {r}"))
                })()
            }
            Law::SubSub => {
                let theta = g.gen_ope(&delta, MAX_EXTRA).source();
                let s1 = g.gen_subst(&theta, &delta, ENTRY_BUDGET)?;
                let gamma = g.gen_ope(&theta, MAX_EXTRA).source();
                let s2 = g.gen_subst(&gamma, &theta, ENTRY_BUDGET)?;
                (|| {
                    let inner = self.typed("sub(s1, e)", sub(lang, &s1, &e), &theta, &e)?;
                    let lhs = self.typed("sub(s2, sub(s1, e))", sub(lang, &s2, &inner), &gamma, &e)?;
                    let c = compose(compose_sub_sub(lang, &s2, &s1))?;
                    let rhs = self.typed("sub(s2 . s1, e)", sub(lang, &c, &e), &gamma, &e)?;
                    Self::equal(law, &e, &lhs, &rhs, format!("s1 = {s1}; s2 = {s2}"))
                })()
            }
        };
        Ok(verdict)
    }
}
