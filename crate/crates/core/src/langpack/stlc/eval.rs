//! Call-by-value small-step reduction of closed terms.

use std::fmt;

use crate::descriptions::LanguageDescription;
use crate::scope::ScopeError;
use crate::subst::sub1;
use crate::terms::{Ctx, Tm, TmNode};
use crate::typecheck::{validate_typed, TypeError};

use super::{APP, FALSE, IF, LAM, TRUE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    AppLam,
    AppArg,
    AppFun,
    IfTrue,
    IfFalse,
    IfCond,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AppLam => "app-lam",
            Rule::AppArg => "app-arg",
            Rule::AppFun => "app-fun",
            Rule::IfTrue => "if-true",
            Rule::IfFalse => "if-false",
            Rule::IfCond => "if-cond",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn is_value(e: &TmNode) -> bool {
    matches!(e.tag(), Some(LAM | TRUE | FALSE))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("fuel exhausted after {} steps", .trace.steps.len())]
    FuelExhausted { trace: StepTrace },
    #[error("stuck at {term}")]
    Stuck { term: Tm },
    #[error("only closed terms reduce; context is [{0}]")]
    OpenTerm(Ctx),
    #[error("step {step} produced an ill-typed term: {}", .errors.first().map(|e| e.to_string()).unwrap_or_default())]
    Preservation { step: usize, errors: Vec<TypeError> },
    #[error("{0}")]
    Scope(#[from] ScopeError),
}

/// One reduction: the rules used from the root down to the redex, and the
/// resulting term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rules: Vec<Rule>,
    pub term: Tm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub start: Tm,
    pub steps: Vec<Step>,
}

impl StepTrace {
    pub fn result(&self) -> &Tm {
        self.steps.last().map_or(&self.start, |s| &s.term)
    }

    /// Every rule used, step by step, outermost first within a step.
    pub fn rule_names(&self) -> Vec<&'static str> {
        self.steps
            .iter()
            .flat_map(|s| s.rules.iter().map(|r| r.name()))
            .collect()
    }
}

/// One step of `e`, or `None` when `e` is a value or stuck.
pub fn step(lang: &LanguageDescription, e: &Tm) -> Result<Option<(Vec<Rule>, Tm)>, EvalError> {
    if !e.ctx.is_empty() {
        return Err(EvalError::OpenTerm(e.ctx.clone()));
    }
    let mut rules = Vec::new();
    Ok(step_node(lang, &e.root, &mut rules)?.map(|root| (rules, Tm::new(Ctx::empty(), root))))
}

fn closed(e: &TmNode) -> Tm {
    Tm::new(Ctx::empty(), e.clone())
}

fn with_child(e: &TmNode, j: usize, c: TmNode) -> TmNode {
    let mut e = e.clone();
    if let TmNode::Con { children, .. } = &mut e {
        children[j] = c;
    }
    e
}

fn step_node(lang: &LanguageDescription, e: &TmNode, rules: &mut Vec<Rule>) -> Result<Option<TmNode>, ScopeError> {
    let TmNode::Con { children, .. } = e else {
        return Ok(None);
    };
    match e.tag() {
        Some(APP) => {
            let (f, a) = (&children[0], &children[1]);
            if f.tag() == Some(LAM) && is_value(a) {
                let TmNode::Con { ts0, children: body, .. } = f else { unreachable!() };
                rules.push(Rule::AppLam);
                let body = Tm::new(Ctx::empty().snoc(ts0[0].clone()), body[0].clone());
                return Ok(Some(sub1(lang, &closed(a), &body)?.root));
            }
            if is_value(f) {
                rules.push(Rule::AppArg);
                return Ok(step_node(lang, a, rules)?.map(|a2| with_child(e, 1, a2)));
            }
            rules.push(Rule::AppFun);
            Ok(step_node(lang, f, rules)?.map(|f2| with_child(e, 0, f2)))
        }
        Some(IF) => match children[0].tag() {
            Some(TRUE) => {
                rules.push(Rule::IfTrue);
                Ok(Some(children[1].clone()))
            }
            Some(FALSE) => {
                rules.push(Rule::IfFalse);
                Ok(Some(children[2].clone()))
            }
            _ => {
                rules.push(Rule::IfCond);
                Ok(step_node(lang, &children[0], rules)?.map(|c| with_child(e, 0, c)))
            }
        },
        _ => Ok(None),
    }
}

/// Steps `e` until it is a value, checking that every intermediate term is
/// well typed at the type of `e`.
pub fn eval(lang: &LanguageDescription, e: &Tm, fuel: usize) -> Result<StepTrace, EvalError> {
    let mut trace = StepTrace {
        start: e.clone(),
        steps: Vec::new(),
    };
    loop {
        let cur = trace.result();
        if is_value(&cur.root) {
            return Ok(trace);
        }
        if trace.steps.len() >= fuel {
            return Err(EvalError::FuelExhausted { trace });
        }
        let Some((rules, next)) = step(lang, cur)? else {
            return Err(EvalError::Stuck { term: cur.clone() });
        };
        let mut errors = validate_typed(lang, &next);
        if next.ty() != e.ty() {
            errors.push(TypeError::new(
                Default::default(),
                crate::typecheck::TypeErrorKind::Mismatch {
                    expected: e.ty().into(),
                    got: next.ty().into(),
                },
            ));
        }
        if !errors.is_empty() {
            return Err(EvalError::Preservation {
                step: trace.steps.len() + 1,
                errors,
            });
        }
        trace.steps.push(Step { rules, term: next });
    }
}
