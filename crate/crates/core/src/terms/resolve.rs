use crate::descriptions::{count_bound, Binder, LanguageDescription};

use super::{Expr, ExprNode, Form, PathError, TermPath};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("{path}: UnboundName: `{name}` is not in scope")]
    UnboundName { name: String, path: TermPath },
    #[error("{path}: MalformedNode: {error}")]
    BadPath { path: TermPath, error: PathError },
    #[error("{path}: MalformedNode: expected {expected} {what}, found {found}")]
    Arity {
        path: TermPath,
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

/// Replaces names by de Bruijn indices. `env` lists the ambient bindings,
/// outermost first; the rightmost (innermost) occurrence of a name wins.
pub fn resolve(lang: &LanguageDescription, env: &[String], f: &Form) -> Result<Expr, ResolveError> {
    let mut scope: Vec<&str> = env.iter().map(String::as_str).collect();
    let root = resolve_node(lang, &mut scope, f, &TermPath::default())?;
    Ok(Expr {
        scope: env.len(),
        root,
    })
}

fn resolve_node<'f>(
    lang: &LanguageDescription,
    scope: &mut Vec<&'f str>,
    f: &'f Form,
    at: &TermPath,
) -> Result<ExprNode, ResolveError> {
    match f {
        Form::Var(x) => scope
            .iter()
            .rev()
            .position(|n| *n == x)
            .map(ExprNode::Var)
            .ok_or_else(|| ResolveError::UnboundName {
                name: x.clone(),
                path: at.clone(),
            }),
        Form::Con {
            path,
            binders,
            children,
        } => {
            let node = lang.node_at(path).map_err(|error| ResolveError::BadPath {
                path: at.clone(),
                error,
            })?;
            if binders.len() != node.n {
                return Err(ResolveError::Arity {
                    path: at.clone(),
                    what: "binders",
                    expected: node.n,
                    found: binders.len(),
                });
            }
            if children.len() != node.k() {
                return Err(ResolveError::Arity {
                    path: at.clone(),
                    what: "children",
                    expected: node.k(),
                    found: children.len(),
                });
            }
            let mut out = Vec::with_capacity(children.len());
            for (i, (child, row)) in children.iter().zip(&node.shape.rows).enumerate() {
                let mark = scope.len();
                for (b, name) in row.iter().zip(binders) {
                    if *b == Binder::Bound {
                        scope.push(name);
                    }
                }
                let r = resolve_node(lang, scope, child, &at.child(i));
                scope.truncate(mark);
                out.push(r?);
            }
            Ok(ExprNode::Con {
                path: path.clone(),
                children: out,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScopeViolation {
    #[error("{path}: UnboundVar: index {index} with {scope} variables in scope")]
    OutOfScope {
        path: TermPath,
        index: usize,
        scope: usize,
    },
    #[error("{path}: MalformedNode: {error}")]
    BadPath { path: TermPath, error: PathError },
    #[error("{path}: MalformedNode: expected {expected} children, found {found}")]
    Arity {
        path: TermPath,
        expected: usize,
        found: usize,
    },
}

/// Structural validator for `Expr`: every variable is below its local scope
/// and every node matches its description.
pub fn validate_expr(lang: &LanguageDescription, e: &Expr) -> Result<(), ScopeViolation> {
    fn go(
        lang: &LanguageDescription,
        scope: usize,
        e: &ExprNode,
        at: &TermPath,
    ) -> Result<(), ScopeViolation> {
        match e {
            ExprNode::Var(i) if *i >= scope => Err(ScopeViolation::OutOfScope {
                path: at.clone(),
                index: *i,
                scope,
            }),
            ExprNode::Var(_) => Ok(()),
            ExprNode::Con { path, children } => {
                let node = lang.node_at(path).map_err(|error| ScopeViolation::BadPath {
                    path: at.clone(),
                    error,
                })?;
                if children.len() != node.k() {
                    return Err(ScopeViolation::Arity {
                        path: at.clone(),
                        expected: node.k(),
                        found: children.len(),
                    });
                }
                for (i, (c, row)) in children.iter().zip(&node.shape.rows).enumerate() {
                    go(lang, scope + count_bound(row), c, &at.child(i))?;
                }
                Ok(())
            }
        }
    }
    go(lang, e.scope, &e.root, &TermPath::default())
}
