//! First-order unification over the metavariables of a single node.

use std::collections::BTreeMap;
use std::fmt;

use crate::descriptions::{Ident, Ty, TyPattern};

/// A node-local unknown: a bound-variable type, a subterm type, the node's
/// own type, an `SgTy` payload, or a hole in a partially known expected type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Meta {
    B(usize),
    S(usize),
    R,
    P(Ident),
    Hole(usize),
}

impl fmt::Display for Meta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Meta::B(i) => write!(f, "B{i}"),
            Meta::S(j) => write!(f, "S{j}"),
            Meta::R => f.write_str("R"),
            Meta::P(n) => write!(f, "P({n})"),
            Meta::Hole(h) => write!(f, "?{h}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pat {
    Con(Ident, Vec<Pat>),
    Meta(Meta),
}

impl Pat {
    pub fn meta(m: Meta) -> Self {
        Pat::Meta(m)
    }

    pub fn to_ty(&self) -> Option<Ty> {
        match self {
            Pat::Con(c, args) => Some(Ty::new(
                c.clone(),
                args.iter().map(Pat::to_ty).collect::<Option<Vec<_>>>()?,
            )),
            Pat::Meta(_) => None,
        }
    }

    fn occurs(&self, m: &Meta) -> bool {
        match self {
            Pat::Meta(n) => n == m,
            Pat::Con(_, args) => args.iter().any(|a| a.occurs(m)),
        }
    }

    /// Metavariables in left-to-right order of first occurrence.
    pub fn metas(&self) -> Vec<Meta> {
        fn go(p: &Pat, out: &mut Vec<Meta>) {
            match p {
                Pat::Meta(m) => {
                    if !out.contains(m) {
                        out.push(m.clone())
                    }
                }
                Pat::Con(_, args) => args.iter().for_each(|a| go(a, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

impl From<&Ty> for Pat {
    fn from(t: &Ty) -> Self {
        Pat::Con(t.ctor.clone(), t.args.iter().map(Pat::from).collect())
    }
}

impl From<&TyPattern> for Pat {
    fn from(p: &TyPattern) -> Self {
        match p {
            TyPattern::Con(c, args) => Pat::Con(c.clone(), args.iter().map(Pat::from).collect()),
            TyPattern::MetaB(i) => Pat::Meta(Meta::B(*i)),
            TyPattern::MetaS(j) => Pat::Meta(Meta::S(*j)),
            TyPattern::MetaR => Pat::Meta(Meta::R),
            TyPattern::MetaP(n) => Pat::Meta(Meta::P(n.clone())),
        }
    }
}

impl fmt::Display for Pat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pat::Con(c, args) if args.is_empty() => write!(f, "{c}"),
            Pat::Con(c, args) => {
                write!(f, "({c}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Pat::Meta(Meta::Hole(h)) => write!(f, "?{h}"),
            Pat::Meta(m) => write!(f, "?{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("cannot unify {left} with {right}")]
    Mismatch { left: Pat, right: Pat },
    #[error("{meta} occurs in {pat}")]
    Occurs { meta: Meta, pat: Pat },
}

/// Triangular substitution from metavariables to patterns. No binding ever
/// mentions its own metavariable, directly or through other bindings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnifyState {
    bindings: BTreeMap<Meta, Pat>,
}

impl UnifyState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup(&self, m: &Meta) -> Option<&Pat> {
        self.bindings.get(m)
    }

    /// Follows bindings at the head of `p` only.
    fn walk<'p>(&'p self, mut p: &'p Pat) -> &'p Pat {
        while let Pat::Meta(m) = p {
            match self.bindings.get(m) {
                Some(next) => p = next,
                None => break,
            }
        }
        p
    }

    /// Applies the substitution fully.
    pub fn resolve(&self, p: &Pat) -> Pat {
        match self.walk(p) {
            Pat::Meta(m) => Pat::Meta(m.clone()),
            Pat::Con(c, args) => Pat::Con(c.clone(), args.iter().map(|a| self.resolve(a)).collect()),
        }
    }

    pub fn ground(&self, p: &Pat) -> Option<Ty> {
        self.resolve(p).to_ty()
    }

    pub fn ground_meta(&self, m: Meta) -> Option<Ty> {
        self.ground(&Pat::Meta(m))
    }

    /// The bindings with every right-hand side fully resolved.
    pub fn solved(&self) -> BTreeMap<Meta, Pat> {
        self.bindings
            .keys()
            .map(|m| (m.clone(), self.resolve(&Pat::Meta(m.clone()))))
            .collect()
    }

    pub fn unify_pats(&mut self, a: &Pat, b: &Pat) -> Result<(), UnifyError> {
        let a = self.walk(a).clone();
        let b = self.walk(b).clone();
        match (&a, &b) {
            (Pat::Meta(m), Pat::Meta(n)) if m == n => Ok(()),
            (Pat::Meta(m), other) | (other, Pat::Meta(m)) => {
                let resolved = self.resolve(other);
                if resolved.occurs(m) {
                    return Err(UnifyError::Occurs {
                        meta: m.clone(),
                        pat: resolved,
                    });
                }
                self.bindings.insert(m.clone(), other.clone());
                Ok(())
            }
            (Pat::Con(c1, a1), Pat::Con(c2, a2)) => {
                if c1 != c2 || a1.len() != a2.len() {
                    return Err(UnifyError::Mismatch {
                        left: self.resolve(&a),
                        right: self.resolve(&b),
                    });
                }
                for (x, y) in a1.iter().zip(a2) {
                    self.unify_pats(x, y)?;
                }
                Ok(())
            }
        }
    }
}

/// Extends `st` with a most general unifier of `p1` and `p2`.
pub fn unify(p1: &TyPattern, p2: &TyPattern, mut st: UnifyState) -> Result<UnifyState, UnifyError> {
    st.unify_pats(&Pat::from(p1), &Pat::from(p2))?;
    Ok(st)
}
