use std::fmt;
use std::sync::Arc;

/// Cheaply clonable identifier used for constructor names, tags and binders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(Arc<str>);

impl Ident {
    pub fn new(s: &str) -> Self {
        Ident(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::new(s)
    }
}

impl From<String> for Ident {
    fn from(s: String) -> Self {
        Ident(Arc::from(s))
    }
}

impl std::ops::Deref for Ident {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Signature of the object-level type algebra: constructor names with arities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TySig {
    pub ctors: Vec<(Ident, usize)>,
}

impl TySig {
    pub fn new<I, S>(ctors: I) -> Self
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<Ident>,
    {
        TySig {
            ctors: ctors.into_iter().map(|(n, a)| (n.into(), a)).collect(),
        }
    }

    pub fn arity(&self, ctor: &str) -> Option<usize> {
        self.ctors
            .iter()
            .find(|(n, _)| n.as_str() == ctor)
            .map(|&(_, a)| a)
    }

    /// All ground types of depth at most `depth` (atoms have depth 1), in a
    /// fixed order: by depth, then by constructor declaration order.
    pub fn ground_types(&self, depth: usize) -> Vec<Ty> {
        let mut by_depth: Vec<Vec<Ty>> = Vec::new();
        let mut all: Vec<Ty> = Vec::new();
        for d in 1..=depth {
            let mut layer = Vec::new();
            for (ctor, arity) in &self.ctors {
                if *arity == 0 {
                    if d == 1 {
                        layer.push(Ty::atom(ctor.clone()));
                    }
                    continue;
                }
                if d == 1 {
                    continue;
                }
                // Argument tuples drawn from depth < d with at least one at exactly d - 1.
                let smaller: Vec<&Ty> = all.iter().collect();
                let exact: &[Ty] = &by_depth[d - 2];
                let mut tuples: Vec<Vec<Ty>> = vec![Vec::new()];
                for _ in 0..*arity {
                    let mut next = Vec::new();
                    for t in &tuples {
                        for a in &smaller {
                            let mut t2 = t.clone();
                            t2.push((*a).clone());
                            next.push(t2);
                        }
                    }
                    tuples = next;
                }
                for args in tuples {
                    if args.iter().any(|a| exact.contains(a)) {
                        layer.push(Ty::new(ctor.clone(), args));
                    }
                }
            }
            all.extend(layer.iter().cloned());
            by_depth.push(layer);
        }
        all
    }

    /// Checks a type against the signature, returning the first offending
    /// constructor on failure.
    pub fn check(&self, ty: &Ty) -> Result<(), TyError> {
        match self.arity(&ty.ctor) {
            None => Err(TyError::UnknownCtor(ty.ctor.clone())),
            Some(a) if a != ty.args.len() => Err(TyError::Arity {
                ctor: ty.ctor.clone(),
                expected: a,
                found: ty.args.len(),
            }),
            Some(_) => ty.args.iter().try_for_each(|a| self.check(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TyError {
    #[error("unknown type constructor `{0}`")]
    UnknownCtor(Ident),
    #[error("type constructor `{ctor}` expects {expected} arguments, found {found}")]
    Arity {
        ctor: Ident,
        expected: usize,
        found: usize,
    },
}

/// A ground object type: a constructor applied to argument types.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ty {
    pub ctor: Ident,
    pub args: Vec<Ty>,
}

impl Ty {
    pub fn new(ctor: impl Into<Ident>, args: Vec<Ty>) -> Self {
        Ty {
            ctor: ctor.into(),
            args,
        }
    }

    pub fn atom(ctor: impl Into<Ident>) -> Self {
        Ty::new(ctor, Vec::new())
    }

    /// Atoms have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(Ty::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            return write!(f, "{}", self.ctor);
        }
        write!(f, "({}", self.ctor)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
