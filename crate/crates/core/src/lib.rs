//! Syntax-generic programming over typed languages with binders.
//!
//! A language is a [`LanguageDescription`](descriptions::LanguageDescription)
//! value. From it this crate derives named, well-scoped and well-typed term
//! representations ([`terms`]), order-preserving embeddings and substitution
//! environments ([`scope`]), type-preserving renaming and simultaneous
//! substitution ([`subst`]), a constraint-solving typechecker
//! ([`typecheck`]), term generators ([`termgen`]) and an executable suite of
//! substitution laws ([`laws`]). Nothing in those modules knows about any
//! particular language; the simply typed lambda calculus lives in
//! [`langpack::stlc`] as an ordinary client.

pub mod cli;
pub mod descriptions;
pub mod langpack;
pub mod laws;
pub mod scope;
pub mod subst;
pub mod termgen;
pub mod terms;
pub mod typecheck;

pub use descriptions::{Ident, LanguageDescription, Ty, TySig};
pub use scope::{Ope, ScopeError, Subst};
pub use terms::{Ctx, Expr, Form, Tm, TmNode};
