//! S-expression syntax for types and terms.
//!
//! ```text
//! ty    ::= ctor | (ctor ty*)
//! form  ::= (var name) | tag | (choice+ [name*]? form*)
//! expr  ::= (var index) | tag | (choice+ expr*)
//! choice::= tag | {ty}
//! ```
//!
//! Parsing is directed by the description: choices are consumed until the
//! path reaches a node, the rest of the list is the binder slot and children.
//! A bare tag stands for a constructor with no payload, binders or children.

use crate::descriptions::{Desc, LanguageDescription, Ty, TySig, RESERVED_TAG};

use super::{Expr, ExprNode, Form, SgChoice};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Delim {
    Paren,
    Bracket,
    Brace,
}

#[derive(Clone, Debug)]
enum Sx {
    Atom(String, usize),
    Group(Delim, Vec<Sx>, usize),
}

impl Sx {
    fn pos(&self) -> usize {
        match self {
            Sx::Atom(_, p) | Sx::Group(_, _, p) => *p,
        }
    }
}

struct Reader<'a> {
    src: &'a str,
}

impl<'a> Reader<'a> {
    fn error(&self, pos: usize, msg: impl Into<String>) -> SyntaxError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError {
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Reads exactly one s-expression spanning the whole input.
    fn read_one(&self) -> Result<Sx, SyntaxError> {
        let mut pos = 0;
        let sx = self.read(&mut pos)?;
        let sx = sx.ok_or_else(|| self.error(pos, "unexpected end of input"))?;
        self.skip_ws(&mut pos);
        if pos < self.src.len() {
            return Err(self.error(pos, "trailing input"));
        }
        Ok(sx)
    }

    fn skip_ws(&self, pos: &mut usize) {
        let bytes = self.src.as_bytes();
        while *pos < bytes.len() {
            match bytes[*pos] {
                b';' => {
                    while *pos < bytes.len() && bytes[*pos] != b'\n' {
                        *pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => *pos += 1,
                _ => break,
            }
        }
    }

    fn read(&self, pos: &mut usize) -> Result<Option<Sx>, SyntaxError> {
        self.skip_ws(pos);
        let bytes = self.src.as_bytes();
        if *pos >= bytes.len() {
            return Ok(None);
        }
        let start = *pos;
        let (delim, close) = match bytes[start] {
            b'(' => (Delim::Paren, b')'),
            b'[' => (Delim::Bracket, b']'),
            b'{' => (Delim::Brace, b'}'),
            b')' | b']' | b'}' => return Err(self.error(start, "unbalanced closing delimiter")),
            _ => {
                while *pos < bytes.len() && !is_special(bytes[*pos]) {
                    *pos += 1;
                }
                return Ok(Some(Sx::Atom(self.src[start..*pos].to_string(), start)));
            }
        };
        *pos += 1;
        let mut items = Vec::new();
        loop {
            self.skip_ws(pos);
            match bytes.get(*pos) {
                None => return Err(self.error(start, "unclosed delimiter")),
                Some(&c) if c == close => {
                    *pos += 1;
                    return Ok(Some(Sx::Group(delim, items, start)));
                }
                Some(b')' | b']' | b'}') => return Err(self.error(*pos, "mismatched closing delimiter")),
                Some(_) => items.push(self.read(pos)?.expect("input remains")),
            }
        }
    }
}

fn is_special(c: u8) -> bool {
    c.is_ascii_whitespace() || matches!(c, b'(' | b')' | b'[' | b']' | b'{' | b'}' | b';')
}

pub fn parse_ty(sig: &TySig, src: &str) -> Result<Ty, SyntaxError> {
    let r = Reader { src };
    let sx = r.read_one()?;
    to_ty(&r, sig, &sx)
}

fn to_ty(r: &Reader<'_>, sig: &TySig, sx: &Sx) -> Result<Ty, SyntaxError> {
    let (ctor, args, pos) = match sx {
        Sx::Atom(a, p) => (a.as_str(), &[][..], *p),
        Sx::Group(Delim::Paren, items, p) => match items.split_first() {
            Some((Sx::Atom(a, _), rest)) => (a.as_str(), rest, *p),
            _ => return Err(r.error(*p, "a type is `ctor` or `(ctor arg...)`")),
        },
        Sx::Group(_, _, p) => return Err(r.error(*p, "a type is `ctor` or `(ctor arg...)`")),
    };
    let args = args.iter().map(|a| to_ty(r, sig, a)).collect::<Result<Vec<_>, _>>()?;
    let ty = Ty::new(ctor, args);
    sig.check(&ty).map_err(|e| r.error(pos, e.to_string()))?;
    Ok(ty)
}

pub fn parse_form(lang: &LanguageDescription, src: &str) -> Result<Form, SyntaxError> {
    let r = Reader { src };
    let sx = r.read_one()?;
    TermReader { r: &r, lang }.form(&sx)
}

/// Parses an `Expr` with `scope` ambient variables. Scope is not checked
/// here; see [`validate_expr`](super::validate_expr).
pub fn parse_expr(lang: &LanguageDescription, src: &str, scope: usize) -> Result<Expr, SyntaxError> {
    let r = Reader { src };
    let sx = r.read_one()?;
    let root = TermReader { r: &r, lang }.expr(&sx)?;
    Ok(Expr { scope, root })
}

struct TermReader<'a> {
    r: &'a Reader<'a>,
    lang: &'a LanguageDescription,
}

struct Head<'s> {
    path: Vec<SgChoice>,
    n: usize,
    k: usize,
    rest: &'s [Sx],
}

impl TermReader<'_> {
    /// Splits a constructor list into its path and the remaining items.
    fn head<'s>(&self, items: &'s [Sx], pos: usize) -> Result<Head<'s>, SyntaxError> {
        let mut d = &self.lang.root;
        let mut path = Vec::new();
        let mut i = 0;
        loop {
            match d {
                Desc::Node(node) => {
                    return Ok(Head {
                        path,
                        n: node.n,
                        k: node.k(),
                        rest: &items[i..],
                    })
                }
                Desc::SgTag { label, arms } => match items.get(i) {
                    Some(Sx::Atom(tag, p)) => {
                        d = arms
                            .iter()
                            .find(|(t, _)| t.as_str() == tag)
                            .map(|(_, a)| a)
                            .ok_or_else(|| self.r.error(*p, format!("unknown tag `{tag}` for `{label}`")))?;
                        path.push(SgChoice::Tag(tag.as_str().into()));
                    }
                    Some(other) => return Err(self.r.error(other.pos(), format!("expected a tag for `{label}`"))),
                    None => return Err(self.r.error(pos, format!("missing tag for `{label}`"))),
                },
                Desc::SgTy { binder, rest } => match items.get(i) {
                    Some(Sx::Group(Delim::Brace, inner, p)) => match inner.as_slice() {
                        [t] => {
                            path.push(SgChoice::TyPayload(to_ty(self.r, &self.lang.tysig, t)?));
                            d = rest;
                        }
                        _ => return Err(self.r.error(*p, "a payload is `{ty}`")),
                    },
                    Some(other) => {
                        return Err(self.r.error(other.pos(), format!("expected a `{{ty}}` payload for `{binder}`")))
                    }
                    None => return Err(self.r.error(pos, format!("missing payload for `{binder}`"))),
                },
            }
            i += 1;
        }
    }

    fn list<'s>(&self, sx: &'s Sx) -> Result<(&'s [Sx], usize), SyntaxError> {
        match sx {
            Sx::Group(Delim::Paren, items, p) => Ok((items.as_slice(), *p)),
            Sx::Atom(_, p) => Ok((std::slice::from_ref(sx), *p)),
            Sx::Group(_, _, p) => Err(self.r.error(*p, "expected a term")),
        }
    }

    fn var_atom<'s>(&self, items: &'s [Sx]) -> Option<Result<(&'s str, usize), SyntaxError>> {
        match items {
            [Sx::Atom(v, _), Sx::Atom(x, p)] if v == RESERVED_TAG => Some(Ok((x.as_str(), *p))),
            [Sx::Atom(v, p), ..] if v == RESERVED_TAG => Some(Err(self.r.error(*p, "expected `(var x)`"))),
            _ => None,
        }
    }

    fn children_count(&self, found: usize, k: usize, pos: usize) -> Result<(), SyntaxError> {
        if found != k {
            return Err(self.r.error(pos, format!("expected {k} children, found {found}")));
        }
        Ok(())
    }

    fn form(&self, sx: &Sx) -> Result<Form, SyntaxError> {
        let (items, pos) = self.list(sx)?;
        if let Some(v) = self.var_atom(items) {
            let (x, p) = v?;
            if x.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(self.r.error(p, "variable names cannot start with a digit"));
            }
            return Ok(Form::Var(x.to_string()));
        }
        let head = self.head(items, pos)?;
        let mut rest = head.rest;
        let mut binders = Vec::new();
        if let Some((Sx::Group(Delim::Bracket, names, p), tail)) = rest.split_first() {
            for name in names {
                match name {
                    Sx::Atom(a, _) => binders.push(a.clone()),
                    other => return Err(self.r.error(other.pos(), "binder names are atoms")),
                }
            }
            if binders.len() != head.n {
                return Err(self.r.error(*p, format!("expected {} binder names, found {}", head.n, binders.len())));
            }
            rest = tail;
        } else if head.n > 0 {
            return Err(self.r.error(pos, format!("expected a binder list of {} names", head.n)));
        }
        self.children_count(rest.len(), head.k, pos)?;
        let children = rest.iter().map(|c| self.form(c)).collect::<Result<_, _>>()?;
        Ok(Form::Con {
            path: head.path,
            binders,
            children,
        })
    }

    fn expr(&self, sx: &Sx) -> Result<ExprNode, SyntaxError> {
        let (items, pos) = self.list(sx)?;
        if let Some(v) = self.var_atom(items) {
            let (x, p) = v?;
            return x
                .parse::<usize>()
                .map(ExprNode::Var)
                .map_err(|_| self.r.error(p, "expected a de Bruijn index"));
        }
        let head = self.head(items, pos)?;
        self.children_count(head.rest.len(), head.k, pos)?;
        let children = head.rest.iter().map(|c| self.expr(c)).collect::<Result<_, _>>()?;
        Ok(ExprNode::Con {
            path: head.path,
            children,
        })
    }
}
