use crate::descriptions::{Desc, Ident, LanguageDescription, NodeDesc, Ty};

use super::SgChoice;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("unknown tag `{tag}` for `{label}`")]
    UnknownTag { tag: Ident, label: Ident },
    #[error("expected a tag for `{label}`, found a type payload")]
    ExpectedTag { label: Ident },
    #[error("expected a type payload for `{binder}`, found tag `{tag}`")]
    ExpectedPayload { binder: Ident, tag: Ident },
    #[error("path continues past a node")]
    TooLong,
    #[error("path ends before reaching a node")]
    TooShort,
}

/// A step of a production template: a fixed tag, or a slot for an object
/// type stored under the named `SgTy` binder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProdStep {
    Tag(Ident),
    Payload(Ident),
}

/// A route from the description root to one of its nodes, with payload slots
/// left open.
#[derive(Clone, Debug)]
pub struct Production<'a> {
    pub steps: Vec<ProdStep>,
    pub node: &'a NodeDesc,
}

impl Production<'_> {
    /// The first tag, used as the production's display name.
    pub fn name(&self) -> Option<&Ident> {
        self.steps.iter().find_map(|s| match s {
            ProdStep::Tag(t) => Some(t),
            ProdStep::Payload(_) => None,
        })
    }

    /// Fills the payload slots in order.
    pub fn instantiate(&self, payloads: &[Ty]) -> Vec<SgChoice> {
        let mut it = payloads.iter();
        self.steps
            .iter()
            .map(|s| match s {
                ProdStep::Tag(t) => SgChoice::Tag(t.clone()),
                ProdStep::Payload(_) => {
                    SgChoice::TyPayload(it.next().expect("one payload per slot").clone())
                }
            })
            .collect()
    }

    pub fn payload_slots(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ProdStep::Payload(_)))
            .count()
    }
}

impl LanguageDescription {
    /// Follows `path` from the root to the node it selects.
    pub fn node_at(&self, path: &[SgChoice]) -> Result<&NodeDesc, PathError> {
        self.walk(path, |_, _| {})
    }

    /// Like [`node_at`](Self::node_at), also returning the `SgTy` payloads
    /// collected on the way, keyed by binder name.
    pub fn node_with_payloads(&self, path: &[SgChoice]) -> Result<(&NodeDesc, Vec<(Ident, Ty)>), PathError> {
        let mut payloads = Vec::new();
        let node = self.walk(path, |b, t| payloads.push((b.clone(), t.clone())))?;
        Ok((node, payloads))
    }

    fn walk<'a>(
        &'a self,
        path: &[SgChoice],
        mut on_payload: impl FnMut(&Ident, &Ty),
    ) -> Result<&'a NodeDesc, PathError> {
        let mut d = &self.root;
        let mut it = path.iter();
        loop {
            match d {
                Desc::Node(node) => {
                    return match it.next() {
                        None => Ok(node),
                        Some(_) => Err(PathError::TooLong),
                    }
                }
                Desc::SgTag { label, arms } => match it.next() {
                    Some(SgChoice::Tag(tag)) => {
                        d = arms
                            .iter()
                            .find(|(t, _)| t == tag)
                            .map(|(_, arm)| arm)
                            .ok_or_else(|| PathError::UnknownTag {
                                tag: tag.clone(),
                                label: label.clone(),
                            })?;
                    }
                    Some(SgChoice::TyPayload(_)) => {
                        return Err(PathError::ExpectedTag { label: label.clone() })
                    }
                    None => return Err(PathError::TooShort),
                },
                Desc::SgTy { binder, rest } => match it.next() {
                    Some(SgChoice::TyPayload(t)) => {
                        on_payload(binder, t);
                        d = rest;
                    }
                    Some(SgChoice::Tag(tag)) => {
                        return Err(PathError::ExpectedPayload {
                            binder: binder.clone(),
                            tag: tag.clone(),
                        })
                    }
                    None => return Err(PathError::TooShort),
                },
            }
        }
    }

    /// Every production of the language in description order.
    pub fn productions(&self) -> Vec<Production<'_>> {
        fn go<'a>(d: &'a Desc, steps: &mut Vec<ProdStep>, out: &mut Vec<Production<'a>>) {
            match d {
                Desc::Node(node) => out.push(Production {
                    steps: steps.clone(),
                    node,
                }),
                Desc::SgTag { arms, .. } => {
                    for (tag, arm) in arms {
                        steps.push(ProdStep::Tag(tag.clone()));
                        go(arm, steps, out);
                        steps.pop();
                    }
                }
                Desc::SgTy { binder, rest } => {
                    steps.push(ProdStep::Payload(binder.clone()));
                    go(rest, steps, out);
                    steps.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptions::{Binder, Shape, TySig, TyPattern};

    fn lang() -> LanguageDescription {
        LanguageDescription::new(
            "t",
            TySig::new([("base", 0)]),
            Desc::sg_tag(
                "op",
                [
                    ("unit", Desc::node(0, Shape::default(), vec![])),
                    (
                        "ann",
                        Desc::sg_ty(
                            "t",
                            Desc::node(
                                1,
                                Shape::new(vec![vec![Binder::Bound]]),
                                vec![(TyPattern::payload("t"), TyPattern::MetaB(0))],
                            ),
                        ),
                    ),
                ],
            ),
        )
    }

    #[test]
    fn walking_paths() {
        let l = lang();
        let base = Ty::atom("base");
        assert_eq!(l.node_at(&[SgChoice::Tag("unit".into())]).unwrap().n, 0);
        let (node, payloads) = l
            .node_with_payloads(&[SgChoice::Tag("ann".into()), SgChoice::TyPayload(base.clone())])
            .unwrap();
        assert_eq!(node.n, 1);
        assert_eq!(payloads, vec![(Ident::from("t"), base.clone())]);
        assert_eq!(l.node_at(&[SgChoice::Tag("ann".into())]), Err(PathError::TooShort));
        assert!(matches!(
            l.node_at(&[SgChoice::Tag("nope".into())]),
            Err(PathError::UnknownTag { .. })
        ));
        assert!(matches!(
            l.node_at(&[SgChoice::TyPayload(base.clone())]),
            Err(PathError::ExpectedTag { .. })
        ));
        assert_eq!(
            l.node_at(&[SgChoice::Tag("unit".into()), SgChoice::Tag("x".into())]),
            Err(PathError::TooLong)
        );
    }

    #[test]
    fn productions_in_order() {
        let l = lang();
        let prods = l.productions();
        assert_eq!(prods.len(), 2);
        assert_eq!(prods[0].name().map(|i| i.as_str()), Some("unit"));
        assert_eq!(prods[1].payload_slots(), 1);
        let path = prods[1].instantiate(&[Ty::atom("base")]);
        assert_eq!(l.node_at(&path).unwrap().n, 1);
    }
}
