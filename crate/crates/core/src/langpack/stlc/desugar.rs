use crate::terms::{Tm, TmNode};

use super::{Stlc, APP, LET};

/// Replaces every `let e0 body` by `(lam body) e0`. The result lives in
/// `stlc.config.desugared()` with the same context and type. In Church style
/// the new lambda is annotated with the let-bound variable's type.
pub fn desugar(stlc: &Stlc, e: &Tm) -> Tm {
    Tm::new(e.ctx.clone(), go(stlc, &e.root))
}

fn go(stlc: &Stlc, e: &TmNode) -> TmNode {
    match e {
        TmNode::Var { .. } => e.clone(),
        TmNode::Con {
            ty,
            path,
            ts0,
            children,
        } => {
            let children: Vec<TmNode> = children.iter().map(|c| go(stlc, c)).collect();
            if e.tag() == Some(LET) {
                let [e0, body]: [TmNode; 2] = children.try_into().expect("let has two children");
                let lam = stlc.lam(ts0[0].clone(), body);
                return TmNode::Con {
                    ty: ty.clone(),
                    path: vec![crate::terms::SgChoice::Tag(APP.into())],
                    ts0: vec![],
                    children: vec![lam, e0],
                };
            }
            TmNode::Con {
                ty: ty.clone(),
                path: path.clone(),
                ts0: ts0.clone(),
                children,
            }
        }
    }
}
