//! Deterministic generators of well-typed terms for any description:
//! seeded random generation and exhaustive enumeration.
//!
//! Both are driven by node *instances*: a production together with ground
//! types for all of its metavariables that satisfy its equations for a given
//! result type. Metavariables left free by the equations range over the
//! ground types up to `ty_depth`.

use std::collections::HashMap;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descriptions::{visible_types, LanguageDescription, Ty, TyError};
use crate::scope::{Ope, Subst};
use crate::terms::{Ctx, Path, Production, ProdStep, Tm, TmNode};
use crate::typecheck::{Meta, Pat, UnifyState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Constructor nesting budget; variables are allowed at budget 0.
    pub max_depth: usize,
    pub max_ctx: usize,
    /// Bound on the depth of types chosen for free metavariables.
    pub ty_depth: usize,
    pub count: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_depth: 6,
            max_ctx: 4,
            ty_depth: 2,
            count: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("Exhausted: no term of type {ty} in context [{ctx}] within budget {budget}")]
    Exhausted { ctx: Ctx, ty: Ty, budget: usize },
    #[error("Exhausted: no inhabited type for a context of size {0}")]
    NoType(usize),
    #[error("{0}")]
    BadType(#[from] TyError),
}

#[derive(Clone, Debug)]
struct Instance {
    path: Path,
    ts0: Vec<Ty>,
    /// Per child: the types it additionally sees, and its own type.
    children: Vec<(Vec<Ty>, Ty)>,
    /// The same, as interned ids.
    child_ids: Vec<(Vec<u32>, u32)>,
}

fn tuples(choices: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..choices).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Sorted, duplicate-free union of two id sets.
fn union(set: &[u32], more: &[u32]) -> Vec<u32> {
    let mut v = set.to_vec();
    v.extend_from_slice(more);
    v.sort_unstable();
    v.dedup();
    v
}

/// Ways of splitting `total` nodes over `parts` children, each getting one
/// or more, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Memoised instance tables, inhabitation and enumeration for one
/// description.
pub struct TermSpace<'l> {
    lang: &'l LanguageDescription,
    types: Vec<Ty>,
    type_cap: Option<usize>,
    prods: Vec<Production<'l>>,
    ids: HashMap<Ty, u32>,
    interned: Vec<Ty>,
    instances: Vec<Option<Rc<Vec<Instance>>>>,
    /// Keyed by the set of variable types in scope, the wanted type and the
    /// budget.
    /// budget. Stores the smallest budget known to suffice and the largest
    /// known not to.
    inhabited: HashMap<(Vec<u32>, u32), (usize, Option<usize>)>,
    /// Instance indices per type, cheapest first, for inhabitation search.
    search_order: Vec<Option<Rc<Vec<usize>>>>,
    sized: HashMap<(Ctx, Ty, usize), Rc<Vec<TmNode>>>,
}

impl<'l> TermSpace<'l> {
    /// Free metavariables range over types of depth at most `ty_depth`.
    pub fn new(lang: &'l LanguageDescription, ty_depth: usize) -> Self {
        TermSpace {
            lang,
            types: lang.tysig.ground_types(ty_depth),
            type_cap: None,
            prods: lang.productions(),
            ids: HashMap::new(),
            interned: Vec::new(),
            instances: Vec::new(),
            inhabited: HashMap::new(),
            search_order: Vec::new(),
            sized: HashMap::new(),
        }
    }

    /// Additionally excludes nodes whose binder or subterm types are deeper
    /// than `cap`. Keeps the set of reachable types finite.
    pub fn with_type_cap(mut self, cap: usize) -> Self {
        self.type_cap = Some(cap);
        self
    }

    pub fn lang(&self) -> &'l LanguageDescription {
        self.lang
    }

    /// The ground types free metavariables range over.
    pub fn types(&self) -> &[Ty] {
        &self.types
    }

    fn id(&mut self, ty: &Ty) -> u32 {
        if let Some(&i) = self.ids.get(ty) {
            return i;
        }
        let i = self.interned.len() as u32;
        self.ids.insert(ty.clone(), i);
        self.interned.push(ty.clone());
        self.instances.push(None);
        self.search_order.push(None);
        i
    }

    fn id_set(&mut self, tys: &[Ty]) -> Vec<u32> {
        let mut v: Vec<u32> = tys.iter().map(|t| self.id(t)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn instances(&mut self, ty: u32) -> Rc<Vec<Instance>> {
        if let Some(v) = &self.instances[ty as usize] {
            return v.clone();
        }
        let target = self.interned[ty as usize].clone();
        let mut out = Vec::new();
        for prod in &self.prods {
            instances_of(prod, &target, &self.types, &mut out);
        }
        if let Some(cap) = self.type_cap {
            out.retain(|inst| {
                inst.ts0.iter().all(|t| t.depth() <= cap) && inst.children.iter().all(|(_, t)| t.depth() <= cap)
            });
        }
        for inst in &mut out {
            let mut ids = Vec::with_capacity(inst.children.len());
            for (vis, cty) in &inst.children {
                let v = vis.iter().map(|t| self.id(t)).collect::<Vec<_>>();
                ids.push((union(&[], &v), self.id(cty)));
            }
            inst.child_ids = ids;
        }
        let out = Rc::new(out);
        self.instances[ty as usize] = Some(out.clone());
        out
    }

    /// Whether some term of type `ty` exists over variables of the types in
    /// `ctx` using at most `budget` nested constructors.
    pub fn inhabited(&mut self, ctx: &Ctx, ty: &Ty, budget: usize) -> bool {
        let set = self.id_set(ctx.as_slice());
        let ty = self.id(ty);
        self.inhabited_set(&set, ty, budget)
    }

    fn inhabited_set(&mut self, set: &[u32], ty: u32, budget: usize) -> bool {
        if set.contains(&ty) {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let key = (set.to_vec(), ty);
        let (mut yes, mut no) = self.inhabited.get(&key).copied().unwrap_or((usize::MAX, None));
        if budget >= yes {
            return true;
        }
        if no.is_some_and(|n| budget <= n) {
            return false;
        }
        let all = self.instances(ty);
        let order = self.search_order(ty);
        let found = order.iter().any(|&i| {
            all[i]
                .child_ids
                .iter()
                .all(|(vis, cty)| self.inhabited_set(&union(set, vis), *cty, budget - 1))
        });
        if found {
            yes = budget;
        } else {
            no = Some(budget);
        }
        self.inhabited.insert(key, (yes, no));
        found
    }

    /// Leaves first, then by number of children and the depth of their types.
    fn search_order(&mut self, ty: u32) -> Rc<Vec<usize>> {
        if let Some(v) = &self.search_order[ty as usize] {
            return v.clone();
        }
        let all = self.instances(ty);
        let mut order: Vec<usize> = (0..all.len()).collect();
        order.sort_by_key(|&i| {
            let c = &all[i].children;
            (c.len(), c.iter().map(|(_, t)| t.depth()).max().unwrap_or(0))
        });
        let order = Rc::new(order);
        self.search_order[ty as usize] = Some(order.clone());
        order
    }

    /// Every term of type `ty` in `ctx` with exactly `nodes` nodes.
    pub fn of_size(&mut self, ctx: &Ctx, ty: &Ty, nodes: usize) -> Rc<Vec<TmNode>> {
        let key = (ctx.clone(), ty.clone(), nodes);
        if let Some(v) = self.sized.get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if nodes == 1 {
            out.extend(vars_of(ctx, ty));
        }
        let tid = self.id(ty);
        for inst in self.instances(tid).iter() {
            let k = inst.children.len();
            if nodes == 0 || (k == 0) != (nodes == 1) {
                continue;
            }
            for split in compositions(nodes - 1, k) {
                let mut pools = Vec::with_capacity(k);
                for ((vis, cty), size) in inst.children.iter().zip(&split) {
                    pools.push(self.of_size(&ctx.extend(vis), cty, *size));
                }
                cartesian(&pools, &mut |children| out.push(con(ty, inst, children)));
            }
        }
        let out = Rc::new(out);
        self.sized.insert(key, out.clone());
        out
    }

    /// Every term of type `ty` in `ctx` using at most `budget` nested
    /// constructors.
    pub fn within_budget(&mut self, ctx: &Ctx, ty: &Ty, budget: usize) -> Vec<TmNode> {
        let mut out = vars_of(ctx, ty);
        if budget == 0 {
            return out;
        }
        let tid = self.id(ty);
        for inst in self.instances(tid).iter() {
            // An empty child pool empties the product, so skip it unbuilt.
            if !inst.children.iter().all(|(vis, cty)| self.inhabited(&ctx.extend(vis), cty, budget - 1)) {
                continue;
            }
            let pools: Vec<Rc<Vec<TmNode>>> = inst
                .children
                .iter()
                .map(|(vis, cty)| Rc::new(self.within_budget(&ctx.extend(vis), cty, budget - 1)))
                .collect();
            cartesian(&pools, &mut |children| out.push(con(ty, inst, children)));
        }
        out
    }

    /// A random term of type `ty` in `ctx` within `budget`.
    pub fn random(&mut self, rng: &mut ChaCha8Rng, ctx: &Ctx, ty: &Ty, budget: usize) -> Result<TmNode, GenError> {
        if !self.inhabited(ctx, ty, budget) {
            return Err(GenError::Exhausted {
                ctx: ctx.clone(),
                ty: ty.clone(),
                budget,
            });
        }
        let set = self.id_set(ctx.as_slice());
        let tid = self.id(ty);
        Ok(self.random_node(rng, ctx, &set, tid, budget))
    }

    fn random_node(&mut self, rng: &mut ChaCha8Rng, ctx: &Ctx, set: &[u32], ty: u32, budget: usize) -> TmNode {
        let target = self.interned[ty as usize].clone();
        let vars = vars_of(ctx, &target);
        let mut viable = Vec::new();
        if budget > 0 {
            let all = self.instances(ty);
            for (i, inst) in all.iter().enumerate() {
                if inst
                    .child_ids
                    .iter()
                    .all(|(vis, cty)| self.inhabited_set(&union(set, vis), *cty, budget - 1))
                {
                    viable.push(i);
                }
            }
            if !viable.is_empty() && (vars.is_empty() || rng.gen_bool(0.75)) {
                let inst = &all[*viable.choose(rng).expect("non-empty")];
                let children = inst
                    .children
                    .iter()
                    .zip(&inst.child_ids)
                    .map(|((vis, _), (vis_ids, cty))| {
                        let set = union(set, vis_ids);
                        self.random_node(rng, &ctx.extend(vis), &set, *cty, budget - 1)
                    })
                    .collect();
                return con(&target, inst, children);
            }
        }
        vars.choose(rng).expect("inhabited").clone()
    }
}

fn vars_of(ctx: &Ctx, ty: &Ty) -> Vec<TmNode> {
    (0..ctx.len())
        .filter(|&i| ctx.lookup(i) == Some(ty))
        .map(|index| TmNode::Var { ty: ty.clone(), index })
        .collect()
}

fn con(ty: &Ty, inst: &Instance, children: Vec<TmNode>) -> TmNode {
    TmNode::Con {
        ty: ty.clone(),
        path: inst.path.clone(),
        ts0: inst.ts0.clone(),
        children,
    }
}

fn cartesian(pools: &[Rc<Vec<TmNode>>], f: &mut dyn FnMut(Vec<TmNode>)) {
    fn go(pools: &[Rc<Vec<TmNode>>], acc: &mut Vec<TmNode>, f: &mut dyn FnMut(Vec<TmNode>)) {
        match pools.split_first() {
            None => f(acc.clone()),
            Some((first, rest)) => {
                for t in first.iter() {
                    acc.push(t.clone());
                    go(rest, acc, f);
                    acc.pop();
                }
            }
        }
    }
    go(pools, &mut Vec::new(), f)
}

/// All ways to instantiate `prod` at result type `ty`.
fn instances_of(prod: &Production<'_>, ty: &Ty, types: &[Ty], out: &mut Vec<Instance>) {
    let node = prod.node;
    let mut st = UnifyState::new();
    for (l, r) in &node.constraint.equations {
        if st.unify_pats(&Pat::from(l), &Pat::from(r)).is_err() {
            return;
        }
    }
    if st.unify_pats(&Pat::Meta(Meta::R), &Pat::from(ty)).is_err() {
        return;
    }
    let slots: Vec<Meta> = prod
        .steps
        .iter()
        .filter_map(|s| match s {
            ProdStep::Payload(b) => Some(Meta::P(b.clone())),
            ProdStep::Tag(_) => None,
        })
        .collect();
    let wanted: Vec<Meta> = (0..node.n)
        .map(Meta::B)
        .chain((0..node.k()).map(Meta::S))
        .chain(slots.iter().cloned())
        .collect();
    let mut free: Vec<Meta> = Vec::new();
    for m in &wanted {
        for f in st.resolve(&Pat::Meta(m.clone())).metas() {
            if !free.contains(&f) {
                free.push(f);
            }
        }
    }
    for choice in tuples(types.len(), free.len()) {
        let mut st = st.clone();
        for (m, &c) in free.iter().zip(&choice) {
            st.unify_pats(&Pat::Meta(m.clone()), &Pat::from(&types[c]))
                .expect("free metavariables are unbound");
        }
        let ground = |m: Meta| st.ground_meta(m).expect("all metavariables assigned");
        let ts0: Vec<Ty> = (0..node.n).map(|i| ground(Meta::B(i))).collect();
        let payloads: Vec<Ty> = slots.iter().map(|m| ground(m.clone())).collect();
        let children = node
            .shape
            .rows
            .iter()
            .enumerate()
            .map(|(j, row)| (visible_types(row, &ts0).expect("row length"), ground(Meta::S(j))))
            .collect();
        out.push(Instance {
            path: prod.instantiate(&payloads),
            ts0,
            children,
            child_ids: Vec::new(),
        });
    }
}

/// Seeded random generation of terms, contexts, embeddings and
/// substitutions.
pub struct Generator<'l> {
    pub cfg: GenConfig,
    space: TermSpace<'l>,
    rng: ChaCha8Rng,
}

impl<'l> Generator<'l> {
    pub fn new(lang: &'l LanguageDescription, cfg: GenConfig) -> Self {
        Generator {
            space: TermSpace::new(lang, cfg.ty_depth).with_type_cap(cfg.ty_depth + 1),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
        }
    }

    pub fn space(&mut self) -> &mut TermSpace<'l> {
        &mut self.space
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn gen_ty(&mut self) -> Ty {
        self.space.types.choose(&mut self.rng).expect("signature has a type").clone()
    }

    pub fn gen_ctx(&mut self, max: usize) -> Ctx {
        let n = self.rng.gen_range(0..=max);
        Ctx::new((0..n).map(|_| self.gen_ty()).collect())
    }

    pub fn gen_tm_in(&mut self, ctx: &Ctx, ty: &Ty, budget: usize) -> Result<Tm, GenError> {
        self.space.lang.tysig.check(ty)?;
        let root = self.space.random(&mut self.rng, ctx, ty, budget)?;
        Ok(Tm::new(ctx.clone(), root))
    }

    pub fn gen_tm(&mut self, ctx: &Ctx, ty: &Ty) -> Result<Tm, GenError> {
        self.gen_tm_in(ctx, ty, self.cfg.max_depth)
    }

    /// A term of some inhabited type in `ctx`.
    pub fn gen_tm_any_ty(&mut self, ctx: &Ctx) -> Result<Tm, GenError> {
        let budget = self.cfg.max_depth;
        let mut candidates: Vec<Ty> = self.space.types.clone();
        candidates.retain(|t| self.space.inhabited(ctx, t, budget));
        let ty = candidates.choose(&mut self.rng).ok_or(GenError::NoType(ctx.len()))?.clone();
        self.gen_tm_in(ctx, &ty, budget)
    }

    /// A term in a random context of size at most `max_ctx`.
    pub fn gen_any(&mut self) -> Result<Tm, GenError> {
        for _ in 0..64 {
            let ctx = self.gen_ctx(self.cfg.max_ctx);
            if let Ok(t) = self.gen_tm_any_ty(&ctx) {
                return Ok(t);
            }
        }
        Err(GenError::NoType(self.cfg.max_ctx))
    }

    /// An embedding of `delta` into a context with up to `max_extra` more
    /// entries at random positions.
    pub fn gen_ope(&mut self, delta: &Ctx, max_extra: usize) -> Ope {
        let extra = self.rng.gen_range(0..=max_extra);
        let total = delta.len() + extra;
        let mut drops = vec![false; delta.len()];
        drops.extend(std::iter::repeat_n(true, extra));
        drops.shuffle(&mut self.rng);
        let mut kept = delta.as_slice().iter();
        let mut o = Ope::done();
        for d in drops.into_iter().take(total) {
            o = if d {
                let t = self.gen_ty();
                o.drop(t)
            } else {
                o.keep(kept.next().expect("one keep per entry").clone())
            };
        }
        o
    }

    /// A substitution `gamma ⊢* delta` whose entries are random terms of
    /// nesting at most `budget`.
    pub fn gen_subst(&mut self, gamma: &Ctx, delta: &Ctx, budget: usize) -> Result<Subst, GenError> {
        let mut s = Subst::empty(gamma.clone());
        for t in delta.as_slice() {
            let e = self.gen_tm_in(gamma, t, budget)?;
            s = s.snoc(e).expect("generated in gamma");
        }
        Ok(s)
    }
}

/// `cfg.count` random terms of type `ty` in `ctx`.
pub fn gen_typed(lang: &LanguageDescription, ctx: &Ctx, ty: &Ty, cfg: &GenConfig) -> Result<Vec<Tm>, GenError> {
    let mut g = Generator::new(lang, cfg.clone());
    (0..cfg.count).map(|_| g.gen_tm(ctx, ty)).collect()
}

/// Every term of type `ty` in `ctx` within `budget`, or `Exhausted` if there
/// is none.
pub fn enumerate_typed(
    lang: &LanguageDescription,
    ctx: &Ctx,
    ty: &Ty,
    budget: usize,
    ty_depth: usize,
) -> Result<Vec<Tm>, GenError> {
    let mut space = TermSpace::new(lang, ty_depth);
    let all = space.within_budget(ctx, ty, budget);
    if all.is_empty() {
        return Err(GenError::Exhausted {
            ctx: ctx.clone(),
            ty: ty.clone(),
            budget,
        });
    }
    Ok(all.into_iter().map(|r| Tm::new(ctx.clone(), r)).collect())
}

/// Bound on the depth of result types in [`enum_closed`], and of the types
/// free metavariables range over.
pub const ENUM_TY_DEPTH: usize = 2;

/// Every closed term with at most `max_nodes` nodes whose type has depth at
/// most [`ENUM_TY_DEPTH`], ordered by size, then by type.
pub fn enum_closed(lang: &LanguageDescription, max_nodes: usize) -> Vec<(Ty, Tm)> {
    let mut space = TermSpace::new(lang, ENUM_TY_DEPTH);
    let types = space.types.clone();
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        for ty in &types {
            for r in space.of_size(&Ctx::empty(), ty, n).iter() {
                out.push((ty.clone(), Tm::new(Ctx::empty(), r.clone())));
            }
        }
    }
    out
}
