mod common;

use std::collections::HashSet;

use common::oracle::{self, base, boolean, from_tm, small_types, Enumerator};
use common::{church_bool, ctx, curry_bool, products, stlc};
use gensyn::langpack::stlc::{Flavour, Style};
use gensyn::termgen::{enum_closed, enumerate_typed, gen_typed, GenConfig, GenError, Generator, TermSpace};
use gensyn::typecheck::validate_typed;
use gensyn::{Ctx, TmNode};
use proptest::prelude::*;

#[test]
fn booleans_within_budget_one() {
    let lang = curry_bool().lang;
    let all = enumerate_typed(&lang, &Ctx::empty(), &boolean(), 1, 2).unwrap();
    let tags: HashSet<_> = all.iter().map(|t| t.root.tag().unwrap().to_string()).collect();
    assert_eq!(tags, HashSet::from(["true".to_string(), "false".to_string()]));
    assert_eq!(all.len(), 2);
}

#[test]
fn variables_cost_nothing() {
    let lang = curry_bool().lang;
    let g = ctx(&["base"]);
    let all = enumerate_typed(&lang, &g, &base(), 0, 2).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].root, TmNode::Var { ty: base(), index: 0 });
}

#[test]
fn closed_base_is_uninhabited() {
    let lang = curry_bool().lang;
    for budget in 0..=6 {
        assert!(!oracle::inhabited(&small_types(), true, &[], &base(), budget));
        assert!(!TermSpace::new(&lang, 2).inhabited(&Ctx::empty(), &base(), budget));
        assert!(matches!(
            enumerate_typed(&lang, &Ctx::empty(), &base(), budget, 2),
            Err(GenError::Exhausted { .. })
        ));
    }
    let cfg = GenConfig {
        max_depth: 6,
        count: 3,
        ..Default::default()
    };
    assert!(matches!(
        gen_typed(&lang, &Ctx::empty(), &base(), &cfg),
        Err(GenError::Exhausted { .. })
    ));
}

#[test]
fn inhabitation_matches_oracle() {
    let lang = curry_bool().lang;
    let mut space = TermSpace::new(&lang, 2);
    let ctxs = [vec![], vec![base()], vec![boolean()], vec![oracle::arrow(boolean(), base())]];
    for c in &ctxs {
        for t in small_types() {
            for budget in 0..4 {
                assert_eq!(
                    space.inhabited(&Ctx::new(c.clone()), &t, budget),
                    oracle::inhabited(&small_types(), true, c, &t, budget),
                    "{t} in {c:?} at {budget}"
                );
            }
        }
    }
}

fn library_closed(max_nodes: usize) -> HashSet<(gensyn::Ty, oracle::T)> {
    let lang = curry_bool().lang;
    let all = enum_closed(&lang, max_nodes);
    let set: HashSet<_> = all.iter().map(|(t, e)| (t.clone(), from_tm(&e.root))).collect();
    assert_eq!(set.len(), all.len(), "duplicates");
    set
}

#[test]
fn closed_enumeration_matches_oracle() {
    let mut en = Enumerator::new(small_types(), true);
    let mut counts = Vec::new();
    for n in 1..=6 {
        let expected = en.closed(&small_types(), n);
        assert_eq!(library_closed(n), expected, "size {n}");
        counts.push(expected.len());
    }
    assert_eq!(counts, vec![2, 8, 8, 22, 117, 229]);
}

#[test]
fn closed_enumeration_is_ordered_and_typed() {
    let lang = curry_bool().lang;
    let all = enum_closed(&lang, 5);
    let sizes: Vec<usize> = all.iter().map(|(_, e)| e.root.node_count()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    for (t, e) in &all {
        assert_eq!(e.ty(), t);
        assert!(validate_typed(&lang, e).is_empty(), "{e}");
    }
}

#[test]
fn generation_is_deterministic() {
    let lang = church_bool().lang;
    let cfg = GenConfig {
        seed: 42,
        ..Default::default()
    };
    let a: Vec<String> = {
        let mut g = Generator::new(&lang, cfg.clone());
        (0..50).map(|_| g.gen_any().unwrap().to_string()).collect()
    };
    let mut g = Generator::new(&lang, cfg);
    let b: Vec<String> = (0..50).map(|_| g.gen_any().unwrap().to_string()).collect();
    assert_eq!(a, b);
    assert!(a.iter().collect::<HashSet<_>>().len() > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generated_terms_are_well_typed(which in 0usize..4, seed in any::<u64>(), depth in 0usize..6) {
        let lang = match which {
            0 => curry_bool().lang,
            1 => church_bool().lang,
            2 => stlc(Flavour::Sugared, Style::Curry, true).lang,
            _ => products(),
        };
        let mut g = Generator::new(&lang, GenConfig { seed, max_depth: depth, ..Default::default() });
        for _ in 0..10 {
            let e = g.gen_any().unwrap();
            prop_assert!(validate_typed(&lang, &e).is_empty(), "{}", e);
            prop_assert!(e.root.depth() <= depth + 1);
        }
    }

    #[test]
    fn generated_substitutions_fit(seed in any::<u64>()) {
        let lang = curry_bool().lang;
        let mut g = Generator::new(&lang, GenConfig { seed, ..Default::default() });
        let delta = g.gen_ctx(3);
        let gamma = g.gen_ctx(3).extend(delta.as_slice());
        let sigma = g.gen_subst(&gamma, &delta, 3).unwrap();
        prop_assert_eq!(sigma.source(), &gamma);
        prop_assert_eq!(sigma.target(), delta.clone());
        let rho = g.gen_ope(&delta, 2);
        prop_assert_eq!(rho.target(), delta);
    }
}
