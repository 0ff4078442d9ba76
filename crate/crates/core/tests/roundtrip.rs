use std::sync::Arc;

use proptest::prelude::*;

use cocycle_forge::io::{
    emit_chain, emit_group, emit_table, parse_chain, parse_cocycle, parse_group, parse_r, AnyMap,
};
use cocycle_forge::oracle::{
    enumerate_cocycles, enumerate_ideals, random_chain, random_semilinear_map, CensusConfig,
};
use cocycle_forge::{AlgebraContext, Group};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<Arc<Group>> {
    (1..=7)
        .map(|n| Arc::new(Group::cyclic(n).unwrap()))
        .chain((2..=4).map(|m| Arc::new(Group::dihedral(m).unwrap())))
        .collect()
}

#[test]
fn every_small_census_round_trips() {
    for g in [Group::cyclic(4).unwrap(), Group::dihedral(3).unwrap()] {
        let g = Arc::new(g);
        for f in enumerate_cocycles(&CensusConfig::new(g.clone())).cocycles {
            let text = emit_table(f.table());
            let back = parse_cocycle(&g, &text, "f").unwrap();
            assert_eq!(back, f);
            assert_eq!(emit_table(back.table()), text);
        }
    }
}

#[test]
fn groups_round_trip() {
    for g in groups() {
        assert_eq!(parse_group(&emit_group(&g), "g").unwrap(), *g);
    }
}

proptest! {
    #[test]
    fn maps_and_chains_round_trip(seed in any::<u64>(), pick in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = groups()[pick].clone();
        prop_assume!(g.order() > 1);
        let r = random_semilinear_map(&g, &g.trivial_subgroup(), 5, &mut rng);
        let parsed = parse_r(&g, &r.render(), "r").unwrap();
        prop_assert_eq!(&parsed, &AnyMap::Naturals(r.clone()));
        let ctx = AlgebraContext::new(r.cocycle()).unwrap();
        let ideals = enumerate_ideals(&ctx).unwrap();
        let chain = ctx.chain(random_chain(&ctx, &ideals, &mut rng)).unwrap();
        let text = emit_chain(&chain);
        prop_assert_eq!(parse_chain(&ctx, &text, "c").unwrap(), chain.clone());
        let lifted = r.chain_lift(&ctx, &chain).unwrap();
        match parse_r(&g, &lifted.render(), "r").unwrap() {
            AnyMap::Lex(back) => prop_assert_eq!(back.render(), lifted.render()),
            other => prop_assert!(false, "lifted map parsed as {:?}", other),
        }
    }
}
