use crlab_core::chevalley::{
    canonical_order, collect, normalize, parse_word, render_word, words_equal, Atom, Word,
};
use crlab_core::paperlab::{
    a2_oracle_suite, action_law_suite, ad_homomorphism_suite, confluence_suite, run_all,
    run_scenario, RunConfig,
};
use crlab_core::parabolic::{contains, limit_along, refine, rparabolic};
use crlab_core::{Cochar, Dynkin, Poly, Registry, Root, RootSystem};
use proptest::prelude::*;

fn d4() -> RootSystem {
    RootSystem::new(Dynkin::D4).unwrap()
}

const COEFFS: [&str; 6] = ["x", "y", "x*y", "x + 1", "y^2 + x", "1"];

fn letters(reg: &mut Registry, picks: &[(usize, usize)], pool: &[Root]) -> Vec<(Root, Poly)> {
    picks
        .iter()
        .map(|&(r, c)| {
            (
                pool[r % pool.len()],
                reg.parse(COEFFS[c % COEFFS.len()]).unwrap(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collection_matches_the_word(picks in prop::collection::vec((0..12usize, 0..6usize), 1..10)) {
        let rs = d4();
        let mut reg = Registry::standard();
        let pos: Vec<Root> = rs.positive_roots().collect();
        let order = canonical_order(&rs, &pos).unwrap();
        let ls = letters(&mut reg, &picks, &pos);
        let collected = collect(&rs, &ls, &order).unwrap();
        let word = Word::from_roots(ls.clone());
        let normal = Word::from_roots(collected.letters());
        prop_assert!(words_equal(&rs, &word, &normal).unwrap());
        // product with the inverse collects to the identity
        let mut inv: Vec<(Root, Poly)> = ls.iter().rev().cloned().collect();
        inv.splice(0..0, ls.iter().cloned());
        prop_assert!(collect(&rs, &inv, &order).unwrap().is_identity());
    }

    #[test]
    fn word_render_parse_round_trip(seed in any::<u64>()) {
        use rand::SeedableRng;
        let rs = RootSystem::new(Dynkin::A(2)).unwrap();
        let mut reg = Registry::standard();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let w = crlab_core::paperlab::random_a2_word(&rs, &mut reg, &mut rng, 8);
        let text = render_word(&rs, &reg, &w);
        let back = parse_word(&rs, &mut reg, &text).unwrap();
        prop_assert_eq!(render_word(&rs, &reg, &back), text);
        prop_assert!(words_equal(&rs, &w, &back).unwrap());
    }

    #[test]
    fn parabolic_invariants(c in prop::collection::vec(-3..4i32, 4)) {
        let rs = d4();
        let lambda = Cochar(c);
        let data = rparabolic(&rs, &lambda);
        for r in rs.roots() {
            let p = rs.pairing(r, &lambda);
            prop_assert_eq!(data.p_roots.contains(&r), p >= 0);
            prop_assert_eq!(data.l_roots.contains(&r), p == 0);
            prop_assert_eq!(data.u_roots.contains(&r), p > 0);
        }
        prop_assert_eq!(data.p_roots.len(), data.l_roots.len() + data.u_roots.len());
        for &r in &data.l_roots {
            prop_assert!(data.l_roots.contains(&rs.neg(r)));
        }
        prop_assert_eq!(data.is_proper(), !lambda.is_zero() || !data.u_roots.is_empty());
    }

    #[test]
    fn limits_exist_exactly_on_the_parabolic(label in 1..13i32, neg in any::<bool>(), c in prop::collection::vec(-2..3i32, 4)) {
        let rs = d4();
        let mut reg = Registry::standard();
        let lambda = Cochar(c);
        let root = rs.by_label(if neg { -label } else { label }).unwrap();
        let el = normalize(&rs, &Word::single(Atom::root(root, reg.parse("x").unwrap()))).unwrap();
        let lim = limit_along(&rs, &lambda, &el).unwrap();
        let pairing = rs.pairing(root, &lambda);
        prop_assert_eq!(lim.is_some(), pairing >= 0);
        prop_assert_eq!(contains(&rs, &lambda, &el), Some(pairing >= 0));
        if let Some(l) = lim {
            prop_assert_eq!(l.is_identity(), pairing > 0);
            let again = limit_along(&rs, &lambda, &l).unwrap().unwrap();
            prop_assert_eq!(again, l);
        }
    }

    #[test]
    fn refinement_keeps_signs(a in prop::collection::vec(-2..3i32, 4), b in prop::collection::vec(-2..3i32, 4)) {
        let rs = d4();
        let (lambda, mu) = (Cochar(a), Cochar(b));
        let zeta = refine(&rs, &lambda, &mu);
        let (pl, pz) = (rparabolic(&rs, &lambda), rparabolic(&rs, &zeta));
        for r in &pz.p_roots {
            prop_assert!(pl.p_roots.contains(r));
        }
    }
}

#[test]
fn property_suites_other_seeds() {
    for seed in [1, 2, 3] {
        for r in [
            confluence_suite(seed, 50),
            action_law_suite(seed, 50),
            ad_homomorphism_suite(seed, 50),
            a2_oracle_suite(seed, 30, 8),
        ] {
            assert!(r.pass(), "seed {seed}: {r:?}");
        }
    }
}

#[test]
fn scenarios_are_deterministic() {
    let cfg = RunConfig { seed: 11, q: 4 };
    let a: Vec<_> = run_all(&cfg)
        .unwrap()
        .iter()
        .map(|r| r.without_timing())
        .collect();
    let b: Vec<_> = run_all(&cfg)
        .unwrap()
        .iter()
        .map(|r| r.without_timing())
        .collect();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn scenarios_run_concurrently() {
    let handles: Vec<_> = crlab_core::paperlab::SCENARIOS
        .iter()
        .map(|name| {
            std::thread::spawn(move || {
                run_scenario(name, &RunConfig::default())
                    .unwrap()
                    .without_timing()
            })
        })
        .collect();
    let parallel: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    let serial: Vec<_> = run_all(&RunConfig::default())
        .unwrap()
        .iter()
        .map(|r| r.without_timing())
        .collect();
    assert_eq!(parallel, serial);
}

#[test]
fn a2_enumeration_over_f2() {
    let cfg = RunConfig {
        q: 2,
        ..RunConfig::default()
    };
    let r = run_scenario("a2-conjugacy", &cfg).unwrap();
    let step = r.step("pairwise-non-conjugate").unwrap();
    assert!(step.actual.starts_with("2 classes"), "{}", step.actual);
    assert!(step.actual.contains("|M(F2)| = 12"));
}
