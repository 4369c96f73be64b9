use houghton::brown::{
    cone, le, mcompose, q_fixed_vertex, stabilizer_order, upper_bound, InjectiveMonoidMap,
    MonoidMapJson, TranslationWord,
};
use houghton::centralizer::centralizer_finite;
use houghton::oracle::{
    brute_stabilizer_order, random_box_element, random_finite_subgroup, random_infinite_element,
    PointBox,
};
use houghton::Element;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group_element(rng: &mut ChaCha8Rng, n: usize) -> Element {
    if rng.gen_bool(0.5) {
        random_box_element(rng, &PointBox::new(3, n).unwrap(), 4)
    } else {
        random_infinite_element(rng, n, 3)
    }
}

fn word(n: usize) -> impl Strategy<Value = TranslationWord> {
    proptest::collection::vec(0u64..=2, n).prop_map(TranslationWord)
}

fn vertex(d: &TranslationWord, base: &Element) -> InjectiveMonoidMap {
    mcompose(&d.to_map(), &base.into()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn le_witness_is_the_degree_difference(seed in any::<u64>(), d in word(3), e in word(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = group_element(&mut rng, 3);
        let a = vertex(&d, &h);
        let b = mcompose(&e.to_map(), &a).unwrap();
        prop_assert_eq!(le(&a, &b), Some(e.clone()));
        prop_assert_eq!(b.deficit(), a.deficit() + e.degree());
        if e.degree() > 0 {
            prop_assert_eq!(le(&b, &a), None);
        }
    }

    #[test]
    fn right_action_preserves_order(seed in any::<u64>(), d in word(3), e in word(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = vertex(&d, &group_element(&mut rng, 3));
        let b = mcompose(&e.to_map(), &a).unwrap();
        let h = group_element(&mut rng, 3);
        let k = group_element(&mut rng, 3);
        prop_assert_eq!(le(&a.act(&h).unwrap(), &b.act(&h).unwrap()), Some(e));
        prop_assert_eq!(a.act(&h).unwrap().act(&k).unwrap(), a.act(&h.compose(&k).unwrap()).unwrap());
    }

    #[test]
    fn monoid_json_round_trip(seed in any::<u64>(), d in word(2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = vertex(&d, &group_element(&mut rng, 2));
        let json = serde_json::to_string(&a.to_json()).unwrap();
        let parsed: MonoidMapJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed.deficit, Some(a.deficit()));
        prop_assert_eq!(InjectiveMonoidMap::try_from(parsed).unwrap(), a);
    }

    #[test]
    fn fixed_vertices_and_upper_bounds(n in 2usize..=3, seed in any::<u64>(), d in word(3), e in word(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_finite_subgroup(&mut rng, &PointBox::new(3, n).unwrap());
        let v = q_fixed_vertex(&q);
        prop_assert!(v.is_fixed_by(&q).unwrap());
        let gens: Vec<Element> = centralizer_finite(&q).unwrap().factor_generators().unwrap().into_iter().flatten().collect();
        let mut m = mcompose(&TranslationWord(d.0[..n].to_vec()).to_map(), &v).unwrap();
        if let Some(c) = gens.first() {
            m = m.act(c).unwrap();
        }
        let k = mcompose(&TranslationWord(e.0[..n].to_vec()).to_map(), &v).unwrap();
        for x in [&m, &k] {
            prop_assert!(q.elements().iter().all(|h| x.act(h).unwrap() == *x));
        }
        let u = upper_bound(&m, &k, &q).unwrap();
        prop_assert!(le(&m, &u).is_some() && le(&k, &u).is_some());
        prop_assert!(q.elements().iter().all(|h| u.act(h).unwrap() == u));
    }
}

#[test]
fn stabilizers_match_brute_force_up_to_deficit_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for deficit in 0..=5u64 {
        for n in 2..=3 {
            let mut d = vec![0u64; n];
            for _ in 0..deficit {
                d[rng.gen_range(0..n)] += 1;
            }
            let alpha = vertex(&TranslationWord(d), &group_element(&mut rng, n));
            assert_eq!(
                stabilizer_order(&alpha).unwrap(),
                brute_stabilizer_order(&alpha).unwrap()
            );
        }
    }
}

#[test]
fn cone_counts_vertices_by_degree() {
    let alpha = InjectiveMonoidMap::identity(2).unwrap();
    let c = cone(&alpha, 3).unwrap();
    // words of degree <= 3 in two commuting letters
    assert_eq!(c.vertices.len(), 1 + 2 + 3 + 4);
    for &(lo, hi, _) in &c.edges {
        assert_eq!(c.vertices[hi].0.degree(), c.vertices[lo].0.degree() + 1);
        assert!(le(&c.vertices[lo].1, &c.vertices[hi].1).is_some());
    }
    assert!(c.to_dot().starts_with("digraph hasse {"));
}
