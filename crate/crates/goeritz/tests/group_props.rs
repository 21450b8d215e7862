mod common;

use goeritz::goeritz_group::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::*;

#[test]
fn relators_vanish() {
    for (name, w) in relators() {
        assert!(normal_form(&w).is_identity(), "{name}");
    }
    assert!(validation_suite().iter().all(|c| c.passed));
}

#[test]
fn random_words_are_sound() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let u = random_goeritz_word(&mut rng, 40);
        let v = random_goeritz_word(&mut rng, 40);
        let (a, b) = (normal_form(&u), normal_form(&v));
        assert!(normal_form(&u.concat(&u.inverse())).is_identity());
        assert_eq!(a.mul(&b), normal_form(&u.concat(&v)));
        let (pa, pb) = (abelianization(&a), abelianization(&b));
        assert_eq!(abelianization(&a.mul(&b)), ((pa.0 + pb.0) % 2, pa.1 + pb.1));
        assert_eq!(quotient_s3(&a.mul(&b)), quotient_s3(&a).compose(quotient_s3(&b)));
    }
}

#[test]
fn conjugacy_agrees_with_search_on_short_conjugators() {
    let elems = small_elements(3, 2);
    let ball = word_ball(4);
    for g in elems.iter().step_by(7) {
        let orbit = conjugacy_orbit(g, &ball);
        for h in &elems {
            let found = is_conjugate(g, h);
            if let Some(k) = &found {
                assert_eq!(&g.conjugate_by(k), h);
            }
            if orbit.contains(h) {
                assert!(found.is_some(), "{g} ~ {h} missed");
            }
        }
    }
}

fn element_strategy() -> impl Strategy<Value = NormalForm> {
    prop::collection::vec(prop::sample::select(ALL_LETTERS.to_vec()), 0..30).prop_map(|l| normal_form(&GoeritzWord(l)))
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in element_strategy(), b in element_strategy(), c in element_strategy()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn normal_forms_are_stable(a in element_strategy()) {
        prop_assert_eq!(normal_form(&a.to_word()), a.clone());
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn cyclic_reduction_conjugates(a in element_strategy()) {
        let (k, r) = cyclic_reduction(&a);
        prop_assert_eq!(a.conjugate_by(&k), r);
    }

    #[test]
    fn conjugates_share_a_class(a in element_strategy(), h in element_strategy()) {
        let b = a.conjugate_by(&h);
        prop_assert_eq!(cyclic_class(&a), cyclic_class(&b));
        prop_assert_eq!(order_of(&a), order_of(&b));
        let k = is_conjugate(&a, &b);
        prop_assert!(k.is_some());
        prop_assert_eq!(a.conjugate_by(&k.unwrap()), b);
    }

    #[test]
    fn normal_form_json_round_trips(a in element_strategy()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: NormalForm = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}
