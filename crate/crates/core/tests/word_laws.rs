use std::borrow::Cow;

use proptest::prelude::*;
use twogen_core::{Letter, Word};

fn letters(rank: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect())
}

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(Word::reduce)
}

/// Repeatedly deletes the first cancelling pair until none is left.
fn slow_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
    while let Some(k) = (1..v.len()).find(|&k| v[k] == v[k - 1].inverse()) {
        v.drain(k - 1..=k);
    }
    v
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[1] != p[0].inverse())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduce_matches_slow_reducer(v in letters(3, 40)) {
        let w = Word::reduce(v.clone());
        let slow = slow_reduce(v.clone());
        prop_assert_eq!(w.letters(), slow.as_slice());
        prop_assert!(w.len() <= v.len());
        prop_assert!(is_reduced(&w));
        prop_assert_eq!(Word::reduce(w.letters().to_vec()), w);
    }

    #[test]
    fn group_laws(u in word(3, 20), v in word(3, 20), w in word(3, 20)) {
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        prop_assert!(u.multiply(&u.inverse()).is_empty());
        prop_assert!(u.inverse().multiply(&u).is_empty());
        prop_assert_eq!(u.multiply(&Word::identity()), u.clone());
        prop_assert!(u.multiply(&v).len() <= u.len() + v.len());
        prop_assert_eq!(u.multiply(&v).inverse(), v.inverse().multiply(&u.inverse()));
    }

    #[test]
    fn substitution_is_a_homomorphism(
        u in word(5, 20),
        v in word(5, 20),
        images in prop::collection::vec(word(2, 8), 5),
    ) {
        let f = |w: &Word| w.substitute(|g| images.get(g as usize - 1).map(Cow::Borrowed)).unwrap();
        prop_assert_eq!(f(&u.multiply(&v)), f(&u).multiply(&f(&v)));
        prop_assert_eq!(f(&u.inverse()), f(&u).inverse());
    }

    #[test]
    fn conjugation_composes(w in word(3, 20), g in word(3, 10), h in word(3, 10)) {
        prop_assert_eq!(w.conjugate(&g).conjugate(&h), w.conjugate(&g.multiply(&h)));
        prop_assert_eq!(w.conjugate(&Word::identity()), w.clone());
    }

    #[test]
    fn powers(w in word(2, 10), m in -6i64..6, n in -6i64..6) {
        prop_assert_eq!(w.pow(m).multiply(&w.pow(n)), w.pow(m + n));
        prop_assert_eq!(w.pow(m).pow(n), w.pow(m * n));
        prop_assert_eq!(w.pow(-m), w.pow(m).inverse());
    }

    #[test]
    fn cyclic_reduction(w in word(3, 24)) {
        let (core, c) = w.cyclically_reduce();
        prop_assert_eq!(core.conjugate(&c), w.clone());
        let l = core.letters();
        prop_assert!(l.len() < 2 || l[0] != l[l.len() - 1].inverse());
        prop_assert!(w.cyclically_equal(&core));
        if let Some((first, rest)) = core.letters().split_first() {
            let rotated = Word::reduce(rest.iter().copied().chain([*first]));
            prop_assert!(core.cyclically_equal(&rotated));
        }
    }
}

#[test]
fn substitution_reports_missing_generator() {
    let w = Word::reduce([Letter::pos(1), Letter::neg(4)]);
    let x = Word::from_letter(Letter::pos(1));
    let r = w.substitute(|g| (g == 1).then_some(Cow::Borrowed(&x)));
    assert_eq!(r, Err(4));
}
