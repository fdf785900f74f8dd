use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use twogen_core::abelian::smith_diagonal;
use twogen_core::embed::EmbeddingMode;
use twogen_core::homsearch::SearchReport;
use twogen_core::{
    check_assignment, hom_search, universal_word, Alphabet, PermAssignment, Permutation, Presentation, SearchConfig,
    SearchOutcome, Word,
};

fn big(rows: &[[i64; 2]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Invariant factors of a 2-column matrix from determinantal divisors:
/// d1 = gcd of entries, d1*d2 = gcd of 2x2 minors.
fn divisors(rows: &[[i64; 2]]) -> (i64, i64) {
    let d1 = rows.iter().flatten().fold(0i64, |g, &v| g.gcd(&v));
    let mut m = 0i64;
    for (i, r) in rows.iter().enumerate() {
        for s in &rows[i + 1..] {
            m = m.gcd(&(r[0] * s[1] - r[1] * s[0]));
        }
    }
    (d1, if d1 == 0 { 0 } else { m / d1 })
}

fn snf(rows: &[[i64; 2]]) -> (i64, i64) {
    let d = smith_diagonal(&big(rows), 2);
    (i64::try_from(&d[0]).unwrap(), i64::try_from(&d[1]).unwrap())
}

/// Order of a permutation by repeated composition.
fn order_by_powers(p: &Permutation) -> u64 {
    let mut q = p.clone();
    let mut n = 1;
    while !q.is_identity() {
        q = q.then(p);
        n += 1;
    }
    n
}

fn a1_power(m: i64) -> (Presentation, Word) {
    let a1 = universal_word(1, EmbeddingMode::General).unwrap();
    let mut p = Presentation::new("T", Alphabet::f2()).unwrap();
    p.push_explicit(a1.pow(m)).unwrap();
    (p, a1)
}

fn witness(report: &SearchReport) -> &PermAssignment {
    match &report.outcome {
        SearchOutcome::Found(a) => a,
        other => panic!("no witness: {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_matches_determinantal_divisors(rows in prop::collection::vec([-30i64..30, -30i64..30], 0..6)) {
        prop_assert_eq!(snf(&rows), divisors(&rows));
    }

    #[test]
    fn snf_invariant_under_row_operations(
        rows in prop::collection::vec([-20i64..20, -20i64..20], 1..6),
        ops in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
    ) {
        let before = snf(&rows);
        let mut m = rows.clone();
        let n = m.len();
        for (i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                m.swap(0, i);
            } else {
                m[i] = [m[i][0] + c * m[j][0], m[i][1] + c * m[j][1]];
            }
        }
        prop_assert_eq!(snf(&m), before);
    }
}

#[test]
fn snf_entries_can_grow() {
    let rows = [[1_000_003, 999_983], [999_979, 1_000_033], [7_654_321, 1_234_567]];
    assert_eq!(snf(&rows), divisors(&rows));
}

#[test]
fn order_two_witness_is_sound() {
    let (p, a1) = a1_power(2);
    let report = hom_search(&p, &a1, &SearchConfig::new(2, 6)).unwrap();
    let w = witness(&report);
    assert!(check_assignment(&p, w).unwrap());
    assert_eq!(order_by_powers(&w.eval(&a1)), 2);
    assert_eq!(w.degree(), 4);
    assert_eq!(w.x.images(), vec![0, 1, 3, 2]);
    assert_eq!(w.y.images(), vec![1, 2, 0, 3]);
}

#[test]
fn order_three_witness_is_sound() {
    let (p, a1) = a1_power(3);
    let report = hom_search(&p, &a1, &SearchConfig::new(3, 7)).unwrap();
    let w = witness(&report);
    assert!(check_assignment(&p, w).unwrap());
    assert_eq!(order_by_powers(&w.eval(&a1)), 3);
    assert_eq!(w.degree(), 3);
}

#[test]
fn relator_bounds_every_order() {
    // every assignment satisfying a1^m has an a1-image of order dividing m
    for m in [2i64, 3] {
        let (p, a1) = a1_power(m);
        for k in 1..=4 {
            let perms = twogen_core::homsearch::all_permutations(k);
            for x in &perms {
                for y in &perms {
                    let a = PermAssignment::new(x.clone(), y.clone()).unwrap();
                    if check_assignment(&p, &a).unwrap() {
                        assert_eq!(m as u64 % order_by_powers(&a.eval(&a1)), 0);
                    }
                }
            }
        }
    }
}

#[test]
fn small_degrees_are_exhausted() {
    let (p, a1) = a1_power(2);
    let report = hom_search(&p, &a1, &SearchConfig::new(2, 3)).unwrap();
    assert_eq!(report.outcome, SearchOutcome::NotFound);
    assert_eq!(report.visited, vec![1, 4, 36]);
}

#[test]
fn budget_is_distinct_from_not_found() {
    let (p, a1) = a1_power(2);
    let cfg = SearchConfig {
        budget: 20,
        ..SearchConfig::new(2, 6)
    };
    assert_eq!(hom_search(&p, &a1, &cfg).unwrap().outcome, SearchOutcome::BudgetExhausted);
}
