use proptest::prelude::*;
use twogen_core::embed::EmbeddingMode;
use twogen_core::{is_free_basis, stable_letter_word, universal_word, Letter, SubgroupGraph, Word};

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, any::<bool>()), 1..=max_len)
        .prop_map(|v| Word::reduce(v.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn family(mode: EmbeddingMode, n: u32) -> Vec<Word> {
    (1..=n).map(|i| universal_word(i, mode).unwrap()).collect()
}

/// Product of generators and inverses picked by `picks`, truncated at 40 letters before reduction.
fn product(gens: &[Word], picks: &[(usize, bool)]) -> Word {
    let mut raw = Vec::new();
    for &(k, inv) in picks {
        let g = &gens[k % gens.len()];
        let g = if inv { g.inverse() } else { g.clone() };
        if raw.len() + g.len() > 40 {
            break;
        }
        raw.extend_from_slice(g.letters());
    }
    Word::reduce(raw)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn products_are_members(
        gens in prop::collection::vec(word(2, 6), 1..4),
        picks in prop::collection::vec((0usize..4, any::<bool>()), 0..12),
    ) {
        let g = SubgroupGraph::build(&gens);
        prop_assert!(g.is_folded());
        prop_assert!(g.contains(&product(&gens, &picks)));
        prop_assert!(g.rank() <= gens.iter().filter(|w| !w.is_empty()).count());
    }

    #[test]
    fn build_ignores_generator_order(gens in prop::collection::vec(word(3, 6), 1..5), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let n = shuffled.len();
        for k in (1..n).rev() {
            shuffled.swap(k, (seed.rotate_left(k as u32) % (k as u64 + 1)) as usize);
        }
        // inverting a generator leaves the subgroup unchanged as well
        shuffled[0] = shuffled[0].inverse();
        prop_assert_eq!(SubgroupGraph::build(&gens), SubgroupGraph::build(&shuffled));
    }

    #[test]
    fn basis_subsets_separate(mask in 1u32..(1 << 15), j in 1u32..=15, bar in any::<bool>()) {
        let mode = if bar { EmbeddingMode::TorsionFree } else { EmbeddingMode::General };
        let subset: Vec<Word> = (1..=15)
            .filter(|i| mask & (1 << (i - 1)) != 0)
            .map(|i| universal_word(i, mode).unwrap())
            .collect();
        let g = SubgroupGraph::build(&subset);
        prop_assert_eq!(g.rank(), subset.len());
        prop_assert_eq!(g.contains(&universal_word(j, mode).unwrap()), mask & (1 << (j - 1)) != 0);
    }
}

#[test]
fn universal_families_are_free_bases() {
    for n in 1..=30 {
        for mode in [EmbeddingMode::General, EmbeddingMode::TorsionFree] {
            let gens = family(mode, n);
            let g = SubgroupGraph::build(&gens);
            assert_eq!(g.rank(), n as usize, "{mode} n={n}");
            assert_eq!(g.edges().len() + 1 - g.vertex_count(), n as usize);
        }
    }
    let ts: Vec<Word> = (1..=8).map(|i| stable_letter_word(i).unwrap()).collect();
    assert!(is_free_basis(&ts));
}

#[test]
fn non_bases() {
    let x = Word::from_letter(Letter::pos(1));
    let y = Word::from_letter(Letter::pos(2));
    assert!(!is_free_basis(&[x.clone(), x.pow(2)]));
    assert!(!is_free_basis(&[x.clone(), y.clone(), x.multiply(&y)]));
    assert!(!is_free_basis(&[]));
    let a1 = universal_word(1, EmbeddingMode::General).unwrap();
    assert!(!is_free_basis(&[a1.clone(), a1.pow(3)]));
}
