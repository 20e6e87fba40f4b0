use lassalle_core::chord::{crosses, crosses_by_quartets, Block};
use lassalle_core::engine::{canonicalize, evaluate, gaps_of, GapMultiset, MemoCache};
use lassalle_core::sequence::{is_log_concave, is_symmetric, is_unimodal};
use lassalle_core::stacksort::{stack_sort, Permutation};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Two disjoint nonempty blocks inside [0, n).
fn disjoint_blocks() -> impl Strategy<Value = (Block, Block)> {
    (2usize..14)
        .prop_flat_map(|n| proptest::collection::vec(0u8..3, n))
        .prop_filter_map("both blocks nonempty", |labels| {
            let pick = |t| {
                labels
                    .iter()
                    .enumerate()
                    .filter(|&(_, &l)| l == t)
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>()
            };
            Some((Block::new(pick(0)).ok()?, Block::new(pick(1)).ok()?))
        })
}

fn valid_gaps() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..6, 1..6).prop_map(|mut g| {
        let n: u32 = g.iter().sum();
        if (n - g.len() as u32) % 2 == 1 {
            g[0] += 1;
        }
        g
    })
}

proptest! {
    #[test]
    fn crossing_is_symmetric_and_matches_quartets((a, b) in disjoint_blocks()) {
        prop_assert_eq!(crosses(&a, &b), crosses(&b, &a));
        prop_assert_eq!(crosses(&a, &b), crosses_by_quartets(&a, &b));
        if a.len() == 1 {
            prop_assert!(!crosses(&a, &b));
        }
    }

    #[test]
    fn canonicalize_is_idempotent(gaps in valid_gaps()) {
        let key = canonicalize(&GapMultiset::new(gaps).unwrap());
        let again = canonicalize(&GapMultiset::new(key.gaps().to_vec()).unwrap());
        prop_assert_eq!(&key, &again);
        prop_assert!(key.m() == 1 || key.gaps().iter().all(|&g| g >= 2));
    }

    #[test]
    fn gap_order_does_not_matter(gaps in valid_gaps(), seed in any::<u64>()) {
        let mut shuffled = gaps.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            shuffled.reverse();
        }
        prop_assert_eq!(
            GapMultiset::new(gaps).unwrap(),
            GapMultiset::new(shuffled).unwrap()
        );
    }

    #[test]
    fn rotation_preserves_gaps(gaps in valid_gaps(), r in 0usize..40) {
        let n: usize = gaps.iter().map(|&g| g as usize).sum();
        let mut elements = vec![0usize];
        for &g in &gaps[..gaps.len() - 1] {
            elements.push(elements.last().unwrap() + g as usize);
        }
        let root = Block::new(elements.clone()).unwrap();
        let rotated = Block::new(elements.iter().map(|x| (x + r) % n).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(gaps_of(&root, n).unwrap(), gaps_of(&rotated, n).unwrap());
    }

    #[test]
    fn cache_round_trips(gap_lists in proptest::collection::vec(valid_gaps(), 0..12)) {
        let cache = MemoCache::new();
        for gaps in gap_lists {
            evaluate(&canonicalize(&GapMultiset::new(gaps).unwrap()), &cache);
        }
        let mut buf = Vec::new();
        cache.save(&mut buf).unwrap();
        prop_assert_eq!(MemoCache::load(&buf[..]).unwrap(), cache);
    }

    #[test]
    fn verdicts_are_deterministic(row in proptest::collection::vec(0u64..20, 1..12)) {
        let row: Vec<BigUint> = row.into_iter().map(BigUint::from).collect();
        prop_assert_eq!(is_symmetric(&row), is_symmetric(&row));
        prop_assert_eq!(is_unimodal(&row), is_unimodal(&row));
        prop_assert_eq!(is_log_concave(&row), is_log_concave(&row));
        // Positive log-concave sequences are unimodal.
        if row.iter().all(|x| *x > BigUint::from(0u32)) && is_log_concave(&row).holds() {
            prop_assert!(is_unimodal(&row).holds());
        }
    }

    #[test]
    fn unimodal_witness_is_a_valley(row in proptest::collection::vec(0u64..6, 1..10)) {
        let row: Vec<BigUint> = row.into_iter().map(BigUint::from).collect();
        if let Some(w) = is_unimodal(&row).witness() {
            let [p, q, r] = w.triple.unwrap();
            prop_assert!(p < q && q < r);
            prop_assert!(row[p - 1] > row[q - 1] && row[q - 1] < row[r - 1]);
        }
    }

    #[test]
    fn stack_sort_yields_a_permutation_ending_in_max(
        perm in (1usize..10).prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle())
    ) {
        let n = perm.len() as u8;
        let sorted = stack_sort(&Permutation::new(perm).unwrap());
        prop_assert!(Permutation::new(sorted.entries().to_vec()).is_ok());
        prop_assert_eq!(*sorted.entries().last().unwrap(), n);
    }
}
