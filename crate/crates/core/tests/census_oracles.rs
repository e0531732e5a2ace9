use num_bigint::BigUint;
use proptest::prelude::*;
use sumfree_core::group::groups_of_order;
use sumfree_core::{
    count_sumfree, enumerate_groups, is_sumfree, max_sumfree, sigma, AbelianGroup, Limits,
    Rational, Subset,
};

/// Sum-free test straight from the definition, on raw masks.
fn naive_sumfree(g: &AbelianGroup, mask: u64) -> bool {
    let n = g.len();
    let has = |x: usize| mask >> x & 1 == 1;
    (0..n).all(|x| !has(x) || (0..n).all(|y| !has(y) || !has(g.add_ranks(x, y))))
}

#[test]
fn count_matches_subset_filtering() {
    for g in enumerate_groups(16) {
        let n = g.len();
        let naive = (0u64..1 << n).filter(|&m| naive_sumfree(&g, m)).count();
        let fast = count_sumfree(&g, Limits::default()).unwrap();
        assert_eq!(fast, BigUint::from(naive), "{g}");
    }
}

#[test]
fn max_matches_subset_filtering() {
    for g in enumerate_groups(16) {
        let n = g.len();
        let best = (0u64..1 << n)
            .filter(|&m| naive_sumfree(&g, m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        let (size, witness) = max_sumfree(&g, Limits::default()).unwrap();
        assert_eq!(size, best, "{g}");
        assert!(is_sumfree(&witness));
        assert_eq!(witness.len(), size);
    }
}

#[test]
fn max_matches_density_formula_to_36() {
    for g in enumerate_groups(36).skip(1) {
        let (size, _) = max_sumfree(&g, Limits::default()).unwrap();
        let expect = g.mu().unwrap() * Rational::from_integer(g.order() as i128);
        assert_eq!(Rational::from_integer(size as i128), expect, "{g}");
    }
}

#[test]
fn sigma_dominates_mu_to_30() {
    for g in enumerate_groups(30).skip(1) {
        let s = sigma(&g, Limits::default()).unwrap();
        let mu = sumfree_core::to_f64(g.mu().unwrap());
        assert!(s >= mu - 1e-12, "{g}: sigma {s} < mu {mu}");
    }
}

#[test]
fn witness_is_deterministic() {
    let g = AbelianGroup::cyclic(10).unwrap();
    let a = max_sumfree(&g, Limits::default()).unwrap().1;
    let b = max_sumfree(&g, Limits::default()).unwrap().1;
    assert_eq!(a, b);
    // only the odd residues reach 5 in Z10
    assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 3, 5, 7, 9]);
}

fn any_group() -> impl Strategy<Value = AbelianGroup> {
    (2u64..=40).prop_flat_map(|n| {
        let gs = groups_of_order(n);
        (0..gs.len()).prop_map(move |i| gs[i].clone())
    })
}

proptest! {
    #[test]
    fn classify_ignores_factor_order(mut factors in prop::collection::vec(2u64..12, 1..4), seed in any::<u64>()) {
        let a = AbelianGroup::new(&factors).unwrap();
        let len = factors.len();
        factors.rotate_left((seed as usize) % len);
        factors.reverse();
        let b = AbelianGroup::new(&factors).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.classify(), b.classify());
    }

    #[test]
    fn removing_an_element_keeps_sumfree(g in any_group(), mask in any::<u64>(), pick in any::<usize>()) {
        // grow a sum-free set greedily from the mask, then drop one element
        let mut s = Subset::empty(&g);
        for x in (0..g.len()).filter(|&x| mask >> (x % 64) & 1 == 1) {
            s.insert(x);
            if !is_sumfree(&s) {
                s.remove(x);
            }
        }
        prop_assert!(is_sumfree(&s));
        let members: Vec<usize> = s.iter().collect();
        if !members.is_empty() {
            s.remove(members[pick % members.len()]);
            prop_assert!(is_sumfree(&s));
        }
    }
}
