use std::collections::BTreeSet;

use proptest::prelude::*;

use qimg::esop::{build_tree, merge_leaves, minimize, minimize_with_stats, rotate, traverse, Cube, EsopCover, Trit};
use qimg::verify::{esop_eval, truth_table, Assignment};

fn trit() -> impl Strategy<Value = Trit> {
    prop_oneof![Just(Trit::Zero), Just(Trit::DontCare), Just(Trit::One)]
}

/// Duplicate-free covers over 1..=8 variables.
fn cover() -> impl Strategy<Value = EsopCover> {
    (1usize..=8).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(trit(), n), 0..40).prop_map(move |rows| {
            let set: BTreeSet<Cube> = rows.iter().map(|r| Cube::from_trits(r).unwrap()).collect();
            EsopCover::new(n, set.into_iter().collect()).unwrap()
        })
    })
}

/// Covers made only of minterms, like a bitplane.
fn minterm_cover() -> impl Strategy<Value = EsopCover> {
    (1usize..=8).prop_flat_map(|n| {
        prop::collection::btree_set(0u64..(1 << n), 0..=(1usize << n))
            .prop_map(move |set| EsopCover::new(n, set.into_iter().map(|i| Cube::minterm(n, i)).collect()).unwrap())
    })
}

fn same_function(a: &EsopCover, b: &EsopCover) -> bool {
    let n = a.num_vars();
    (0..1u64 << n).all(|i| {
        let x = Assignment::from_index(n, i);
        esop_eval(a, &x).unwrap() == esop_eval(b, &x).unwrap()
    })
}

fn cube_set(cubes: &[Cube]) -> BTreeSet<Cube> {
    cubes.iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn minimize_preserves_function(c in cover()) {
        let m = minimize(&c);
        prop_assert!(same_function(&c, &m), "{} vs {}", c, m);
    }

    #[test]
    fn minimize_preserves_minterm_functions(c in minterm_cover()) {
        let m = minimize(&c);
        prop_assert!(same_function(&c, &m));
        prop_assert!(m.len() <= c.len());
    }

    #[test]
    fn minimize_never_grows(c in cover()) {
        let (m, stats) = minimize_with_stats(&c);
        prop_assert!(m.len() <= c.len());
        prop_assert_eq!(c.len() - m.len(), stats.merges);
        prop_assert_eq!(stats.collisions, 0);
        prop_assert_eq!(stats.rotations, c.num_vars());
    }

    #[test]
    fn rerun_does_not_grow(c in cover()) {
        let once = minimize(&c);
        let twice = minimize(&once);
        prop_assert!(twice.len() <= once.len());
        prop_assert!(same_function(&once, &twice));
    }

    #[test]
    fn minimize_is_deterministic(c in cover()) {
        prop_assert_eq!(minimize(&c), minimize(&c));
    }

    #[test]
    fn minimize_output_is_sorted_and_distinct(c in cover()) {
        let m = minimize(&c);
        let mut sorted = m.cubes().to_vec();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted, m.cubes().to_vec());
    }

    #[test]
    fn tree_round_trip(c in cover()) {
        let t = build_tree(&c).unwrap();
        prop_assert_eq!(t.cube_count(), c.len());
        let back = traverse(&t).unwrap();
        prop_assert_eq!(cube_set(back.cubes()), cube_set(c.cubes()));
    }

    #[test]
    fn merge_leaves_count_matches(c in cover()) {
        let mut t = build_tree(&c).unwrap();
        let before = t.cube_count();
        let merges = merge_leaves(&mut t);
        prop_assert_eq!(t.cube_count(), before - merges);
        let after = traverse(&t).unwrap();
        prop_assert!(same_function(&c, &after));
    }

    #[test]
    fn rotation_is_cyclic_shift(c in cover()) {
        let t = build_tree(&c).unwrap();
        let r = rotate(t);
        let expected: BTreeSet<Cube> = c.cubes().iter().map(|k| k.rotate_left()).collect();
        prop_assert_eq!(cube_set(&r.paths()), expected);
        prop_assert_eq!(r.cube_count(), c.len());
        prop_assert_eq!(r.collisions(), 0);
    }

    #[test]
    fn full_rotation_cycle_restores(c in cover()) {
        let n = c.num_vars();
        let mut t = build_tree(&c).unwrap();
        for k in 1..=n {
            t = rotate(t);
            let order: Vec<usize> = (0..n).map(|l| (l + k) % n).collect();
            prop_assert_eq!(t.var_order(), &order[..]);
        }
        let restored = traverse(&t).unwrap();
        let original = traverse(&build_tree(&c).unwrap()).unwrap();
        prop_assert_eq!(restored.cubes(), original.cubes());
    }

    #[test]
    fn truth_table_agrees_with_eval(c in cover()) {
        let n = c.num_vars();
        let t = truth_table(&c);
        for i in 0..1u64 << n {
            prop_assert_eq!(t[i as usize], esop_eval(&c, &Assignment::from_index(n, i)).unwrap());
        }
    }
}

#[test]
fn all_minterms_collapse_to_universe() {
    for n in 1..=10 {
        let c = EsopCover::new(n, (0..1u64 << n).map(|i| Cube::minterm(n, i)).collect()).unwrap();
        let m = minimize(&c);
        assert_eq!(m.cubes(), &[Cube::universe(n)], "n = {n}");
    }
}

#[test]
fn variable_independent_of_low_bits() {
    // f depends only on the first two of six variables: expect DC on the rest.
    let n = 6;
    let cubes = (0..1u64 << n)
        .filter(|i| matches!(i >> 4, 0b01 | 0b10))
        .map(|i| Cube::minterm(n, i))
        .collect();
    let m = minimize(&EsopCover::new(n, cubes).unwrap());
    assert_eq!(m.cube_strings(), ["01----", "10----"]);
}
