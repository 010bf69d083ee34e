use divlab::bounds::{binomial, degree_qk_formula, div_qk_formula, size_qk};
use divlab::constructions::{build_fk, build_pk, build_qk, circular_shift, seed_lk, shift_orbit};
use divlab::search::{hillclimb_diversity, HillclimbConfig};
use divlab::{diversity, is_intersecting, is_regular, BigCount, Budget, Regularity};
use proptest::prelude::*;

#[test]
fn seed_orbits_are_full_for_all_supported_k() {
    for k in 3..=20 {
        let seed = seed_lk(k).unwrap();
        assert_eq!(seed.len(), k);
        let orbit = shift_orbit(seed).orbit;
        assert_eq!(orbit.len() as u32, 2 * k + 1, "k = {k}");
        assert!(orbit.members().all(|m| m.len() == k));
    }
}

#[test]
fn fk_is_regular_intersecting_through_k_20() {
    for k in 3..=20 {
        let f = build_fk(k).unwrap();
        assert!(is_intersecting(&f).holds());
        assert_eq!(is_regular(&f).unwrap(), Regularity::Regular { degree: k as u64 });
    }
}

#[test]
fn pk_matches_formula_for_small_k() {
    let budget = Budget::default();
    for k in 3..=7u32 {
        let p = build_pk(k, &budget).unwrap();
        assert_eq!(p.len() as u64, 1 << (2 * k));
        assert!(is_intersecting(&p).holds());
        let d = diversity(&p).unwrap().diversity;
        assert_eq!(BigCount::from(d), div_qk_formula::<BigCount>(k).unwrap() + 1);
        // sigma(P_k) = k + sigma(Q_k) - (k + 1)
        let sigma = degree_qk_formula::<i64>(k).unwrap() - 1;
        assert_eq!(is_regular(&p).unwrap().degree(), Some(sigma as u64));
    }
}

#[test]
fn qk_formula_cross_checks_enumeration() {
    let budget = Budget::default();
    for k in 1..=6u32 {
        let q = build_qk(k, &budget).unwrap();
        assert_eq!(q.len() as i64, size_qk::<i64>(k).unwrap());
        let d = diversity(&q).unwrap();
        assert_eq!(d.diversity as i64, div_qk_formula::<i64>(k).unwrap());
        assert_eq!(d.max_degree as i64, degree_qk_formula::<i64>(k).unwrap());
    }
}

#[test]
fn binomial_matches_pascal_triangle() {
    let mut row = vec![BigCount::from(1)];
    for a in 0..=64i64 {
        for b in 0..=a {
            assert_eq!(binomial::<BigCount>(a, b).unwrap(), row[b as usize], "C({a},{b})");
        }
        let mut next = vec![BigCount::from(1); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
}

#[test]
fn div_qk_equals_size_minus_degree() {
    for k in 1..=30u32 {
        let size = size_qk::<BigCount>(k).unwrap();
        let degree = degree_qk_formula::<BigCount>(k).unwrap();
        assert_eq!(div_qk_formula::<BigCount>(k).unwrap(), size - degree);
    }
}

#[test]
fn hillclimb_is_reproducible() {
    let q4 = build_qk(4, &Budget::default()).unwrap();
    let cfg = HillclimbConfig {
        max_steps: 3000,
        ..HillclimbConfig::default()
    };
    let a = hillclimb_diversity(9, &q4, 42, &cfg).unwrap();
    let b = hillclimb_diversity(9, &q4, 42, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.best_diversity >= div_qk_formula::<i64>(4).unwrap() as u64);
    assert!(is_intersecting(&a.best_family).holds());
}

proptest! {
    #[test]
    fn orbits_are_shift_closed(bits in 0u64..(1 << 11)) {
        let seed = divlab::SubsetWord::from_bits(bits, 11).unwrap();
        let orbit = shift_orbit(seed).orbit;
        prop_assert!(orbit.contains(seed));
        prop_assert_eq!(11 % orbit.len(), 0);
        for m in orbit.members() {
            prop_assert!(orbit.contains(circular_shift(m)));
            prop_assert_eq!(circular_shift(m).len(), m.len());
        }
    }
}
