use std::collections::BTreeSet;

use linset_core::polyring::{count_r_stratum, count_reduced_closed_form};
use linset_core::{make_field, Field, FieldElement, PolyRing, PolyTuple, Polynomial, ProjectivePoint};
use num_bigint::BigUint;
use proptest::prelude::*;

fn gf(q: u32) -> Field {
    make_field(q, 1, 1, None).unwrap()
}

/// Every tuple within the bounds, reduced or not, zero tuple excluded.
fn all_tuples(ring: &PolyRing<'_>, bounds: &[usize]) -> Vec<PolyTuple> {
    let q = ring.q() as u64;
    let sizes: Vec<u64> = bounds.iter().map(|&t| q.pow(t as u32)).collect();
    let total: u64 = sizes.iter().product();
    (1..total)
        .map(|mut i| {
            let entries = sizes
                .iter()
                .map(|&s| {
                    let f = ring.from_index(i % s);
                    i /= s;
                    f
                })
                .collect();
            PolyTuple::new(entries, bounds.to_vec()).unwrap()
        })
        .collect()
}

/// Direct reading of the definition: first nonzero entry monic and no
/// nonconstant monic polynomial of small degree divides every entry.
fn reduced_by_definition(ring: &PolyRing<'_>, t: &PolyTuple) -> bool {
    let Some(first) = t.entries().iter().find(|f| !f.is_zero()) else {
        return false;
    };
    if !first.is_monic() {
        return false;
    }
    let max_deg = t.entries().iter().filter_map(|f| f.degree().finite()).min().unwrap_or(0);
    let q = ring.q() as u64;
    for d in 1..=max_deg {
        for low in 0..q.pow(d as u32) {
            let mut div = ring.from_index(low);
            div = ring.add(&div, &Polynomial::monomial(FieldElement::ONE, d));
            if t.entries().iter().all(|f| ring.div_rem(f, &div).unwrap().1.is_zero()) {
                return false;
            }
        }
    }
    true
}

#[test]
fn enumeration_matches_definition() {
    for q in [2, 3] {
        let f = gf(q);
        let ring = PolyRing::new(&f);
        for bounds in [vec![1, 1], vec![2, 2], vec![1, 3], vec![2, 3], vec![1, 2, 2], vec![2, 2, 1]] {
            let brute: Vec<PolyTuple> =
                all_tuples(&ring, &bounds).into_iter().filter(|t| reduced_by_definition(&ring, t)).collect();
            let listed: Vec<PolyTuple> = ring.enumerate_reduced(&bounds).collect();
            let a: BTreeSet<_> = brute.iter().cloned().collect();
            let b: BTreeSet<_> = listed.iter().cloned().collect();
            assert_eq!(b.len(), listed.len(), "duplicates for {bounds:?}");
            assert_eq!(a, b, "q={q} bounds={bounds:?}");
            assert_eq!(BigUint::from(listed.len()), count_reduced_closed_form(&bounds, q as u64));
        }
    }
}

#[test]
fn enumeration_order_is_lexicographic_most_significant_last() {
    let f = gf(3);
    let ring = PolyRing::new(&f);
    let keys: Vec<Vec<u64>> = ring
        .enumerate_reduced(&[2, 3])
        .map(|t| t.entries().iter().rev().map(|p| ring.index_of(p).unwrap()).collect())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn gcd_of_x2_plus_x_and_x_by_trial_division() {
    let f = gf(2);
    let ring = PolyRing::new(&f);
    let a = ring.from_ordinals(&[0, 1, 1]);
    let x = ring.x();
    let g = ring.gcd_monic(&a, &x).unwrap();
    assert_eq!(g, x);
    // X + 1 divides X^2 + X but not X
    let x1 = ring.from_ordinals(&[1, 1]);
    assert!(ring.div_rem(&a, &x1).unwrap().1.is_zero());
    assert!(!ring.div_rem(&x, &x1).unwrap().1.is_zero());
}

#[test]
fn stratum_counts_by_enumeration() {
    for q in [2u32, 3] {
        let f = gf(q);
        let ring = PolyRing::new(&f);
        for m in [vec![0usize], vec![1], vec![2], vec![1, 1], vec![0, 2], vec![2, 1]] {
            for n in 0..=3 {
                let mut bounds = vec![n + 1];
                bounds.extend(m.iter().map(|&x| x + 1));
                let brute = all_tuples(&ring, &bounds)
                    .into_iter()
                    .filter(|t| t.entries()[0].degree().finite() == Some(n))
                    .filter(|t| reduced_by_definition(&ring, t))
                    .count();
                assert_eq!(BigUint::from(brute), count_r_stratum(n, &m, q as u64), "q={q} n={n} m={m:?}");
            }
        }
    }
}

/// Size of the `f_1 = 0` part, taken recursively from the closed form of the
/// remaining bounds.
fn partition_identity_holds(bounds: &[usize], q: u64) -> bool {
    let m: Vec<usize> = bounds[1..].iter().map(|&t| t - 1).collect();
    let strata: BigUint = (0..bounds[0]).map(|n| count_r_stratum(n, &m, q)).sum();
    let zero_first = count_reduced_closed_form(&bounds[1..], q);
    strata + zero_first == count_reduced_closed_form(bounds, q)
}

#[test]
fn strata_partition_the_reduced_tuples() {
    for q in [2u64, 3, 4, 5, 7] {
        for a in 1..=5 {
            for b in a..=5 {
                assert!(partition_identity_holds(&[a, b], q));
                for c in b..=5 {
                    assert!(partition_identity_holds(&[a, b, c], q));
                }
            }
        }
    }
}

/// Distinct reduced tuples evaluate to distinct points whenever every pair
/// of bounds sums to at most `s + 1`.
#[test]
fn reduced_tuples_give_distinct_points() {
    for (q, h) in [(2u32, 4u32), (2, 5), (3, 3), (3, 4)] {
        let f = make_field(q, 1, h, None).unwrap();
        let alpha = f.select_alpha(h).unwrap();
        let ring = PolyRing::new(&f);
        for bounds in [vec![1, 2], vec![2, 2], vec![2, 3], vec![1, 1, 2], vec![2, 2, 2]] {
            let mut sorted = bounds.clone();
            sorted.sort();
            let n = sorted.len();
            if sorted[n - 2] + sorted[n - 1] > h as usize + 1 {
                continue;
            }
            let mut seen = BTreeSet::new();
            for t in ring.enumerate_reduced(&bounds) {
                let v = t.entries().iter().map(|p| ring.eval(p, alpha)).collect();
                assert!(seen.insert(ProjectivePoint::new(&f, v).unwrap()), "q={q} h={h} {bounds:?}");
            }
        }
    }
}

fn poly_strategy(q: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, 0..=max_len)
}

proptest! {
    #[test]
    fn gcd_divides_and_cofactors_are_coprime(a in poly_strategy(3, 6), b in poly_strategy(3, 6)) {
        let f = gf(3);
        let ring = PolyRing::new(&f);
        let (a, b) = (ring.from_ordinals(&a), ring.from_ordinals(&b));
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let g = ring.gcd_monic(&a, &b).unwrap();
        prop_assert!(g.is_monic());
        let (qa, ra) = ring.div_rem(&a, &g).unwrap();
        let (qb, rb) = ring.div_rem(&b, &g).unwrap();
        prop_assert!(ra.is_zero() && rb.is_zero());
        prop_assert_eq!(ring.gcd_monic(&qa, &qb).unwrap(), Polynomial::one());
        prop_assert_eq!(ring.mul(&qa, &g), a);
    }

    #[test]
    fn degree_of_product_adds(a in poly_strategy(2, 5), b in poly_strategy(2, 5)) {
        let f = gf(2);
        let ring = PolyRing::new(&f);
        let (a, b) = (ring.from_ordinals(&a), ring.from_ordinals(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let d = |p: &Polynomial| p.degree().finite().unwrap();
        prop_assert_eq!(d(&ring.mul(&a, &b)), d(&a) + d(&b));
    }

    #[test]
    fn reduce_is_idempotent_and_keeps_the_point(
        a in poly_strategy(3, 3), b in poly_strategy(3, 3), c in poly_strategy(3, 3)
    ) {
        let f = make_field(3, 1, 6, None).unwrap();
        let alpha = f.select_alpha(6).unwrap();
        let ring = PolyRing::new(&f);
        let entries = vec![ring.from_ordinals(&a), ring.from_ordinals(&b), ring.from_ordinals(&c)];
        prop_assume!(entries.iter().any(|p| !p.is_zero()));
        let t = PolyTuple::new(entries, vec![4, 4, 4]).unwrap();
        let r = ring.reduce_tuple(&t).unwrap();
        prop_assert!(ring.is_reduced(&r));
        prop_assert_eq!(ring.reduce_tuple(&r).unwrap(), r.clone());
        let point = |t: &PolyTuple| {
            ProjectivePoint::new(&f, t.entries().iter().map(|p| ring.eval(p, alpha)).collect()).unwrap()
        };
        prop_assert_eq!(point(&t), point(&r));
    }

    #[test]
    fn index_round_trip(i in 0u64..100_000) {
        let f = make_field(3, 1, 2, None).unwrap();
        let ring = PolyRing::new(&f);
        prop_assert_eq!(ring.index_of(&ring.from_index(i)), Some(i));
    }
}
