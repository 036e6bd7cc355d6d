use flag_orbits::catalog::{catalog_member, semantic_q1_finite};
use flag_orbits::finiteness::{is_finite_exhaustive, is_finite_pattern, summands};
use flag_orbits::orbits::{count_orbits, dl_to_jl, enumerate_orbits, jl_to_dl};
use flag_orbits::{DimVector, NormalizedVector};
use proptest::prelude::*;

/// Distributes `n` units over `slots` parts.
fn spread(n: u32, slots: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..slots, n as usize).prop_map(move |picks| {
        let mut parts = vec![0u32; slots];
        for i in picks {
            parts[i] += 1;
        }
        parts
    })
}

fn heads(n: u32, slots: usize) -> BoxedStrategy<Vec<u32>> {
    if slots == 0 {
        Just(Vec::new()).boxed()
    } else {
        spread(n, slots).boxed()
    }
}

/// Valid vectors with `|a| <= max_n` and every chain of length at most 4.
fn valid(max_n: u32) -> impl Strategy<Value = DimVector> {
    (0..=max_n, 1usize..=4, 0usize..=3, 0usize..=3)
        .prop_filter("empty heads need weight zero", |&(n, _, pb, qc)| n == 0 || pb + qc > 0)
        .prop_flat_map(|(n, r, pb, qc)| {
            // a zero-length head must carry zero weight
            let lo = if qc == 0 { n } else { 0 };
            let hi = if pb == 0 { 0 } else { n };
            (Just(n), Just(r), Just(pb), Just(qc), lo..=hi)
        })
        .prop_flat_map(|(n, r, pb, qc, x)| (spread(n, r), heads(x, pb), heads(n - x, qc)))
        .prop_map(|(a, b, c)| DimVector::from_heads(a, b, c).unwrap())
}

fn double_norm(d: &DimVector) -> i128 {
    let sq = |v: &[u32]| v.iter().map(|&p| (p as i128) * (p as i128)).sum::<i128>();
    sq(d.a().parts()) + sq(d.b().parts()) + sq(d.c().parts()) - (d.weight() as i128).pow(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tits_form_is_an_integer_half(d in valid(8)) {
        let twice = double_norm(&d);
        prop_assert_eq!(twice % 2, 0);
        prop_assert_eq!(d.tits_form() as i128, twice / 2);
    }

    #[test]
    fn tits_form_matches_head_expression(d in valid(8)) {
        let sq = |v: &[u32]| v.iter().map(|&p| (p as i64) * (p as i64)).sum::<i64>();
        let twice = sq(d.a().parts()) + sq(d.b().head()) + sq(d.c().head()) - 2 * (d.x() * d.y()) as i64;
        prop_assert_eq!(2 * d.tits_form(), twice);
    }

    #[test]
    fn sum_and_difference_invert(d in valid(6), pick in any::<usize>()) {
        let all: Vec<DimVector> = summands(&d).collect();
        prop_assume!(!all.is_empty());
        let e = &all[pick % all.len()];
        let rest = d.checked_sub(e).unwrap().unwrap();
        prop_assert_eq!(rest.weight() + e.weight(), d.weight());
        prop_assert_eq!(rest.checked_add(e).unwrap(), d.clone());
    }

    #[test]
    fn normalization_is_idempotent(d in valid(8)) {
        let n = d.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.as_dim().normalize(), n.clone());
        prop_assert_eq!(n.tits_form(), d.tits_form());
        prop_assert_eq!(n.weight(), d.weight());
    }

    #[test]
    fn encodings_round_trip(d in valid(8)) {
        prop_assert_eq!(d.to_text().parse::<DimVector>().unwrap(), d.clone());
        prop_assert_eq!(DimVector::from_json(&d.to_json()).unwrap(), d.clone());
    }

    #[test]
    fn mirror_preserves_everything(d in valid(7)) {
        let m = d.mirror();
        prop_assert_eq!(m.mirror(), d.clone());
        prop_assert_eq!(m.tits_form(), d.tits_form());
        prop_assert_eq!(is_finite_pattern(&m).finite, is_finite_pattern(&d).finite);
    }

    #[test]
    fn engines_agree(d in valid(7)) {
        prop_assert_eq!(is_finite_pattern(&d).finite, is_finite_exhaustive(&d).unwrap());
    }

    #[test]
    fn pattern_witness_is_a_zero_summand(d in valid(9)) {
        let v = is_finite_pattern(&d);
        if let Some(w) = v.witness {
            prop_assert!(!v.finite);
            prop_assert!(w.le(&d));
            prop_assert_eq!(w.tits_form(), 0);
            prop_assert!(d.checked_sub(&w).unwrap().is_some());
        }
    }

    #[test]
    fn infinite_summands_make_infinite_vectors(d in valid(6)) {
        if d.weight() > 0 && summands(&d).any(|e| !is_finite_pattern(&e).finite) {
            prop_assert!(!is_finite_pattern(&d).finite);
        }
    }

    #[test]
    fn catalog_is_mirror_closed(d in valid(9)) {
        let n = d.normalize();
        prop_assert_eq!(catalog_member(&n).is_some(), catalog_member(&n.mirror()).is_some());
    }

    #[test]
    fn catalog_members_are_semantic(d in valid(9)) {
        let n: NormalizedVector = d.normalize();
        prop_assert_eq!(catalog_member(&n).is_some(), semantic_q1_finite(&n));
    }

    #[test]
    fn double_flag_round_trip(d in valid(10)) {
        prop_assert_eq!(dl_to_jl(&jl_to_dl(&d)).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn families_decompose_their_vector(d in valid(5)) {
        prop_assume!(d.weight() > 0 && is_finite_pattern(&d).finite);
        let families = enumerate_orbits(&d).unwrap();
        prop_assert!(!families.is_empty());
        prop_assert_eq!(families.len() as u128, count_orbits(&d).unwrap());
        for f in &families {
            prop_assert_eq!(f.total().unwrap().unwrap(), d.clone());
            for e in f.entries() {
                prop_assert_eq!(e.vector.shape(), d.shape());
                prop_assert!(semantic_q1_finite(&e.vector));
            }
        }
    }
}
