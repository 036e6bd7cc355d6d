use flag_orbits::oracle::{
    count_orbits_ff, krull_schmidt_check, orbit_representatives_ff, point_count, run_oracle, OracleConfig,
    OrbitMode, PrimeField, Row,
};
use flag_orbits::orbits::{count_orbits, enumerate_orbits};
use flag_orbits::verify::ORACLE_SUITE;
use flag_orbits::DimVector;
use proptest::prelude::*;

fn dv(s: &str) -> DimVector {
    s.parse().unwrap()
}

// Counts fixed from the first oracle run over F_2, before comparing
// against the decomposition search.
const FROZEN_F2: [(&str, u64); 12] = [
    ("1|1|1,0", 1),
    ("2|1,1|1,1", 1),
    ("1,1|1,1|1,1", 3),
    ("1,1,1|1,2|1,1,1", 13),
    ("2,1|1,2|2,1", 3),
    ("1,1,1,1|2,2|1,1,2", 47),
    ("2,2|2,2|2,2", 6),
    ("1,1,1|1,1,1|1,2", 13),
    ("2,1|1,1,1|1,2", 5),
    ("3|2,1|1,2", 1),
    ("2,2|1,1,2|1,1,2", 16),
    ("1,1,1,1|1,3|1,1,1,1", 73),
];

#[test]
fn frozen_counts_cover_the_suite() {
    let frozen: Vec<&str> = FROZEN_F2.iter().map(|(s, _)| *s).collect();
    assert_eq!(frozen, ORACLE_SUITE.to_vec());
}

#[test]
fn small_suite_matches_frozen_counts_in_both_modes() {
    for (s, n) in FROZEN_F2.iter().filter(|(s, _)| dv(s).weight() <= 3) {
        let d = dv(s);
        assert_eq!(count_orbits_ff(&d, 2, OrbitMode::Jl).unwrap(), *n, "{s}");
        assert_eq!(count_orbits_ff(&d, 2, OrbitMode::Dl).unwrap(), *n, "{s}");
        assert_eq!(count_orbits(&d).unwrap(), *n as u128, "{s}");
    }
}

#[test]
fn f5_counts_for_two_dimensional_vectors() {
    for s in ["2|1,1|1,1", "1,1|1,1|1,1", "1,1|0,2|2,0"] {
        let d = dv(s);
        let expected = count_orbits(&d).unwrap() as u64;
        assert_eq!(count_orbits_ff(&d, 5, OrbitMode::Jl).unwrap(), expected, "{s}");
        assert_eq!(count_orbits_ff(&d, 5, OrbitMode::Dl).unwrap(), expected, "{s}");
    }
}

#[test]
fn listed_point_counts_match_closed_form() {
    for s in ["1,1,1|1,2|1,1,1", "2,2|1,1,2|1,1,2", "1,2|2,1|1,2"] {
        let d = dv(s);
        for mode in [OrbitMode::Jl, OrbitMode::Dl] {
            let run = run_oracle(&d, 2, mode, OracleConfig::default()).unwrap();
            assert_eq!(run.points as u128, point_count(&d, 2, mode), "{s} {mode}");
        }
    }
}

#[test]
fn every_representative_splits_into_a_listed_family() {
    for s in ["2,1|1,2|2,1", "2,2|2,2|2,2", "2,1|1,1,1|1,2"] {
        let d = dv(s);
        let families = enumerate_orbits(&d).unwrap();
        let mut seen: Vec<_> = orbit_representatives_ff(&d, 2)
            .unwrap()
            .iter()
            .map(|c| krull_schmidt_check(c).unwrap())
            .collect();
        seen.sort();
        assert_eq!(seen, families, "{s}");
    }
}

fn random_invertible(p: u32, n: usize, seed: &[u32]) -> Option<Vec<Row>> {
    let f = PrimeField::new(p).unwrap();
    let g: Vec<Row> = (0..n).map(|i| (0..n).map(|j| seed[i * n + j] % p).collect()).collect();
    (f.rank(&g) == n).then_some(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn krull_schmidt_is_constant_on_orbits(
        which in 0usize..4,
        seed in proptest::collection::vec(0u32..6, 9),
    ) {
        let (s, p) = [("1,1|1,1|1,1", 3), ("2,1|1,2|2,1", 2), ("1,1,1|1,1,1|1,2", 2), ("2,1|1,1,1|1,2", 3)][which];
        let d = dv(s);
        let n = d.weight() as usize;
        let g = random_invertible(p, n, &seed);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        for rep in orbit_representatives_ff(&d, p).unwrap() {
            let moved = rep.transform(&g).unwrap();
            prop_assert_eq!(krull_schmidt_check(&moved).unwrap(), krull_schmidt_check(&rep).unwrap());
        }
    }
}
