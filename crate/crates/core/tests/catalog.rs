use flag_orbits::catalog::{catalog_enumerate, catalog_member, families};
use flag_orbits::finiteness::{forbidden_patterns, PatternEngine};
use flag_orbits::universe::Bounds;
use flag_orbits::verify::check_catalog_equivalence;
use flag_orbits::{DimVector, NormalizedVector};

fn nv(s: &str) -> NormalizedVector {
    s.parse::<DimVector>().unwrap().normalize()
}

const SMALL: Bounds = Bounds {
    max_weight: 7,
    max_r: 8,
    max_p: 4,
    max_q: 8,
};

#[test]
fn equivalence_holds_on_small_universe() {
    assert!(check_catalog_equivalence(SMALL, &PatternEngine::default()).passed);
}

#[test]
fn mutated_pattern_list_breaks_equivalence() {
    // swap the weight-4 pattern for a Q = 1 catalog vector
    let mut patterns: Vec<NormalizedVector> = forbidden_patterns().iter().map(|f| f.pattern.clone()).collect();
    let slot = patterns.iter().position(|p| p.to_text() == "1,1,1,1|1,1,2|1,1,2").unwrap();
    patterns[slot] = nv("1,1,1|1,1,1|1,2");
    let mutated = PatternEngine::with_patterns(patterns);
    let result = check_catalog_equivalence(SMALL, &mutated);
    assert!(!result.passed, "{}", result.line());
}

#[test]
fn list_shape() {
    assert_eq!(families().len(), 26);
    // sporadic entries, both orders
    let all = catalog_enumerate(10);
    for s in ["2,2,2|1,1,4|1,1,1,1,2", "4,4,2|2,2,6|1,1,1,1,1,1,4", "1,1,1,1,1,1|2,4|2,2,2"] {
        assert!(all.contains_key(&nv(s)), "{s}");
        assert!(all.contains_key(&nv(s).mirror()), "{s} mirrored");
    }
    assert!(all.keys().all(|v| v.tits_form() == 1));
}

#[test]
fn family_tags() {
    let t = catalog_member(&nv("2,2,1|1,1,3|1,1,1,2")).unwrap();
    assert_eq!((t.family, t.x), ("F5", Some(2)));
    let t = catalog_member(&nv("4,4,4|3,1,8|1,1,1,1,1,1,1,1,4")).unwrap();
    assert_eq!((t.family, t.x), ("F6", Some(4)));
}
