//! Cross-module integration checks: the exhaustive enumeration oracle, file
//! round trips over the whole catalog, canonical-form stability under random
//! relabelings, and the end-to-end pipeline on groups where it closes.

use grpmat::encoder::{build_b, canonical_b, parse_b, serialize_b, BuildMode};
use grpmat::groups::{
    brute_iso, catalog, enumerate_groups, exhaustive_tables, parse_group, permutations_fixing_first,
    CATALOG_NAMES,
};
use grpmat::solver::{psi_check, solution_group};

// Every identity-first group table of order <= 6 is isomorphic to exactly
// one enumeration member, and every member shows up.
#[test]
fn exhaustive_oracle_matches_enumeration_through_order_six() {
    for n in 1..=6usize {
        let tables = exhaustive_tables(n).unwrap();
        let reps = enumerate_groups(n).unwrap();
        let mut class_counts = vec![0usize; reps.len()];
        for t in &tables {
            let matches: Vec<usize> = reps
                .iter()
                .enumerate()
                .filter(|(_, r)| brute_iso(t, r).is_some())
                .map(|(i, _)| i)
                .collect();
            assert_eq!(matches.len(), 1, "order {n}: ambiguous class");
            class_counts[matches[0]] += 1;
        }
        assert!(class_counts.iter().all(|&c| c > 0), "order {n}: missing class");
        // identity-first table counts per class: (n-1)! / |Aut|
        if n == 6 {
            assert_eq!(tables.len(), 80);
            assert_eq!(class_counts, vec![60, 20]); // Z6, S3
        }
    }
}

#[test]
fn group_and_matrix_files_roundtrip_for_catalog() {
    for name in CATALOG_NAMES {
        let g = catalog(name).unwrap();
        assert_eq!(parse_group(&g.to_json()).unwrap(), g, "{name} group file");
        let b = build_b(&g, BuildMode::Auto).unwrap();
        assert_eq!(parse_b(&serialize_b(&b)).unwrap(), b, "{name} matrix file");
    }
}

#[test]
fn canonical_form_is_relabeling_invariant_for_sampled_orderings() {
    for name in ["Z4", "V4", "S3"] {
        let g = catalog(name).unwrap();
        let (canon, _) = canonical_b(&g).unwrap();
        let orderings = permutations_fixing_first(g.n());
        for ordering in orderings.iter().step_by(orderings.len() / 7 + 1) {
            let relabeled = g.relabel(ordering);
            let (other, _) = canonical_b(&relabeled).unwrap();
            assert_eq!(other, canon, "{name} under {:?}", ordering.images());
        }
    }
}

// The full pipeline closes for the cyclic groups: build, solve, reconstruct,
// map back by the first-column labeling.
#[test]
fn pipeline_closes_for_cyclic_groups() {
    for name in ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8"] {
        let g = catalog(name).unwrap();
        let b = build_b(&g, BuildMode::Auto).unwrap();
        let s = solution_group(&b).unwrap();
        assert_eq!(s.order(), g.n(), "{name}");
        assert!(brute_iso(s.as_group(), &g).is_some(), "{name}");
        let psi = psi_check(&s, &g).unwrap();
        assert!(psi.bijective && psi.homomorphism, "{name}");
    }
}
