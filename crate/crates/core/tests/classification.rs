use std::collections::BTreeSet;

use seifert_core::alexander::reduced_alexander;
use seifert_core::classify::{analyze_link, classify_reduced, Classification};
use seifert_core::diagram::{parse_pd, Diagram};
use seifert_core::digraph::{count_arborescences_bruteforce, g_alpha, iso_embedded, reduce};
use seifert_core::io::bundled_corpus;
use seifert_core::linkgraphs::murasugi_digraph;
use seifert_core::poly::LaurentPoly;

/// Closures of two-strand braids beyond the bundled corpus.
const TORUS: [(usize, &str); 4] = [
    (7, "X(14,8,1,7) X(8,2,9,1) X(2,10,3,9) X(10,4,11,3) X(4,12,5,11) X(12,6,13,5) X(6,14,7,13)"),
    (8, "X(8,16,1,15) X(16,2,9,1) X(2,10,3,9) X(10,4,11,3) X(4,12,5,11) X(12,6,13,5) X(6,14,7,13) X(14,8,15,7)"),
    (9, "X(18,10,1,9) X(10,2,11,1) X(2,12,3,11) X(12,4,13,3) X(4,14,5,13) X(14,6,15,5) X(6,16,7,15) X(16,8,17,7) X(8,18,9,17)"),
    (
        10,
        "X(10,20,1,19) X(20,2,11,1) X(2,12,3,11) X(12,4,13,3) X(4,14,5,13) X(14,6,15,5) X(6,16,7,15) X(16,8,17,7) X(8,18,9,17) X(18,10,19,9)",
    ),
];

fn prime_special_alternating(d: &Diagram) -> bool {
    let f = d.classify();
    f.alternating && f.special && f.reduced && f.looks_prime
}

fn diagrams() -> Vec<(String, Diagram)> {
    let mut out: Vec<(String, Diagram)> =
        bundled_corpus().into_iter().map(|e| (e.name.clone(), e.diagram().unwrap())).collect();
    for (k, pd) in TORUS {
        out.push((format!("torus-2-{k}"), parse_pd(pd).unwrap()));
    }
    out
}

#[test]
fn torus_polynomials() {
    for (k, pd) in TORUS {
        let d = parse_pd(pd).unwrap();
        let want: Vec<i64> = (0..k).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        assert_eq!(reduced_alexander(&d), LaurentPoly::from_coeffs(&want), "torus-2-{k}");
    }
}

#[test]
fn small_values_reduce_to_reference_graphs() {
    for (name, d) in diagrams() {
        if !prime_special_alternating(&d) {
            continue;
        }
        let value = reduced_alexander(&d).coeff(0);
        if value >= 4.into() {
            continue;
        }
        let (r, _) = reduce(&murasugi_digraph(&d).unwrap());
        assert_ne!(classify_reduced(&r), Classification::Other, "{name}");
        for v in 0..r.num_vertices() {
            assert_eq!(count_arborescences_bruteforce(&r, v).to_string(), value.to_string(), "{name}");
        }
        if value == 1.into() {
            assert!(iso_embedded(&r, &g_alpha()), "{name}");
        }
    }
}

#[test]
fn reports_are_consistent() {
    for (name, d) in diagrams() {
        let Ok(r) = analyze_link(&d) else { continue };
        assert_eq!(r.delta0.coeff(0).to_string(), r.value_at_0.to_string(), "{name}");
        assert_eq!(r.delta0, r.delta0_crowell, "{name}");
        assert!(r.genus_check.pass, "{name}");
        if r.value_at_0 != 1 {
            assert_ne!(r.fibred, seifert_core::classify::Verdict::Yes, "{name}");
        }
        if r.value_at_0 >= 4 {
            assert_ne!(r.unique_incompressible, seifert_core::classify::Verdict::Yes, "{name}");
        }
    }
}

/// With the degree and `Δ⁰(0)` bounded, the reduced graphs met along a
/// growing list of diagrams form a set that grows and then stays fixed.
#[test]
fn finiteness_probe() {
    let (max_degree, max_value) = (12, 3);
    let mut seen: BTreeSet<Classification> = BTreeSet::new();
    let mut sizes = Vec::new();
    for (_, d) in diagrams() {
        if !prime_special_alternating(&d) {
            continue;
        }
        let p = reduced_alexander(&d);
        if p.max_exp().unwrap_or(0) > max_degree || p.coeff(0) > max_value.into() {
            continue;
        }
        let (r, _) = reduce(&murasugi_digraph(&d).unwrap());
        seen.insert(classify_reduced(&r));
        sizes.push(seen.len());
    }
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    assert!(!seen.contains(&Classification::Other));
    // The last four diagrams add nothing new.
    let tail = &sizes[sizes.len() - 4..];
    assert!(tail.iter().all(|&s| s == *sizes.last().unwrap()), "{sizes:?}");
    assert_eq!(
        seen,
        [
            Classification::Alpha,
            Classification::Beta,
            Classification::Gamma,
            Classification::Delta,
            Classification::DeltaReflected
        ]
        .into_iter()
        .collect()
    );
}
