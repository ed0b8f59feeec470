//! The four reduced graphs with fewer than four arborescences.
//!
//! In the signed rotation notation `+e` is the tail of edge `e` and `-e`
//! its head, with edges numbered from 1.

use super::PlanarDigraph;

/// A single vertex and no edges.
pub fn g_alpha() -> PlanarDigraph {
    PlanarDigraph::new(1, Vec::new(), vec![Vec::new()]).expect("valid")
}

/// Two vertices joined by `k` edges in each direction, alternating.
fn two_vertex(k: usize) -> PlanarDigraph {
    let mut edges = Vec::new();
    for i in 0..2 * k {
        edges.push(if i % 2 == 0 { (0, 1) } else { (1, 0) });
    }
    let m = 2 * k as i64;
    let at_u: Vec<i64> = (1..=m).rev().map(|e| if e % 2 == 1 { e } else { -e }).collect();
    let at_v: Vec<i64> = (1..=m).map(|e| if e % 2 == 1 { -e } else { e }).collect();
    PlanarDigraph::from_signed(2, &edges, &[&at_u, &at_v]).expect("valid")
}

/// Two vertices, two edges each way.
pub fn g_beta() -> PlanarDigraph {
    two_vertex(2)
}

/// Two vertices, three edges each way.
pub fn g_gamma() -> PlanarDigraph {
    two_vertex(3)
}

/// Three vertices, one edge each way between every pair.
pub fn g_delta() -> PlanarDigraph {
    PlanarDigraph::from_signed(
        3,
        &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)],
        &[&[1, -2, 6, -5], &[3, -4, 2, -1], &[5, -6, 4, -3]],
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{count_arborescences_bruteforce, iso_embedded, EdgeEnd};

    #[test]
    fn shapes() {
        assert_eq!(g_beta().num_edges(), 4);
        assert_eq!(g_gamma().num_edges(), 6);
        for g in [g_alpha(), g_beta(), g_gamma(), g_delta()] {
            assert!(g.gamma_member());
            assert!(g.is_o_connected());
        }
        assert_eq!(g_beta().face_lengths(), vec![2; 4]);
        assert_eq!(g_gamma().face_lengths(), vec![2; 6]);
    }

    /// All rotation systems on the bidirected triangle that alternate and
    /// embed in the sphere.
    fn triangle_embeddings() -> Vec<PlanarDigraph> {
        let base = g_delta();
        let ends: Vec<Vec<EdgeEnd>> = (0..3)
            .map(|v| {
                let mut r = base.rotation(v).to_vec();
                r.sort();
                r
            })
            .collect();
        let orders = |r: &[EdgeEnd]| -> Vec<Vec<EdgeEnd>> {
            // Fix the first end and permute the rest.
            let rest = &r[1..];
            let mut out = Vec::new();
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        if a != b && b != c && a != c {
                            out.push(vec![r[0], rest[a], rest[b], rest[c]]);
                        }
                    }
                }
            }
            out
        };
        let mut found = Vec::new();
        for r0 in orders(&ends[0]) {
            for r1 in orders(&ends[1]) {
                for r2 in orders(&ends[2]) {
                    let g = PlanarDigraph::new(3, base.edges().to_vec(), vec![r0.clone(), r1.clone(), r2]).unwrap();
                    if g.alternates() && g.is_genus_zero() {
                        found.push(g);
                    }
                }
            }
        }
        found
    }

    #[test]
    fn delta_is_the_only_embedding() {
        let all = triangle_embeddings();
        assert!(!all.is_empty());
        for g in &all {
            assert!(g.gamma_member());
            assert_eq!(count_arborescences_bruteforce(g, 0), 3u32.into());
            assert!(iso_embedded(g, &g_delta()) || iso_embedded(g, &g_delta().reflect()));
        }
    }

    #[test]
    fn delta_is_chiral() {
        let d = g_delta();
        assert_eq!(d.face_lengths(), vec![3, 2, 3, 2, 2]);
        assert!(!iso_embedded(&d, &d.reflect()));
        let all = triangle_embeddings();
        assert!(all.iter().any(|g| iso_embedded(g, &d)));
        assert!(all.iter().any(|g| iso_embedded(g, &d.reflect())));
    }
}
