//! Digraphs built from a special alternating diagram.
//!
//! * `M_D` has a vertex in each white face and an edge per crossing, from
//!   the undotted white corner to the dotted one.
//! * The Crowell graph is the diagram's own graph, each arc oriented from
//!   its over-crossing end to its under-crossing end. Of the two arcs
//!   arriving at a crossing, the one on the left of the oriented
//!   over-strand is in `H`, the other in `K`.
//! * `H_D` and `K_D` collapse the `H`-cycles (resp. `K`-cycles) to points.

use serde::Serialize;

use crate::alexander::corner_values;
use crate::diagram::{Color, Diagram};
use crate::digraph::{arborescences, Edge, EdgeEnd, EdgeTag, PlanarDigraph};
use crate::error::{Error, Result};
use crate::poly::{normalize_reduced, LaurentPoly};

fn require_special_alternating(d: &Diagram) -> Result<Diagram> {
    if !d.is_alternating() {
        return Err(Error::Unsupported("diagram is not alternating".into()));
    }
    d.checkerboard()
}

/// White face ids in increasing order, and the inverse map.
fn white_faces(d: &Diagram) -> (Vec<usize>, Vec<usize>) {
    let white: Vec<usize> = (0..d.faces().len()).filter(|&f| d.faces()[f].color == Color::White).collect();
    let mut index = vec![usize::MAX; d.faces().len()];
    for (i, &f) in white.iter().enumerate() {
        index[f] = i;
    }
    (white, index)
}

/// Murasugi's digraph. Edge `i` belongs to crossing `i`; vertex `j` is the
/// `j`-th white face.
pub fn murasugi_digraph(d: &Diagram) -> Result<PlanarDigraph> {
    let d = require_special_alternating(d)?;
    if d.num_crossings() == 0 {
        return PlanarDigraph::new(1, Vec::new(), vec![Vec::new()]);
    }
    let (white, index) = white_faces(&d);
    let mut edges = vec![Edge { tail: usize::MAX, head: usize::MAX }; d.num_crossings()];
    for (v, c) in d.crossings().iter().enumerate() {
        let rule = corner_values(c.over_in);
        for (k, value) in rule.iter().enumerate() {
            let f = d.corner_face(v, k);
            if d.faces()[f].color != Color::White {
                continue;
            }
            if value.is_dotted() {
                edges[v].head = index[f];
            } else {
                edges[v].tail = index[f];
            }
        }
        if edges[v].tail == usize::MAX || edges[v].head == usize::MAX {
            return Err(Error::Unsupported(format!(
                "crossing {v} does not have one dotted and one undotted white corner"
            )));
        }
    }
    // Walking a face keeps it on the right, so the corners appear clockwise
    // as seen from inside; the rotation needs them counterclockwise.
    let rotation = white
        .iter()
        .map(|&f| {
            d.faces()[f]
                .corners
                .iter()
                .rev()
                .map(|&(v, k)| {
                    let dotted = corner_values(d.crossings()[v].over_in)[k].is_dotted();
                    if dotted {
                        EdgeEnd::head(v)
                    } else {
                        EdgeEnd::tail(v)
                    }
                })
                .collect()
        })
        .collect();
    PlanarDigraph::new(white.len(), edges, rotation)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrowellGraph {
    /// Vertices are crossings; edge `i` is the `i`-th arc of the diagram.
    pub graph: PlanarDigraph,
    pub hk: Vec<EdgeTag>,
    pub alpha: Vec<LaurentPoly>,
}

/// Slot of the `H` arc arriving at a crossing whose over-strand enters at
/// `over_in`.
pub fn h_slot(over_in: usize) -> usize {
    if over_in == 1 {
        0
    } else {
        2
    }
}

/// The diagram graph with orientation from over-crossing to under-crossing.
pub fn crowell_graph(d: &Diagram) -> Result<CrowellGraph> {
    if !d.is_alternating() {
        return Err(Error::Unsupported("diagram is not alternating".into()));
    }
    if d.num_crossings() == 0 {
        let graph = PlanarDigraph::new(1, Vec::new(), vec![Vec::new()])?;
        return Ok(CrowellGraph { graph, hk: Vec::new(), alpha: Vec::new() });
    }
    let arcs = d.arcs();
    let index_of = |label: u32| arcs.iter().position(|a| a.label == label).expect("arc exists");
    let mut edges = Vec::with_capacity(arcs.len());
    let mut hk = Vec::with_capacity(arcs.len());
    for a in arcs {
        // The end at an under-slot (0 or 2) is where the arc passes under.
        let (under, over) = if a.head.1 % 2 == 0 { (a.head, a.tail) } else { (a.tail, a.head) };
        edges.push(Edge { tail: over.0, head: under.0 });
        let c = &d.crossings()[under.0];
        hk.push(if under.1 == h_slot(c.over_in) { EdgeTag::H } else { EdgeTag::K });
    }
    let rotation = (0..d.num_crossings())
        .map(|v| {
            (0..4)
                .map(|k| {
                    let e = index_of(d.crossings()[v].pd[k]);
                    if k % 2 == 0 {
                        EdgeEnd::head(e)
                    } else {
                        EdgeEnd::tail(e)
                    }
                })
                .collect()
        })
        .collect();
    let graph =
        PlanarDigraph::new(d.num_crossings(), edges, rotation)?.with_tags(hk.iter().copied().map(Some).collect());
    let alpha = hk
        .iter()
        .map(|t| match t {
            EdgeTag::H => LaurentPoly::monomial(-1, 1),
            EdgeTag::K => LaurentPoly::one(),
        })
        .collect();
    Ok(CrowellGraph { graph, hk, alpha })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrowellSum {
    pub raw: LaurentPoly,
    pub normalized: LaurentPoly,
    pub trees: usize,
}

/// Sum over arborescences rooted at `root` of the product of edge weights.
pub fn crowell_polynomial(cg: &CrowellGraph, root: usize) -> CrowellSum {
    let trees = arborescences(&cg.graph, root);
    let mut raw = LaurentPoly::zero();
    for t in &trees {
        let product = t.iter().fold(LaurentPoly::one(), |acc, &e| &acc * &cg.alpha[e]);
        raw = &raw + &product;
    }
    let normalized = normalize_reduced(&raw);
    CrowellSum { raw, normalized, trees: trees.len() }
}

/// Number of trees using the fewest `K` edges, and using the fewest `H`
/// edges.
pub fn extremal_tree_counts(cg: &CrowellGraph, root: usize) -> (usize, usize) {
    let trees = arborescences(&cg.graph, root);
    let ks: Vec<usize> = trees.iter().map(|t| t.iter().filter(|&&e| cg.hk[e] == EdgeTag::K).count()).collect();
    let count_min = |v: &[usize]| {
        let m = v.iter().min().copied().unwrap_or(0);
        v.iter().filter(|&&x| x == m).count()
    };
    let hs: Vec<usize> =
        trees.iter().map(|t| t.len() - t.iter().filter(|&&e| cg.hk[e] == EdgeTag::K).count()).collect();
    (count_min(&ks), count_min(&hs))
}

/// Contracts every edge carrying `tag`, deleting the loop each cycle
/// leaves behind. Contraction merges heads into tails, so a vertex `v` of
/// the Crowell graph ends up at `map[v]`.
fn collapse(cg: &CrowellGraph, tag: EdgeTag) -> (PlanarDigraph, Vec<usize>) {
    let mut g = cg.graph.clone();
    let mut map: Vec<usize> = (0..g.num_vertices()).collect();
    while let Some(e) = (0..g.num_edges()).find(|&e| g.tag(e) == Some(tag)) {
        let edge = g.edge(e);
        if edge.is_loop() {
            g = g.delete(e).expect("edge exists");
        } else {
            for m in &mut map {
                if *m == edge.head {
                    *m = edge.tail;
                }
                if *m > edge.head {
                    *m -= 1;
                }
            }
            g = g.contract(e).expect("not a loop");
        }
    }
    (g, map)
}

pub fn collapse_h(cg: &CrowellGraph) -> PlanarDigraph {
    collapse(cg, EdgeTag::H).0
}

pub fn collapse_k(cg: &CrowellGraph) -> PlanarDigraph {
    collapse(cg, EdgeTag::K).0
}

/// Where each Crowell vertex lands in `H_D` (the map `A`).
pub fn collapse_h_map(cg: &CrowellGraph) -> Vec<usize> {
    collapse(cg, EdgeTag::H).1
}

/// Every vertex has exactly one `H` and one `K` edge arriving.
pub fn hk_invariant_holds(cg: &CrowellGraph) -> bool {
    let g = &cg.graph;
    (0..g.num_vertices()).all(|v| {
        let tags: Vec<EdgeTag> = (0..g.num_edges()).filter(|&e| g.edge(e).head == v).map(|e| cg.hk[e]).collect();
        tags.len() == 2 && tags.contains(&EdgeTag::H) && tags.contains(&EdgeTag::K)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::reduced_alexander;
    use crate::diagram::parse_pd;
    use crate::digraph::{count_arborescences_bruteforce, directed_cycle, iso_embedded};

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const HOPF: &str = "X(4,1,3,2) X(2,3,1,4)";
    const SEVEN_FOUR: &str = "X(14,5,1,6) X(6,13,7,14) X(12,7,13,8) X(4,11,5,12) X(10,1,11,2) X(2,9,3,10) X(8,3,9,4)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    fn counts(g: &PlanarDigraph) -> Vec<u64> {
        (0..g.num_vertices()).map(|v| u64::try_from(count_arborescences_bruteforce(g, v)).unwrap()).collect()
    }

    #[test]
    fn murasugi_examples() {
        let m = murasugi_digraph(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert!(iso_embedded(&m, &directed_cycle(3)));
        let m = murasugi_digraph(&parse_pd(HOPF).unwrap()).unwrap();
        assert_eq!(m.num_vertices(), 2);
        assert_eq!(counts(&m), vec![1, 1]);
        let m = murasugi_digraph(&parse_pd(SEVEN_FOUR).unwrap()).unwrap();
        assert!(m.is_genus_zero() && m.alternates());
        assert!(counts(&m).iter().all(|&c| c == 4));
        assert!(matches!(murasugi_digraph(&parse_pd(FIGURE_EIGHT).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dual_complements_are_trees() {
        // The dual of M_D has a vertex per face; the edges missing from a
        // spanning tree must form a spanning tree of the dual.
        let m = murasugi_digraph(&parse_pd(SEVEN_FOUR).unwrap()).unwrap();
        let faces = m.faces();
        let mut side = vec![Vec::new(); m.num_edges()];
        for (f, face) in faces.iter().enumerate() {
            for ee in face {
                side[ee.edge].push(f);
            }
        }
        for root in 0..m.num_vertices() {
            for t in arborescences(&m, root) {
                let rest: Vec<(usize, usize)> =
                    (0..m.num_edges()).filter(|e| !t.contains(e)).map(|e| (side[e][0], side[e][1])).collect();
                assert_eq!(rest.len(), faces.len() - 1);
                let dual = PlanarDigraph::unembedded(faces.len(), &rest).unwrap();
                assert!(dual.is_connected());
            }
        }
    }

    #[test]
    fn crowell_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        let cg = crowell_graph(&d).unwrap();
        assert_eq!(cg.graph.num_vertices(), 3);
        assert_eq!(cg.graph.num_edges(), 6);
        assert_eq!(cg.hk.iter().filter(|&&t| t == EdgeTag::H).count(), 3);
        assert!(hk_invariant_holds(&cg));
        for v in 0..3 {
            let s = crowell_polynomial(&cg, v);
            assert_eq!(s.normalized, LaurentPoly::from_coeffs(&[1, -1, 1]));
            assert_eq!(s.normalized, reduced_alexander(&d));
        }
    }

    #[test]
    fn crowell_constant_term_counts() {
        for pd in [TREFOIL, SEVEN_FOUR, HOPF] {
            let d = parse_pd(pd).unwrap();
            let cg = crowell_graph(&d).unwrap();
            let value = reduced_alexander(&d).coeff(0);
            let hd = collapse_h(&cg);
            let kd = collapse_k(&cg);
            for v in 0..cg.graph.num_vertices() {
                let (kmin, hmin) = extremal_tree_counts(&cg, v);
                assert_eq!(num_bigint::BigInt::from(kmin), value);
                assert_eq!(num_bigint::BigInt::from(hmin), value);
            }
            for g in [&hd, &kd] {
                assert!(g.alternates());
                assert!(g.is_genus_zero());
                for v in 0..g.num_vertices() {
                    assert_eq!(num_bigint::BigInt::from(count_arborescences_bruteforce(g, v)), value);
                }
            }
        }
    }

    #[test]
    fn special_circles_are_monochrome_cycles() {
        let d = parse_pd(SEVEN_FOUR).unwrap();
        let cg = crowell_graph(&d).unwrap();
        let index_of = |l: u32| d.arcs().iter().position(|a| a.label == l).unwrap();
        for c in d.seifert_circles() {
            assert!(c.special);
            let tags: Vec<EdgeTag> = c.arcs.iter().map(|&l| cg.hk[index_of(l)]).collect();
            assert!(tags.iter().all(|&t| t == tags[0]));
        }
    }

    #[test]
    fn collapse_without_tagged_edges_is_identity() {
        let d = parse_pd(TREFOIL).unwrap();
        let cg = crowell_graph(&d).unwrap();
        let hd = collapse_h(&cg);
        let again =
            CrowellGraph { graph: hd.clone(), hk: hd.tags().iter().map(|t| t.unwrap()).collect(), alpha: Vec::new() };
        assert_eq!(collapse_h(&again), hd);
    }
}
