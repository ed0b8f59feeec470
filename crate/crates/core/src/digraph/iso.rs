//! Isomorphism of embedded digraphs.
//!
//! For connected graphs an isomorphism is fixed by the image of a single
//! edge-end, so we try every candidate image and propagate along the
//! rotation and the edges.

use super::{EdgeEnd, PlanarDigraph};

struct Darts {
    /// Vertex of each dart.
    vertex: Vec<usize>,
    /// Next dart counterclockwise around the same vertex.
    next: Vec<usize>,
}

fn darts(g: &PlanarDigraph) -> Darts {
    let m2 = 2 * g.num_edges();
    let mut vertex = vec![0; m2];
    let mut next = vec![0; m2];
    for v in 0..g.num_vertices() {
        let r = g.rotation(v);
        for (i, ee) in r.iter().enumerate() {
            let d = dart(*ee);
            vertex[d] = v;
            next[d] = dart(r[(i + 1) % r.len()]);
        }
    }
    Darts { vertex, next }
}

fn dart(ee: EdgeEnd) -> usize {
    2 * ee.edge + (ee.end == super::End::Head) as usize
}

/// Tries to extend `start -> image` to a full dart bijection between two
/// connected graphs. Partner darts share an edge; even darts are tails.
fn propagate(a: &Darts, b: &Darts, start: usize, image: usize) -> bool {
    if start % 2 != image % 2 {
        return false;
    }
    let m2 = a.next.len();
    let mut fwd = vec![usize::MAX; m2];
    let mut back = vec![usize::MAX; m2];
    let mut stack = vec![(start, image)];
    while let Some((x, y)) = stack.pop() {
        if fwd[x] != usize::MAX || back[y] != usize::MAX {
            if fwd[x] != y || back[y] != x {
                return false;
            }
            continue;
        }
        if x % 2 != y % 2 {
            return false;
        }
        fwd[x] = y;
        back[y] = x;
        stack.push((x ^ 1, y ^ 1));
        stack.push((a.next[x], b.next[y]));
    }
    if fwd.contains(&usize::MAX) {
        return false;
    }
    // Darts at one vertex must land at one vertex, and distinct vertices
    // at distinct vertices. Following `next` already keeps rotations
    // together, so a consistency check on vertex images suffices.
    let na = a.vertex.iter().max().map_or(0, |&v| v + 1);
    let mut vmap = vec![usize::MAX; na];
    for (x, &fx) in fwd.iter().enumerate() {
        let (u, w) = (a.vertex[x], b.vertex[fx]);
        if vmap[u] == usize::MAX {
            vmap[u] = w;
        } else if vmap[u] != w {
            return false;
        }
    }
    true
}

fn iso_connected(g1: &PlanarDigraph, g2: &PlanarDigraph) -> bool {
    if g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges() {
        return false;
    }
    if g1.num_edges() == 0 {
        return true;
    }
    let (a, b) = (darts(g1), darts(g2));
    (0..2 * g2.num_edges()).step_by(2).any(|y| propagate(&a, &b, 0, y))
}

fn signature(g: &PlanarDigraph) -> Vec<(usize, usize)> {
    let mut s: Vec<(usize, usize)> = (0..g.num_vertices()).map(|v| (g.in_degree(v), g.out_degree(v))).collect();
    s.sort_unstable();
    s
}

/// Isomorphism preserving tails, heads and every rotation. Edge tags are
/// ignored.
pub fn iso_embedded(g1: &PlanarDigraph, g2: &PlanarDigraph) -> bool {
    if g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges() || signature(g1) != signature(g2) {
        return false;
    }
    let c1: Vec<PlanarDigraph> = g1.components().iter().map(|c| g1.induced(c)).collect();
    let c2: Vec<PlanarDigraph> = g2.components().iter().map(|c| g2.induced(c)).collect();
    if c1.len() != c2.len() {
        return false;
    }
    if c1.len() == 1 {
        return iso_connected(g1, g2);
    }
    let mut used = vec![false; c2.len()];
    match_components(&c1, &c2, 0, &mut used)
}

fn match_components(c1: &[PlanarDigraph], c2: &[PlanarDigraph], i: usize, used: &mut [bool]) -> bool {
    if i == c1.len() {
        return true;
    }
    for j in 0..c2.len() {
        if !used[j] && iso_connected(&c1[i], &c2[j]) {
            used[j] = true;
            if match_components(c1, c2, i + 1, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Isomorphic to `g2` or to its mirror image.
pub fn iso_up_to_reflection(g1: &PlanarDigraph, g2: &PlanarDigraph) -> bool {
    iso_embedded(g1, g2) || iso_embedded(g1, &g2.reflect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, g_alpha, g_beta, g_delta, g_gamma};

    /// Renames vertices by `perm` and edges by reversing their order.
    fn relabel(g: &PlanarDigraph, perm: &[usize]) -> PlanarDigraph {
        let m = g.num_edges();
        let emap = |e: usize| m - 1 - e;
        let mut edges = vec![super::super::Edge { tail: 0, head: 0 }; m];
        for (i, e) in g.edges().iter().enumerate() {
            edges[emap(i)] = super::super::Edge { tail: perm[e.tail], head: perm[e.head] };
        }
        let mut rotation = vec![Vec::new(); g.num_vertices()];
        for v in 0..g.num_vertices() {
            let mut r: Vec<EdgeEnd> =
                g.rotation(v).iter().map(|ee| EdgeEnd { edge: emap(ee.edge), end: ee.end }).collect();
            let k = r.len().max(1);
            r.rotate_left(1 % k);
            rotation[perm[v]] = r;
        }
        PlanarDigraph::new(g.num_vertices(), edges, rotation).unwrap()
    }

    #[test]
    fn relabelled_graphs_match() {
        let c = directed_cycle(3);
        assert!(iso_embedded(&c, &relabel(&c, &[2, 0, 1])));
        assert!(iso_embedded(&g_delta(), &relabel(&g_delta(), &[1, 2, 0])));
        assert!(iso_embedded(&g_gamma(), &relabel(&g_gamma(), &[1, 0])));
    }

    #[test]
    fn reflection_examples() {
        assert!(iso_up_to_reflection(&g_delta(), &g_delta().reflect()));
        assert!(!iso_up_to_reflection(&g_beta(), &g_gamma()));
        assert!(iso_up_to_reflection(&g_alpha(), &g_alpha()));
    }

    #[test]
    fn rotation_matters() {
        // Same abstract graph, different cyclic order at one vertex.
        let a = PlanarDigraph::from_signed(2, &[(0, 1), (1, 0), (0, 1), (1, 0)], &[&[1, -2, 3, -4], &[-1, 2, -3, 4]])
            .unwrap();
        let b = PlanarDigraph::from_signed(2, &[(0, 1), (1, 0), (0, 1), (1, 0)], &[&[1, -2, 3, -4], &[-1, 4, -3, 2]])
            .unwrap();
        assert_ne!(a.is_genus_zero(), b.is_genus_zero());
        assert!(!iso_embedded(&a, &b));
    }

    #[test]
    fn disconnected_components() {
        let two = PlanarDigraph::unembedded(2, &[]).unwrap();
        assert!(iso_embedded(&two, &two));
        let c = directed_cycle(2);
        let mixed1 = PlanarDigraph::unembedded(3, &[(1, 2), (2, 1)]).unwrap();
        let mixed2 = PlanarDigraph::unembedded(3, &[(0, 1), (1, 0)]).unwrap();
        assert!(iso_embedded(&mixed1, &mixed2));
        assert!(!iso_embedded(&mixed1, &c));
    }
}
