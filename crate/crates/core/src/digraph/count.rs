//! Counting spanning arborescences.
//!
//! An arborescence rooted at `v` gives every other vertex exactly one
//! incoming tree edge and `v` none. Loops never appear in one.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::PlanarDigraph;

/// In-edge candidates per vertex, loops and edges into the root removed.
fn in_candidates(g: &PlanarDigraph, root: usize) -> Vec<Vec<usize>> {
    let mut cands = vec![Vec::new(); g.num_vertices()];
    for (i, e) in g.edges().iter().enumerate() {
        if !e.is_loop() && e.head != root {
            cands[e.head].push(i);
        }
    }
    cands
}

/// Calls `f` with the parent edge of every vertex for each arborescence.
/// The root's entry is `usize::MAX`. Stops early when `f` returns false.
fn for_each_arborescence(g: &PlanarDigraph, root: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let n = g.num_vertices();
    assert!(root < n, "root {root} out of range");
    let cands = in_candidates(g, root);
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    if others.iter().any(|&v| cands[v].is_empty()) {
        return;
    }
    let mut choice = vec![0usize; others.len()];
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n];
    loop {
        for (k, &v) in others.iter().enumerate() {
            parent[v] = cands[v][choice[k]];
        }
        if reaches_root(g, root, &parent, &mut state) && !f(&parent) {
            return;
        }
        // Odometer step.
        let mut k = 0;
        loop {
            if k == others.len() {
                return;
            }
            choice[k] += 1;
            if choice[k] < cands[others[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Every parent chain ends at the root. `state` is scratch space.
fn reaches_root(g: &PlanarDigraph, root: usize, parent: &[usize], state: &mut [u8]) -> bool {
    // 0 unknown, 1 on the current chain, 2 known good.
    state.fill(0);
    state[root] = 2;
    for start in 0..parent.len() {
        let mut v = start;
        let mut chain = Vec::new();
        while state[v] == 0 {
            state[v] = 1;
            chain.push(v);
            v = g.edge(parent[v]).tail;
        }
        if state[v] == 1 {
            return false;
        }
        for c in chain {
            state[c] = 2;
        }
    }
    true
}

/// Exhaustive count: one in-edge per non-root vertex, then an acyclicity
/// filter.
pub fn count_arborescences_bruteforce(g: &PlanarDigraph, root: usize) -> BigUint {
    let mut count = BigUint::zero();
    for_each_arborescence(g, root, |_| {
        count += 1u32;
        true
    });
    count
}

/// All arborescences rooted at `root`, each as a sorted list of edge ids.
pub fn arborescences(g: &PlanarDigraph, root: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_arborescence(g, root, |parent| {
        let mut t: Vec<usize> = parent.iter().copied().filter(|&e| e != usize::MAX).collect();
        t.sort_unstable();
        out.push(t);
        true
    });
    out
}

/// Some root `v != w` and an arborescence from `v` in which `w` has no
/// outgoing tree edge. Roots are tried in increasing order.
pub fn arborescence_with_leaf(g: &PlanarDigraph, w: usize) -> Option<(usize, Vec<usize>)> {
    for root in (0..g.num_vertices()).filter(|&v| v != w) {
        let mut found = None;
        for_each_arborescence(g, root, |parent| {
            if parent.iter().any(|&e| e != usize::MAX && g.edge(e).tail == w) {
                return true;
            }
            let mut t: Vec<usize> = parent.iter().copied().filter(|&e| e != usize::MAX).collect();
            t.sort_unstable();
            found = Some(t);
            false
        });
        if let Some(t) = found {
            return Some((root, t));
        }
    }
    None
}

/// Abstract multigraph used by the deletion-contraction recursion. The
/// root is always vertex 0 and edges are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    n: usize,
    edges: Vec<(u8, u8)>,
}

const PERMUTATION_LIMIT: usize = 5040;

impl Key {
    fn new(g: &PlanarDigraph, root: usize) -> Key {
        let n = g.num_vertices();
        let relabel = |v: usize| -> u8 {
            (if v == root {
                0
            } else if v < root {
                v + 1
            } else {
                v
            }) as u8
        };
        let edges = g.edges().iter().map(|e| (relabel(e.tail), relabel(e.head))).collect();
        Key { n, edges }.simplified()
    }

    /// Drops loops and edges into the root, then sorts.
    fn simplified(mut self) -> Key {
        self.edges.retain(|&(t, h)| t != h && h != 0);
        self.edges.sort_unstable();
        self
    }

    /// Merges the head of edge `i` into its tail. Trees through edge `i`
    /// use no other edge into its head, so those edges are dropped first.
    fn contract(&self, i: usize) -> Key {
        let (u, w) = self.edges[i];
        let fix = |x: u8| {
            let x = if x == w { u } else { x };
            if x > w {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, &(_, h))| j != i && h != w)
            .map(|(_, &(t, h))| (fix(t), fix(h)))
            .collect();
        Key { n: self.n - 1, edges }.simplified()
    }

    fn delete(&self, i: usize) -> Key {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Key { n: self.n, edges }
    }

    /// Relabels non-root vertices to a canonical order. Vertices are first
    /// grouped by degree signature; all orders within groups are tried and
    /// the least edge list wins. Too many orders fall back to the grouped
    /// order alone, which is still a valid (if less shared) key.
    fn canonical(&self) -> Key {
        let n = self.n;
        let mut sig = vec![(0usize, 0usize); n];
        for &(t, h) in &self.edges {
            sig[t as usize].1 += 1;
            sig[h as usize].0 += 1;
        }
        let mut order: Vec<usize> = (1..n).collect();
        order.sort_by_key(|&v| sig[v]);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(gr) if sig[gr[0]] == sig[v] => gr.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let total: usize = groups
            .iter()
            .map(|gr| (1..=gr.len()).product::<usize>())
            .try_fold(1usize, |acc, x| acc.checked_mul(x).filter(|&p| p <= PERMUTATION_LIMIT))
            .unwrap_or(usize::MAX);
        let apply = |seq: &[usize]| -> Vec<(u8, u8)> {
            // seq[k] is the old vertex placed at new position k + 1.
            let mut pos = vec![0u8; n];
            for (k, &v) in seq.iter().enumerate() {
                pos[v] = (k + 1) as u8;
            }
            let mut e: Vec<(u8, u8)> = self.edges.iter().map(|&(t, h)| (pos[t as usize], pos[h as usize])).collect();
            e.sort_unstable();
            e
        };
        let flat: Vec<usize> = groups.iter().flatten().copied().collect();
        if total > PERMUTATION_LIMIT {
            return Key { n, edges: apply(&flat) };
        }
        let mut best: Option<Vec<(u8, u8)>> = None;
        visit_group_perms(&mut groups, 0, &mut |gs| {
            let seq: Vec<usize> = gs.iter().flatten().copied().collect();
            let e = apply(&seq);
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        });
        Key { n, edges: best.unwrap_or_default() }
    }
}

fn visit_group_perms(groups: &mut [Vec<usize>], k: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    if k == groups.len() {
        f(groups);
        return;
    }
    let len = groups[k].len();
    heap_permute(groups, k, len, f);
}

/// Heap's algorithm over `groups[k]`, recursing into later groups.
fn heap_permute(groups: &mut [Vec<usize>], k: usize, size: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    if size <= 1 {
        visit_group_perms(groups, k + 1, f);
        return;
    }
    heap_permute(groups, k, size - 1, f);
    for i in 0..size - 1 {
        if size.is_multiple_of(2) {
            groups[k].swap(i, size - 1);
        } else {
            groups[k].swap(0, size - 1);
        }
        heap_permute(groups, k, size - 1, f);
    }
}

fn delcon(key: Key, memo: &mut HashMap<Key, BigUint>) -> BigUint {
    if key.n == 1 {
        return BigUint::one();
    }
    let key = key.canonical();
    let mut indeg = vec![0usize; key.n];
    for &(_, h) in &key.edges {
        indeg[h as usize] += 1;
    }
    if indeg[1..].contains(&0) {
        return BigUint::zero();
    }
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    // An edge that is the only way into its head lies in every tree.
    let forced = key.edges.iter().position(|&(_, h)| indeg[h as usize] == 1);
    let result = match forced {
        Some(i) => delcon(key.contract(i), memo),
        None => delcon(key.delete(0), memo) + delcon(key.contract(0), memo),
    };
    memo.insert(key, result.clone());
    result
}

/// Deletion-contraction with loops dropped and memoization on a canonical
/// relabelling.
pub fn count_arborescences_delcon(g: &PlanarDigraph, root: usize) -> BigUint {
    assert!(root < g.num_vertices(), "root {root} out of range");
    delcon(Key::new(g, root), &mut HashMap::new())
}

/// Which degree goes on the Laplacian diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Laplacian {
    In,
    Out,
}

/// Determinant of the Laplacian with the root row and column removed.
/// Loops are ignored.
pub fn laplacian_minor_det(g: &PlanarDigraph, root: usize, kind: Laplacian) -> BigInt {
    let n = g.num_vertices();
    assert!(root < n, "root {root} out of range");
    let mut l = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        l[e.tail][e.head] -= 1;
        let d = if kind == Laplacian::In { e.head } else { e.tail };
        l[d][d] += 1;
    }
    let idx: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let m: Vec<Vec<BigInt>> = idx.iter().map(|&i| idx.iter().map(|&j| l[i][j].clone()).collect()).collect();
    bareiss(m)
}

/// Fraction-free integer determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                let v = (&m[r][j] * &m[c][c] - &m[r][c] * &m[c][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    if k == 0 {
        return BigInt::one();
    }
    sign * &m[k - 1][k - 1]
}

/// Matrix-tree count using the in-degree Laplacian, which gives the count
/// of arborescences directed away from the root.
pub fn count_arborescences_matrixtree(g: &PlanarDigraph, root: usize) -> BigUint {
    let d = laplacian_minor_det(g, root, Laplacian::In);
    assert!(!d.is_negative(), "Laplacian minor is never negative");
    d.magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, g_alpha, g_beta, g_delta, g_gamma};
    use proptest::prelude::*;

    fn all_counts(g: &PlanarDigraph, v: usize) -> [BigUint; 3] {
        [count_arborescences_bruteforce(g, v), count_arborescences_delcon(g, v), count_arborescences_matrixtree(g, v)]
    }

    #[test]
    fn small_examples() {
        for v in 0..3 {
            assert_eq!(all_counts(&directed_cycle(3), v), [1u32.into(), 1u32.into(), 1u32.into()]);
        }
        let two = PlanarDigraph::unembedded(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]).unwrap();
        assert_eq!(count_arborescences_bruteforce(&two, 0), 2u32.into());
        let loops = PlanarDigraph::unembedded(1, &[(0, 0), (0, 0), (0, 0)]).unwrap();
        assert_eq!(all_counts(&loops, 0), [1u32.into(), 1u32.into(), 1u32.into()]);
        assert_eq!(count_arborescences_matrixtree(&g_alpha(), 0), 1u32.into());
        let unreachable = PlanarDigraph::unembedded(2, &[(1, 0)]).unwrap();
        assert_eq!(all_counts(&unreachable, 0), [0u32.into(), 0u32.into(), 0u32.into()]);
    }

    #[test]
    fn reference_graph_counts() {
        for (g, want) in [(g_alpha(), 1u32), (g_beta(), 2), (g_gamma(), 3), (g_delta(), 3)] {
            for v in 0..g.num_vertices() {
                assert_eq!(all_counts(&g, v), [want.into(), want.into(), want.into()]);
            }
        }
    }

    #[test]
    fn enumeration_matches_count() {
        let g = g_delta();
        let trees = arborescences(&g, 1);
        assert_eq!(trees.len(), 3);
        for t in &trees {
            assert_eq!(t.len(), 2);
            assert!(t.iter().all(|&e| g.edge(e).head != 1));
        }
    }

    #[test]
    fn leaf_search() {
        let c = directed_cycle(3);
        assert_eq!(arborescence_with_leaf(&c, 2), Some((0, vec![0, 1])));
        assert_eq!(arborescence_with_leaf(&g_alpha(), 0), None);
        let g = g_gamma();
        for w in 0..2 {
            let (root, t) = arborescence_with_leaf(&g, w).unwrap();
            assert_ne!(root, w);
            assert!(t.iter().all(|&e| g.edge(e).tail != w));
        }
    }

    /// Random multigraphs; about half contain a spanning tree from vertex 0
    /// so that counts are often nonzero.
    fn random_graph() -> impl Strategy<Value = (PlanarDigraph, usize)> {
        (1usize..=7)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    prop::collection::vec((0..n, 0..n), 0..=6),
                    prop::collection::vec(0..n, n - 1),
                    any::<bool>(),
                    0..n,
                )
            })
            .prop_map(|(n, mut e, parents, tree, r)| {
                if tree {
                    for (i, p) in parents.into_iter().enumerate() {
                        e.push((p % (i + 1), i + 1));
                    }
                }
                (PlanarDigraph::unembedded(n, &e).unwrap(), r)
            })
    }

    proptest! {
        #[test]
        fn counters_agree((g, r) in random_graph()) {
            let [a, b, c] = all_counts(&g, r);
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }

        #[test]
        fn deletion_contraction_identity((g, r) in random_graph()) {
            let total = count_arborescences_bruteforce(&g, r);
            for e in 0..g.num_edges() {
                let edge = g.edge(e);
                if edge.is_loop() {
                    prop_assert_eq!(count_arborescences_bruteforce(&g.delete(e).unwrap(), r), total.clone());
                    continue;
                }
                let del = count_arborescences_bruteforce(&g.delete(e).unwrap(), r);
                // Trees through e use no other edge into its head.
                let mut pruned = g.clone();
                let mut target = e;
                for f in (0..g.num_edges()).rev() {
                    if f != e && g.edge(f).head == edge.head {
                        pruned = pruned.delete(f).unwrap();
                        if f < target {
                            target -= 1;
                        }
                    }
                }
                let contracted = pruned.contract(target).unwrap();
                let r2 = if r == edge.head { edge.tail } else { r };
                let r2 = if r2 > edge.head { r2 - 1 } else { r2 };
                let con = if edge.head == r {
                    // Trees never enter the root.
                    BigUint::zero()
                } else {
                    count_arborescences_bruteforce(&contracted, r2)
                };
                prop_assert_eq!(del + con, total.clone());
            }
        }
    }

    #[test]
    fn laplacian_orientation() {
        // The in-degree minor matches brute force; the out-degree one does
        // not in general.
        let g = PlanarDigraph::unembedded(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(count_arborescences_bruteforce(&g, 0), 2u32.into());
        assert_eq!(laplacian_minor_det(&g, 0, Laplacian::In), 2.into());
        assert_eq!(laplacian_minor_det(&g, 0, Laplacian::Out), 0.into());
    }
}
