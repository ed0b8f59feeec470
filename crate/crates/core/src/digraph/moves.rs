//! Tree-count preserving reductions.
//!
//! Move 1 removes a loop that bounds a face on its own. Move 2 contracts an
//! edge whose head has no other incoming edge.

use serde::Serialize;

use super::PlanarDigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    RemoveLoop { edge: usize, vertex: usize },
    Contract { edge: usize, tail: usize, head: usize },
}

impl Move {
    /// Where vertex `v` of the graph before the move ends up after it.
    pub fn map_vertex(&self, v: usize) -> usize {
        match *self {
            Move::RemoveLoop { .. } => v,
            Move::Contract { tail, head, .. } => {
                let v = if v == head { tail } else { v };
                if v > head {
                    v - 1
                } else {
                    v
                }
            }
        }
    }
}

/// The two ends of the loop sit next to each other in the rotation, so one
/// side of it is an empty face.
fn bounds_face(g: &PlanarDigraph, e: usize) -> bool {
    let r = g.rotation(g.edge(e).tail);
    let k = r.len();
    (0..k).any(|i| r[i].edge == e && r[(i + 1) % k].edge == e && r[i].end != r[(i + 1) % k].end)
}

fn find_move1(g: &PlanarDigraph) -> Option<usize> {
    (0..g.num_edges()).find(|&e| g.edge(e).is_loop() && bounds_face(g, e))
}

fn find_move2(g: &PlanarDigraph) -> Option<usize> {
    (0..g.num_edges()).find(|&e| {
        let edge = g.edge(e);
        !edge.is_loop() && g.in_degree(edge.head) == 1
    })
}

/// Removes the lowest-numbered face-bounding loop.
pub fn move1(g: &PlanarDigraph) -> Option<(PlanarDigraph, Move)> {
    let e = find_move1(g)?;
    let vertex = g.edge(e).tail;
    Some((g.delete(e).expect("edge exists"), Move::RemoveLoop { edge: e, vertex }))
}

/// Contracts the lowest-numbered edge whose head has in-degree one.
pub fn move2(g: &PlanarDigraph) -> Option<(PlanarDigraph, Move)> {
    let e = find_move2(g)?;
    let edge = g.edge(e);
    let mv = Move::Contract { edge: e, tail: edge.tail, head: edge.head };
    Some((g.contract(e).expect("not a loop"), mv))
}

/// Applies moves until neither applies, preferring move 1.
pub fn reduce(g: &PlanarDigraph) -> (PlanarDigraph, Vec<Move>) {
    let mut cur = g.clone();
    let mut trace = Vec::new();
    while let Some((next, mv)) = move1(&cur).or_else(|| move2(&cur)) {
        cur = next;
        trace.push(mv);
    }
    (cur, trace)
}

/// Follows a vertex through a trace.
pub fn map_through(trace: &[Move], v: usize) -> usize {
    trace.iter().fold(v, |v, m| m.map_vertex(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{
        count_arborescences_bruteforce, directed_cycle, g_alpha, g_beta, g_delta, g_gamma, iso_embedded,
    };

    fn loops(k: usize) -> PlanarDigraph {
        let e: Vec<(usize, usize)> = vec![(0, 0); k];
        PlanarDigraph::unembedded(1, &e).unwrap()
    }

    #[test]
    fn move1_examples() {
        let (g, mv) = move1(&loops(1)).unwrap();
        assert!(iso_embedded(&g, &g_alpha()));
        assert_eq!(mv, Move::RemoveLoop { edge: 0, vertex: 0 });
        assert!(move1(&directed_cycle(3)).is_none());
    }

    #[test]
    fn nested_loop_is_not_innermost() {
        // Loop 0 encloses loop 1 on one side and the 2-cycle on the other.
        let g = PlanarDigraph::from_signed(2, &[(0, 0), (0, 0), (0, 1), (1, 0)], &[&[1, 2, -2, -1, 3, -4], &[-3, 4]])
            .unwrap();
        let (_, mv) = move1(&g).unwrap();
        assert_eq!(mv, Move::RemoveLoop { edge: 1, vertex: 0 });
    }

    #[test]
    fn move2_examples() {
        let (g, mv) = move2(&directed_cycle(3)).unwrap();
        assert!(iso_embedded(&g, &directed_cycle(2)));
        assert_eq!(mv, Move::Contract { edge: 0, tail: 0, head: 1 });
        for g in [g_beta(), g_gamma(), g_delta()] {
            assert!(move1(&g).is_none());
            assert!(move2(&g).is_none());
        }
    }

    #[test]
    fn reduce_cycle_trace() {
        let (g, trace) = reduce(&directed_cycle(3));
        assert!(iso_embedded(&g, &g_alpha()));
        assert!(matches!(trace[..], [Move::Contract { .. }, Move::Contract { .. }, Move::RemoveLoop { .. }]));
        // Recount after every step with the root carried along.
        let mut cur = directed_cycle(3);
        let mut root = 0;
        for mv in &trace {
            let before = count_arborescences_bruteforce(&cur, root);
            cur = match mv {
                Move::RemoveLoop { .. } => move1(&cur).unwrap().0,
                Move::Contract { .. } => move2(&cur).unwrap().0,
            };
            root = mv.map_vertex(root);
            assert_eq!(count_arborescences_bruteforce(&cur, root), before);
        }
        assert_eq!(map_through(&trace, 2), 0);
    }

    #[test]
    fn reduce_fixed_points() {
        let (g, trace) = reduce(&g_delta());
        assert!(trace.is_empty());
        assert_eq!(g, g_delta());
        let (g, trace) = reduce(&loops(2));
        assert!(iso_embedded(&g, &g_alpha()));
        assert_eq!(trace.len(), 2);
    }
}
