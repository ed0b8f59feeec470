//! Directed multigraphs embedded in the sphere by a rotation system.
//!
//! Loops and multiple edges are allowed. Each vertex stores the
//! counterclockwise cyclic order of the edge-ends incident to it.

mod count;
mod iso;
mod moves;
mod reference;

pub use count::{
    arborescence_with_leaf, arborescences, count_arborescences_bruteforce, count_arborescences_delcon,
    count_arborescences_matrixtree, laplacian_minor_det, Laplacian,
};
pub use iso::{iso_embedded, iso_up_to_reflection};
pub use moves::{map_through, move1, move2, reduce, Move};
pub use reference::{g_alpha, g_beta, g_delta, g_gamma};

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

impl EdgeEnd {
    pub fn tail(edge: usize) -> Self {
        EdgeEnd { edge, end: End::Tail }
    }
    pub fn head(edge: usize) -> Self {
        EdgeEnd { edge, end: End::Head }
    }
    fn dart(self) -> usize {
        2 * self.edge + (self.end == End::Head) as usize
    }
    fn from_dart(d: usize) -> Self {
        EdgeEnd { edge: d / 2, end: if d.is_multiple_of(2) { End::Tail } else { End::Head } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Edge tag used for Crowell's partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeTag {
    H,
    K,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarDigraph {
    n: usize,
    edges: Vec<Edge>,
    rotation: Vec<Vec<EdgeEnd>>,
    tags: Vec<Option<EdgeTag>>,
}

impl PlanarDigraph {
    /// Builds a graph and checks that the rotation lists every edge-end
    /// exactly once, at the right vertex.
    pub fn new(n: usize, edges: Vec<Edge>, rotation: Vec<Vec<EdgeEnd>>) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::Graph(format!("rotation has {} vertices, expected {n}", rotation.len())));
        }
        let mut seen = vec![false; 2 * edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for &ee in rot {
                let e = edges.get(ee.edge).ok_or_else(|| Error::Graph(format!("unknown edge {}", ee.edge)))?;
                let at = if ee.end == End::Tail { e.tail } else { e.head };
                if at != v {
                    return Err(Error::Graph(format!(
                        "edge-end {:?} of edge {} listed at vertex {v}, belongs to {at}",
                        ee.end, ee.edge
                    )));
                }
                if std::mem::replace(&mut seen[ee.dart()], true) {
                    return Err(Error::Graph(format!("edge-end of edge {} listed twice", ee.edge)));
                }
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::Graph(format!("edge-end of edge {} missing from rotation", d / 2)));
        }
        let m = edges.len();
        Ok(PlanarDigraph { n, edges, rotation, tags: vec![None; m] })
    }

    /// Convenience constructor from `(tail, head)` pairs and rotations given
    /// as signed edge references: `+e` for the tail of `e`, `-e` for its head,
    /// with edges numbered from 1.
    pub fn from_signed(n: usize, edges: &[(usize, usize)], rotation: &[&[i64]]) -> Result<Self> {
        let edges = edges.iter().map(|&(tail, head)| Edge { tail, head }).collect();
        let rotation = rotation
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        let e = (x.unsigned_abs() - 1) as usize;
                        if x > 0 {
                            EdgeEnd::tail(e)
                        } else {
                            EdgeEnd::head(e)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(n, edges, rotation)
    }

    /// A graph whose rotation lists edge-ends in edge order. Useful when only
    /// the abstract digraph matters.
    pub fn unembedded(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rotation = vec![Vec::new(); n];
        for (i, &(t, h)) in edges.iter().enumerate() {
            if t >= n || h >= n {
                return Err(Error::Graph(format!("edge {i} has an endpoint outside 0..{n}")));
            }
            rotation[t].push(EdgeEnd::tail(i));
            rotation[h].push(EdgeEnd::head(i));
        }
        let edges = edges.iter().map(|&(tail, head)| Edge { tail, head }).collect();
        Self::new(n, edges, rotation)
    }

    pub fn with_tags(mut self, tags: Vec<Option<EdgeTag>>) -> Self {
        assert_eq!(tags.len(), self.edges.len());
        self.tags = tags;
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn rotation(&self, v: usize) -> &[EdgeEnd] {
        &self.rotation[v]
    }

    pub fn tags(&self) -> &[Option<EdgeTag>] {
        &self.tags
    }

    pub fn tag(&self, e: usize) -> Option<EdgeTag> {
        self.tags[e]
    }

    /// Number of edges ending at `v`, loops included.
    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); 2 * self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, ee) in rot.iter().enumerate() {
                pos[ee.dart()] = (v, i);
            }
        }
        pos
    }

    /// Face boundaries as sequences of edge-ends: each entry is the end the
    /// walk leaves from. Isolated vertices contribute one empty face.
    pub fn faces(&self) -> Vec<Vec<EdgeEnd>> {
        let pos = self.positions();
        let sigma = |d: usize| {
            let (v, i) = pos[d];
            let r = &self.rotation[v];
            r[(i + 1) % r.len()].dart()
        };
        let mut seen = vec![false; 2 * self.edges.len()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(EdgeEnd::from_dart(d));
                d = sigma(d ^ 1);
            }
            faces.push(face);
        }
        for rot in &self.rotation {
            if rot.is_empty() {
                faces.push(Vec::new());
            }
        }
        faces
    }

    pub fn face_lengths(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    fn undirected_reach(&self, from: usize, skip_vertex: Option<usize>, skip_edges: &[usize]) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if !skip_edges.contains(&i) {
                adj[e.tail].push(e.head);
                adj[e.head].push(e.tail);
            }
        }
        let mut seen = vec![false; self.n];
        if let Some(s) = skip_vertex {
            seen[s] = true;
        }
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.undirected_reach(0, None, &[]).iter().all(|&s| s)
    }

    /// Connected, with Euler characteristic 2.
    pub fn is_genus_zero(&self) -> bool {
        self.is_connected() && self.n as i64 - self.edges.len() as i64 + self.faces().len() as i64 == 2
    }

    /// Vertex sets of the connected components, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for v in 0..self.n {
            if comp[v] != usize::MAX {
                continue;
            }
            let reach = self.undirected_reach(v, None, &[]);
            let members: Vec<usize> = (0..self.n).filter(|&w| reach[w]).collect();
            for &w in &members {
                comp[w] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// The subgraph on a vertex set closed under adjacency, renumbered.
    pub fn induced(&self, vertices: &[usize]) -> PlanarDigraph {
        let mut vmap = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            vmap[v] = i;
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        let mut tags = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if vmap[e.tail] != usize::MAX {
                emap[i] = edges.len();
                edges.push(Edge { tail: vmap[e.tail], head: vmap[e.head] });
                tags.push(self.tags[i]);
            }
        }
        let rotation = vertices
            .iter()
            .map(|&v| self.rotation[v].iter().map(|ee| EdgeEnd { edge: emap[ee.edge], end: ee.end }).collect())
            .collect();
        PlanarDigraph { n: vertices.len(), edges, rotation, tags }
    }

    /// Every vertex reaches every other along directed paths.
    pub fn is_o_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut adj = vec![Vec::new(); self.n];
            for e in &self.edges {
                if forward {
                    adj[e.tail].push(e.head);
                } else {
                    adj[e.head].push(e.tail);
                }
            }
            let mut seen = vec![false; self.n];
            seen[0] = true;
            let mut q = VecDeque::from([0]);
            while let Some(v) = q.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// No loop, no cut vertex, and no set of at most two edges whose removal
    /// separates the vertices.
    pub fn is_prime(&self) -> bool {
        if !self.is_connected() || self.has_loop() {
            return false;
        }
        if self.n >= 3 {
            for v in 0..self.n {
                let start = if v == 0 { 1 } else { 0 };
                if !self.undirected_reach(start, Some(v), &[]).iter().all(|&s| s) {
                    return false;
                }
            }
        }
        if self.n >= 2 {
            let m = self.edges.len();
            for i in 0..m {
                if !self.undirected_reach(0, None, &[i]).iter().all(|&s| s) {
                    return false;
                }
                for j in i + 1..m {
                    if !self.undirected_reach(0, None, &[i, j]).iter().all(|&s| s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Incoming and outgoing edge-ends alternate around `v`.
    pub fn alternates_at(&self, v: usize) -> bool {
        let r = &self.rotation[v];
        (0..r.len()).all(|i| r[i].end != r[(i + 1) % r.len()].end)
    }

    pub fn alternates(&self) -> bool {
        (0..self.n).all(|v| self.alternates_at(v))
    }

    /// Membership in Γ: connected, spherical, prime, alternating at every
    /// vertex.
    pub fn gamma_member(&self) -> bool {
        self.is_connected() && self.is_genus_zero() && self.is_prime() && self.alternates()
    }

    /// Mirror image: every rotation reversed.
    pub fn reflect(&self) -> PlanarDigraph {
        let mut g = self.clone();
        for r in &mut g.rotation {
            r.reverse();
        }
        g
    }

    /// Removes edge `e`; higher edge ids shift down by one.
    pub fn delete(&self, e: usize) -> Result<PlanarDigraph> {
        if e >= self.edges.len() {
            return Err(Error::Graph(format!("no edge {e}")));
        }
        let fix = |ee: &EdgeEnd| EdgeEnd { edge: if ee.edge > e { ee.edge - 1 } else { ee.edge }, end: ee.end };
        let rotation = self.rotation.iter().map(|r| r.iter().filter(|ee| ee.edge != e).map(fix).collect()).collect();
        let mut edges = self.edges.clone();
        edges.remove(e);
        let mut tags = self.tags.clone();
        tags.remove(e);
        Ok(PlanarDigraph { n: self.n, edges, rotation, tags })
    }

    /// Contracts the non-loop edge `e` into its tail. The head's rotation is
    /// spliced into the tail's in place of `e`, which keeps the embedding.
    /// The head vertex disappears and higher vertex ids shift down by one.
    pub fn contract(&self, e: usize) -> Result<PlanarDigraph> {
        let Some(&Edge { tail: u, head: w }) = self.edges.get(e) else {
            return Err(Error::Graph(format!("no edge {e}")));
        };
        if u == w {
            return Err(Error::Graph(format!("cannot contract loop {e}")));
        }
        let ru = &self.rotation[u];
        let rw = &self.rotation[w];
        let i = ru.iter().position(|&x| x == EdgeEnd::tail(e)).unwrap();
        let j = rw.iter().position(|&x| x == EdgeEnd::head(e)).unwrap();
        let mut merged: Vec<EdgeEnd> = ru[..i].to_vec();
        merged.extend(rw[j + 1..].iter().chain(&rw[..j]).copied());
        merged.extend_from_slice(&ru[i + 1..]);
        let mut rotation = self.rotation.clone();
        rotation[u] = merged;
        rotation.remove(w);
        let vfix = |x: usize| {
            let x = if x == w { u } else { x };
            if x > w {
                x - 1
            } else {
                x
            }
        };
        let efix = |x: usize| if x > e { x - 1 } else { x };
        let rotation = rotation
            .into_iter()
            .map(|r| r.into_iter().map(|ee| EdgeEnd { edge: efix(ee.edge), end: ee.end }).collect())
            .collect();
        let mut edges: Vec<Edge> = self.edges.iter().map(|x| Edge { tail: vfix(x.tail), head: vfix(x.head) }).collect();
        edges.remove(e);
        let mut tags = self.tags.clone();
        tags.remove(e);
        Ok(PlanarDigraph { n: self.n - 1, edges, rotation, tags })
    }

    /// Graphviz rendering; tagged edges are labelled and coloured.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let attrs = match self.tags[i] {
                Some(EdgeTag::H) => format!("label=\"e{i} H\", color=red"),
                Some(EdgeTag::K) => format!("label=\"e{i} K\", color=blue"),
                None => format!("label=\"e{i}\""),
            };
            let _ = writeln!(s, "  {} -> {} [{attrs}];", e.tail, e.head);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: (0..self.n).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeJson { id, tail: e.tail, head: e.head, tag: self.tags[id] })
                .collect(),
            rotation: self.rotation.iter().cloned().enumerate().collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let n = j.vertices.len();
        if j.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Malformed("vertices must be 0..n in order".into()));
        }
        let mut edges = Vec::new();
        let mut tags = Vec::new();
        for (i, e) in j.edges.iter().enumerate() {
            if e.id != i {
                return Err(Error::Malformed("edge ids must be 0..m in order".into()));
            }
            edges.push(Edge { tail: e.tail, head: e.head });
            tags.push(e.tag);
        }
        let mut rotation = vec![Vec::new(); n];
        for (&v, r) in &j.rotation {
            if v >= n {
                return Err(Error::Malformed(format!("rotation for unknown vertex {v}")));
            }
            rotation[v] = r.clone();
        }
        Ok(Self::new(n, edges, rotation)?.with_tags(tags))
    }
}

/// JSON form `{vertices, edges: [{id, tail, head}], rotation: {vertex: [...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeJson>,
    pub rotation: BTreeMap<usize, Vec<EdgeEnd>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<EdgeTag>,
}

impl Serialize for PlanarDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        PlanarDigraph::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Directed cycle on `k` vertices, `i -> i + 1`.
pub fn directed_cycle(k: usize) -> PlanarDigraph {
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let rotation: Vec<Vec<EdgeEnd>> = (0..k).map(|i| vec![EdgeEnd::tail(i), EdgeEnd::head((i + k - 1) % k)]).collect();
    let edges = edges.into_iter().map(|(tail, head)| Edge { tail, head }).collect();
    PlanarDigraph::new(k, edges, rotation).expect("cycle is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_validation() {
        assert!(PlanarDigraph::from_signed(2, &[(0, 1)], &[&[1], &[-1]]).is_ok());
        assert!(PlanarDigraph::from_signed(2, &[(0, 1)], &[&[1], &[]]).is_err());
        assert!(PlanarDigraph::from_signed(2, &[(0, 1)], &[&[-1], &[1]]).is_err());
        assert!(PlanarDigraph::from_signed(1, &[(0, 0)], &[&[1, -1, 1]]).is_err());
    }

    #[test]
    fn cycle_faces_and_connectivity() {
        let c = directed_cycle(3);
        assert!(c.is_genus_zero());
        assert_eq!(c.face_lengths(), vec![3, 3]);
        assert!(c.is_o_connected());
        assert!(!c.is_prime());
        assert!(!PlanarDigraph::unembedded(2, &[(0, 1)]).unwrap().is_o_connected());
    }

    #[test]
    fn contract_cycle_edge() {
        let c = directed_cycle(3).contract(0).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.num_edges(), 2);
        assert!(c.is_genus_zero());
        assert!(iso_embedded(&c, &directed_cycle(2)));
        let l = c.contract(0).unwrap();
        assert_eq!(l.num_vertices(), 1);
        assert!(l.has_loop());
        assert!(matches!(l.contract(0), Err(Error::Graph(_))));
    }

    #[test]
    fn delete_keeps_other_ends() {
        let g = g_gamma();
        for e in 0..g.num_edges() {
            let h = g.delete(e).unwrap();
            assert_eq!(h.num_edges(), 5);
            assert!(h.is_genus_zero());
        }
    }

    #[test]
    fn primality_examples() {
        assert!(g_alpha().is_prime());
        assert!(g_beta().is_prime());
        assert!(g_gamma().is_prime());
        assert!(g_delta().is_prime());
        let loop1 = PlanarDigraph::from_signed(1, &[(0, 0)], &[&[1, -1]]).unwrap();
        assert!(!loop1.is_prime());
    }

    #[test]
    fn gamma_examples() {
        assert!(g_alpha().gamma_member());
        assert!(g_beta().gamma_member());
        assert!(!directed_cycle(3).gamma_member());
        // Reversing one edge of the triangle graph breaks alternation.
        let d = g_delta();
        let mut edges = d.edges().to_vec();
        let e0 = edges[0];
        edges[0] = Edge { tail: e0.head, head: e0.tail };
        let rotation: Vec<Vec<EdgeEnd>> = (0..3)
            .map(|v| {
                d.rotation(v)
                    .iter()
                    .map(|&ee| {
                        if ee.edge == 0 {
                            EdgeEnd { edge: 0, end: if ee.end == End::Tail { End::Head } else { End::Tail } }
                        } else {
                            ee
                        }
                    })
                    .collect()
            })
            .collect();
        let flipped = PlanarDigraph::new(3, edges, rotation).unwrap();
        assert!(flipped.is_genus_zero() && flipped.is_prime());
        assert!(!flipped.gamma_member());
    }

    #[test]
    fn json_round_trip() {
        for g in [g_alpha(), g_beta(), g_gamma(), g_delta(), directed_cycle(4)] {
            let s = serde_json::to_string(&g).unwrap();
            let back: PlanarDigraph = serde_json::from_str(&s).unwrap();
            assert_eq!(back, g);
        }
        let tagged = directed_cycle(2).with_tags(vec![Some(EdgeTag::H), Some(EdgeTag::K)]);
        let s = serde_json::to_string(&tagged).unwrap();
        assert!(s.contains("\"tag\":\"H\""));
        assert_eq!(serde_json::from_str::<PlanarDigraph>(&s).unwrap(), tagged);
    }

    #[test]
    fn dot_output() {
        let tagged = directed_cycle(2).with_tags(vec![Some(EdgeTag::H), Some(EdgeTag::K)]);
        let dot = tagged.to_dot("c2");
        assert!(dot.starts_with("digraph \"c2\" {"));
        assert!(dot.contains("0 -> 1 [label=\"e0 H\", color=red];"));
        assert!(dot.contains("1 -> 0 [label=\"e1 K\", color=blue];"));
    }
}
