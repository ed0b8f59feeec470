//! Oriented link diagrams given by PD codes.
//!
//! `X(a,b,c,d)` lists the four arc-ends of a crossing counterclockwise,
//! starting with the incoming under-strand `a`, so the under-strand leaves
//! through `c`. Slots are numbered 0..4 in that order. Arc orientation comes
//! from label succession: along each component the labels form a contiguous
//! range and the arc after `x` is `x + 1` (wrapping to the smallest label).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// `(crossing, slot)`.
pub type Dart = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
    Unset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Arc labels in slot order.
    pub pd: [u32; 4],
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: usize,
    pub sign: i8,
}

impl Crossing {
    pub fn over_out(&self) -> usize {
        (self.over_in + 2) % 4
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub label: u32,
    pub tail: Dart,
    pub head: Dart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary in walk order; the face lies on the given side of each arc.
    pub boundary: Vec<(u32, ArcSide)>,
    /// Corners `(crossing, k)` met along the walk, where corner `k` sits
    /// between slots `k` and `k + 1`.
    pub corners: Vec<(usize, usize)>,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Turn {
    pub crossing: usize,
    pub in_slot: usize,
    pub out_slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertCircle {
    pub arcs: Vec<u32>,
    pub turns: Vec<Turn>,
    pub special: bool,
    pub inside_face: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DiagramFlags {
    pub alternating: bool,
    pub special: bool,
    pub positive: bool,
    pub negative: bool,
    pub reduced: bool,
    pub looks_prime: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenusData {
    pub s: i64,
    pub c: i64,
    pub chi: i64,
    pub one_minus_chi: i64,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pieces: Vec<Diagram>,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    arcs: Vec<Arc>,
    arc_index: BTreeMap<u32, usize>,
    components: Vec<Vec<u32>>,
    faces: Vec<Face>,
    corner_face: Vec<[usize; 4]>,
}

fn parse_tokens(text: &str) -> Result<Vec<[u32; 4]>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let body =
            rest.strip_prefix("X(").ok_or_else(|| Error::MalformedPd(format!("expected X( at {:?}", head(rest))))?;
        let close = body.find(')').ok_or_else(|| Error::MalformedPd("missing )".into()))?;
        let nums: Vec<&str> = body[..close].split(',').map(str::trim).collect();
        if nums.len() != 4 {
            return Err(Error::MalformedPd(format!("crossing needs 4 labels, got {:?}", &body[..close])));
        }
        let mut x = [0u32; 4];
        for (i, s) in nums.iter().enumerate() {
            x[i] = s
                .parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::MalformedPd(format!("bad label {s:?}")))?;
        }
        out.push(x);
        let after = &body[close + 1..];
        if !after.is_empty() && !after.starts_with(char::is_whitespace) {
            return Err(Error::MalformedPd(format!("expected whitespace at {:?}", head(after))));
        }
        rest = after.trim_start();
    }
    Ok(out)
}

fn head(s: &str) -> String {
    s.chars().take(12).collect()
}

/// Parses a whitespace separated list of `X(a,b,c,d)` tokens.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    Diagram::from_pd(&parse_tokens(text)?)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Diagram {
    pub fn from_pd(pd: &[[u32; 4]]) -> Result<Diagram> {
        let n = pd.len();
        let mut where_: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (v, x) in pd.iter().enumerate() {
            for (k, &l) in x.iter().enumerate() {
                where_.entry(l).or_default().push((v, k));
            }
        }
        for (l, ds) in &where_ {
            if ds.len() != 2 {
                return Err(Error::InvalidDiagram(format!("arc {l} appears {} times, expected 2", ds.len())));
            }
        }
        let labels: Vec<u32> = where_.keys().copied().collect();
        let idx: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        // Link components: arcs meeting at opposite slots lie on one strand.
        let mut dsu = Dsu::new(labels.len());
        for x in pd {
            dsu.union(idx[&x[0]], idx[&x[2]]);
            dsu.union(idx[&x[1]], idx[&x[3]]);
        }
        let mut comp_sets: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &l in &labels {
            comp_sets.entry(dsu.find(idx[&l])).or_default().push(l);
        }
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        let mut components = Vec::new();
        for ls in comp_sets.values() {
            let (lo, hi) = (ls[0], *ls.last().unwrap());
            if (hi - lo) as usize + 1 != ls.len() {
                return Err(Error::InvalidDiagram(format!("component labels {ls:?} are not a contiguous range")));
            }
            for &l in ls {
                next.insert(l, if l == hi { lo } else { l + 1 });
            }
            components.push(ls.clone());
        }

        // Over-strand direction. A literal `+1` step takes precedence over a
        // wrap-around step, which settles two-arc components; the result is
        // then validated globally through head/tail uniqueness.
        let mut over_in = vec![0usize; n];
        let mut head_of: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        let mut tail_of: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (v, x) in pd.iter().enumerate() {
            if x[2] != next[&x[0]] {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {}: under-strand {} -> {} breaks label succession",
                    v + 1,
                    x[0],
                    x[2]
                )));
            }
            let (b, d) = (x[1], x[3]);
            over_in[v] = if d == b + 1 {
                1
            } else if b == d + 1 {
                3
            } else if d == next[&b] {
                1
            } else if b == next[&d] {
                3
            } else {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {}: over-strand {} / {} breaks label succession",
                    v + 1,
                    b,
                    d
                )));
            };
            let s = over_in[v];
            head_of.entry(x[0]).or_default().push((v, 0));
            tail_of.entry(x[2]).or_default().push((v, 2));
            head_of.entry(x[s]).or_default().push((v, s));
            tail_of.entry(x[(s + 2) % 4]).or_default().push((v, (s + 2) % 4));
        }
        let mut arcs = Vec::with_capacity(labels.len());
        for &l in &labels {
            let h = head_of.get(&l).cloned().unwrap_or_default();
            let t = tail_of.get(&l).cloned().unwrap_or_default();
            if h.len() != 1 || t.len() != 1 {
                return Err(Error::InvalidDiagram(format!("arc {l} has {} heads and {} tails", h.len(), t.len())));
            }
            arcs.push(Arc { label: l, tail: t[0], head: h[0] });
        }

        let crossings: Vec<Crossing> = pd
            .iter()
            .zip(&over_in)
            .map(|(x, &s)| Crossing { pd: *x, over_in: s, sign: if s == 3 { 1 } else { -1 } })
            .collect();

        // Connectivity of the 4-valent graph.
        let mut cdsu = Dsu::new(n);
        for a in &arcs {
            cdsu.union(a.tail.0, a.head.0);
        }
        if (0..n).any(|v| cdsu.find(v) != cdsu.find(0)) {
            return Err(Error::InvalidDiagram("diagram is disconnected".into()));
        }

        // Order each component along its orientation.
        let components = components
            .into_iter()
            .map(|ls| {
                let mut seq = vec![ls[0]];
                while seq.len() < ls.len() {
                    seq.push(next[seq.last().unwrap()]);
                }
                seq
            })
            .collect();

        let mut d = Diagram { crossings, arcs, arc_index: idx, components, faces: Vec::new(), corner_face: Vec::new() };
        d.trace_faces()?;
        Ok(d)
    }

    fn trace_faces(&mut self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            let empty = Face { boundary: vec![], corners: vec![], color: Color::Unset };
            self.faces = vec![empty.clone(), empty];
            return Ok(());
        }
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut face = Face { boundary: vec![], corners: vec![], color: Color::Unset };
            let mut d = start;
            loop {
                face_of[d] = fid;
                let (v, k) = (d / 4, d % 4);
                let a = self.arc_at((v, k));
                let side = if a.tail == (v, k) { ArcSide::Right } else { ArcSide::Left };
                face.boundary.push((a.label, side));
                let (w, j) = if a.tail == (v, k) { a.head } else { a.tail };
                face.corners.push((w, j));
                d = 4 * w + (j + 1) % 4;
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        if faces.len() != n + 2 {
            return Err(Error::InvalidDiagram(format!("PD is not planar: {} faces for {} crossings", faces.len(), n)));
        }
        self.corner_face = (0..n)
            .map(|v| {
                let mut c = [0; 4];
                for (k, slot) in c.iter_mut().enumerate() {
                    *slot = face_of[4 * v + (k + 1) % 4];
                }
                c
            })
            .collect();
        self.faces = faces;
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, label: u32) -> &Arc {
        &self.arcs[self.arc_index[&label]]
    }

    /// The arc whose end sits at `dart`.
    pub fn arc_at(&self, dart: Dart) -> &Arc {
        self.arc(self.crossings[dart.0].pd[dart.1])
    }

    /// Components as label sequences in orientation order.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face containing corner `k` (between slots `k` and `k + 1`) of crossing `v`.
    pub fn corner_face(&self, v: usize, k: usize) -> usize {
        self.corner_face[v][k]
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn pd(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.pd).collect()
    }

    pub fn pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c.pd[0], c.pd[1], c.pd[2], c.pd[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Face on the given side of an arc.
    pub fn face_beside(&self, label: u32, side: ArcSide) -> usize {
        let a = self.arc(label);
        // Leaving through the tail traces the face on the right; leaving
        // through the head traces the face on the left.
        let (v, s) = match side {
            ArcSide::Right => a.tail,
            ArcSide::Left => a.head,
        };
        self.corner_face[v][(s + 3) % 4]
    }

    /// Pairs of distinct faces sharing an arc, sorted.
    pub fn adjacent_face_pairs(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for a in &self.arcs {
            let l = self.face_beside(a.label, ArcSide::Left);
            let r = self.face_beside(a.label, ArcSide::Right);
            if l != r {
                set.insert((l.min(r), l.max(r)));
            }
        }
        set.into_iter().collect()
    }

    pub fn faces_adjacent(&self, p: usize, q: usize) -> bool {
        self.adjacent_face_pairs().contains(&(p.min(q), p.max(q)))
    }

    pub fn seifert_circles(&self) -> Vec<SeifertCircle> {
        if self.crossings.is_empty() {
            return vec![SeifertCircle { arcs: vec![], turns: vec![], special: true, inside_face: Some(0) }];
        }
        let mut seen = BTreeSet::new();
        let mut circles = Vec::new();
        for start in &self.arcs {
            if seen.contains(&start.label) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut turns = Vec::new();
            let mut a = start;
            loop {
                seen.insert(a.label);
                arcs.push(a.label);
                let (v, j) = a.head;
                let c = &self.crossings[v];
                let out = if j == 0 { c.over_out() } else { 2 };
                turns.push(Turn { crossing: v, in_slot: j, out_slot: out });
                a = self.arc_at((v, out));
                if a.label == start.label {
                    break;
                }
            }
            let inside_face = [ArcSide::Right, ArcSide::Left].iter().find_map(|&side| {
                let f = self.face_beside(arcs[0], side);
                let mut want: Vec<(u32, ArcSide)> = arcs.iter().map(|&l| (l, side)).collect();
                let mut have = self.faces[f].boundary.clone();
                want.sort();
                have.sort();
                (want == have).then_some(f)
            });
            circles.push(SeifertCircle { arcs, turns, special: inside_face.is_some(), inside_face });
        }
        circles
    }

    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|comp| {
            let kinds: Vec<bool> = comp.iter().map(|&l| self.arc(l).head.1 == 0).collect();
            (0..kinds.len()).all(|i| kinds[i] != kinds[(i + 1) % kinds.len()])
        })
    }

    /// Crossings at which one face occupies two corners.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&v| {
                let fs: BTreeSet<usize> = self.corner_face[v].iter().copied().collect();
                fs.len() < 4
            })
            .collect()
    }

    fn connected_without(&self, removed: &[usize]) -> Option<Vec<bool>> {
        let n = self.crossings.len();
        let mut adj = vec![Vec::new(); n];
        for (i, a) in self.arcs.iter().enumerate() {
            if !removed.contains(&i) {
                adj[a.tail.0].push(a.head.0);
                adj[a.head.0].push(a.tail.0);
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            None
        } else {
            Some(seen)
        }
    }

    /// First pair of arcs (by index) whose removal disconnects the crossings,
    /// with the side containing crossing 0.
    pub fn two_edge_cut(&self) -> Option<(u32, u32, Vec<bool>)> {
        let m = self.arcs.len();
        for i in 0..m {
            for j in i + 1..m {
                if let Some(side) = self.connected_without(&[i, j]) {
                    return Some((self.arcs[i].label, self.arcs[j].label, side));
                }
            }
        }
        None
    }

    pub fn classify(&self) -> DiagramFlags {
        classify_diagram(self)
    }

    /// Crossing-changed mirror image. Arcs are relabelled so the result
    /// satisfies the label-succession rule.
    pub fn reflect(&self) -> Diagram {
        // The old over-strand entry becomes slot 0.
        let shift: Vec<usize> = self.crossings.iter().map(|c| c.over_in).collect();
        let over_in: Vec<usize> = shift.iter().map(|&s| (4 - s) % 4).collect();
        let moved = |(v, k): Dart| (v, (k + 4 - shift[v]) % 4);
        let arcs: Vec<(Dart, Dart)> = self.arcs.iter().map(|a| (moved(a.tail), moved(a.head))).collect();
        Diagram::from_darts(&over_in, &arcs).expect("mirror of a valid diagram is valid")
    }

    pub fn genus_data(&self) -> GenusData {
        genus_data(self)
    }

    /// Face colouring: faces bounded by Seifert circles are black.
    pub fn checkerboard(&self) -> Result<Diagram> {
        checkerboard(self)
    }

    pub fn face_colors(&self) -> Vec<Color> {
        self.faces.iter().map(|f| f.color).collect()
    }

    /// Builds a diagram from crossings (given by over-strand entry slot) and
    /// arcs joining a tail dart to a head dart, relabelling arcs by walking
    /// the components.
    pub fn from_darts(over_in: &[usize], arcs: &[(Dart, Dart)]) -> Result<Diagram> {
        let n = over_in.len();
        let mut by_tail: BTreeMap<Dart, usize> = BTreeMap::new();
        for (i, &(t, _)) in arcs.iter().enumerate() {
            by_tail.insert(t, i);
        }
        let mut label = vec![0u32; arcs.len()];
        let mut next_label = 1;
        // Starting each component just after an under-passage keeps the
        // wrap-around step on an under-strand.
        let mut starts: Vec<usize> = (0..arcs.len()).filter(|&i| arcs[i].0 .1 == 2).collect();
        starts.extend(0..arcs.len());
        for start in starts {
            if label[start] != 0 {
                continue;
            }
            let mut i = start;
            while label[i] == 0 {
                label[i] = next_label;
                next_label += 1;
                let (v, j) = arcs[i].1;
                i = *by_tail.get(&(v, (j + 2) % 4)).ok_or_else(|| Error::InvalidDiagram("dangling strand".into()))?;
            }
        }
        let mut pd = vec![[0u32; 4]; n];
        for (i, &(t, h)) in arcs.iter().enumerate() {
            pd[t.0][t.1] = label[i];
            pd[h.0][h.1] = label[i];
        }
        let d = Diagram::from_pd(&pd)?;
        debug_assert!(d.crossings.iter().zip(over_in).all(|(c, &s)| c.over_in == s));
        Ok(d)
    }

    fn dart_arcs(&self) -> Vec<(Dart, Dart)> {
        self.arcs.iter().map(|a| (a.tail, a.head)).collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pd_string())
    }
}

pub fn seifert_circles(d: &Diagram) -> Vec<SeifertCircle> {
    d.seifert_circles()
}

pub fn classify_diagram(d: &Diagram) -> DiagramFlags {
    let signs = d.signs();
    DiagramFlags {
        alternating: d.is_alternating(),
        special: d.seifert_circles().iter().all(|c| c.special),
        positive: signs.iter().all(|&s| s > 0),
        negative: signs.iter().all(|&s| s < 0),
        reduced: d.nugatory_crossings().is_empty(),
        looks_prime: d.num_crossings() == 0 || d.two_edge_cut().is_none(),
    }
}

pub fn genus_data(d: &Diagram) -> GenusData {
    let s = d.seifert_circles().len() as i64;
    let c = d.num_crossings() as i64;
    GenusData { s, c, chi: s - c, one_minus_chi: c - s + 1 }
}

pub fn checkerboard(d: &Diagram) -> Result<Diagram> {
    let circles = d.seifert_circles();
    if circles.iter().any(|c| !c.special) {
        return Err(Error::Unsupported("diagram is not special".into()));
    }
    let mut out = d.clone();
    if d.num_crossings() == 0 {
        out.faces[0].color = Color::Black;
        out.faces[1].color = Color::White;
        return Ok(out);
    }
    let nf = d.faces.len();
    let mut adj = vec![Vec::new(); nf];
    for a in &d.arcs {
        let l = d.face_beside(a.label, ArcSide::Left);
        let r = d.face_beside(a.label, ArcSide::Right);
        if l == r {
            return Err(Error::ColoringConflict);
        }
        adj[l].push(r);
        adj[r].push(l);
    }
    let root = circles[0].inside_face.unwrap();
    let mut color = vec![Color::Unset; nf];
    color[root] = Color::Black;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let other = if color[f] == Color::Black { Color::White } else { Color::Black };
        for &g in &adj[f] {
            if color[g] == Color::Unset {
                color[g] = other;
                queue.push_back(g);
            } else if color[g] != other {
                return Err(Error::ColoringConflict);
            }
        }
    }
    let black: BTreeSet<usize> = circles.iter().filter_map(|c| c.inside_face).collect();
    for (f, c) in color.iter().enumerate() {
        if (*c == Color::Black) != black.contains(&f) {
            return Err(Error::ColoringConflict);
        }
    }
    for (face, c) in out.faces.iter_mut().zip(color) {
        face.color = c;
    }
    Ok(out)
}

/// Splits at two-arc cuts and along non-special Seifert circles until every
/// piece is prime and special.
pub fn decompose(d: &Diagram) -> Decomposition {
    let mut pieces = Vec::new();
    let mut trace = Vec::new();
    decompose_into(d, "D".to_string(), &mut pieces, &mut trace);
    Decomposition { pieces, trace }
}

fn decompose_into(d: &Diagram, name: String, pieces: &mut Vec<Diagram>, trace: &mut Vec<String>) {
    if d.num_crossings() > 0 {
        if let Some((a, b, side)) = d.two_edge_cut() {
            let (p1, p2) = split_connected_sum(d, a, b, &side);
            trace.push(format!(
                "{name} = {name}.1 # {name}.2 (cut at arcs {a} and {b}; {} + {} crossings)",
                p1.num_crossings(),
                p2.num_crossings()
            ));
            decompose_into(&p1, format!("{name}.1"), pieces, trace);
            decompose_into(&p2, format!("{name}.2"), pieces, trace);
            return;
        }
        let circles = d.seifert_circles();
        if let Some((ci, c)) = circles.iter().enumerate().find(|(_, c)| !c.special) {
            let (p1, p2) = split_star_product(d, c);
            trace.push(format!(
                "{name} = {name}.1 * {name}.2 (split along Seifert circle {ci} with arcs {:?}; {} + {} crossings)",
                c.arcs,
                p1.num_crossings(),
                p2.num_crossings()
            ));
            decompose_into(&p1, format!("{name}.1"), pieces, trace);
            decompose_into(&p2, format!("{name}.2"), pieces, trace);
            return;
        }
    }
    trace.push(format!("{name} is prime and special: {}", d.pd_string()));
    pieces.push(d.clone());
}

fn sub_diagram(d: &Diagram, keep: &[bool], arcs: Vec<(Dart, Dart)>) -> Diagram {
    let mut new_index = vec![usize::MAX; keep.len()];
    let mut over_in = Vec::new();
    for (v, &k) in keep.iter().enumerate() {
        if k {
            new_index[v] = over_in.len();
            over_in.push(d.crossings[v].over_in);
        }
    }
    let arcs: Vec<(Dart, Dart)> =
        arcs.into_iter().map(|((tv, ts), (hv, hs))| ((new_index[tv], ts), (new_index[hv], hs))).collect();
    Diagram::from_darts(&over_in, &arcs).expect("split pieces are valid diagrams")
}

fn split_connected_sum(d: &Diagram, a: u32, b: u32, side: &[bool]) -> (Diagram, Diagram) {
    let (ea, eb) = (d.arc(a).clone(), d.arc(b).clone());
    // One cut arc leaves the first side, the other returns to it.
    let (out_arc, in_arc) = if side[ea.tail.0] { (ea, eb) } else { (eb, ea) };
    let mut arcs1 = Vec::new();
    let mut arcs2 = Vec::new();
    for (t, h) in d.dart_arcs() {
        if (t, h) == (out_arc.tail, out_arc.head) || (t, h) == (in_arc.tail, in_arc.head) {
            continue;
        }
        if side[t.0] {
            arcs1.push((t, h));
        } else {
            arcs2.push((t, h));
        }
    }
    arcs1.push((out_arc.tail, in_arc.head));
    arcs2.push((in_arc.tail, out_arc.head));
    let other: Vec<bool> = side.iter().map(|s| !s).collect();
    (sub_diagram(d, side, arcs1), sub_diagram(d, &other, arcs2))
}

fn split_star_product(d: &Diagram, c: &SeifertCircle) -> (Diagram, Diagram) {
    let n = d.num_crossings();
    let on_circle: BTreeSet<u32> = c.arcs.iter().copied().collect();
    // Components of the diagram with the circle's arcs removed.
    let mut dsu = Dsu::new(n);
    for a in &d.arcs {
        if !on_circle.contains(&a.label) {
            dsu.union(a.tail.0, a.head.0);
        }
    }
    // Side (true = left of the circle) of the other strand at each turn.
    let mut comp_side: BTreeMap<usize, bool> = BTreeMap::new();
    for t in &c.turns {
        let left = t.out_slot == (t.in_slot + 1) % 4;
        let r = dsu.find(t.crossing);
        let prev = comp_side.insert(r, left);
        assert!(prev.is_none_or(|p| p == left), "inconsistent sides of a Seifert circle");
    }
    let side: Vec<bool> = (0..n).map(|v| comp_side[&dsu.find(v)]).collect();
    let piece = |want: bool| {
        let keep: Vec<bool> = side.iter().map(|&s| s == want).collect();
        let mut arcs: Vec<(Dart, Dart)> = d
            .arcs
            .iter()
            .filter(|a| !on_circle.contains(&a.label) && keep[a.tail.0])
            .map(|a| (a.tail, a.head))
            .collect();
        let kept: Vec<&Turn> = c.turns.iter().filter(|t| keep[t.crossing]).collect();
        for (i, t) in kept.iter().enumerate() {
            let nx = kept[(i + 1) % kept.len()];
            arcs.push(((t.crossing, t.out_slot), (nx.crossing, nx.in_slot)));
        }
        sub_diagram(d, &keep, arcs)
    };
    (piece(true), piece(false))
}
