//! Pointed labeled Serre graphs: folding, trimming, core computation,
//! Whitehead edge sets, subgroup graphs, membership and morphisms.
//!
//! Edges are stored as oriented pairs: positive edge `k` carries a positive
//! generator label; half-edge `2k` traverses it forward and `2k+1` backward.
//! The involution is `h ^ 1` and the initial-vertex map is [`LabeledGraph::init`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::words::{Gen, Letter, LetterPair, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("operation requires a folded graph")]
    NotFolded,
    #[error("identity generator is not allowed here")]
    IdentityGenerator,
    #[error("fold precondition violated: need ι(e)=ι(f), label(e)=label(f), e≠f")]
    FoldPrecondition,
    #[error("trim precondition violated: vertex must be degree one and not the basepoint")]
    TrimPrecondition,
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid id in graph data")]
    BadId,
    #[error("core-by-folding hypothesis violated at vertex {0}")]
    FoldingOnlyHypothesis(u32),
    #[error("word is not a path in the graph")]
    NotAPath,
}

pub type VertexId = u32;
/// Half-edge id; `h ^ 1` is the reverse, `h >> 1` the underlying edge.
pub type EdgeId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct PosEdge {
    from: VertexId,
    to: VertexId,
    gen: Gen,
}

/// A connected, pointed labeled graph. Immutable after construction; all
/// operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n_vertices: u32,
    basepoint: VertexId,
    edges: Vec<PosEdge>,
    /// per vertex: (letter, half-edge) sorted by letter, ties by half-edge
    out: Vec<Vec<(Letter, EdgeId)>>,
}

/// Undirected label pairs over all 2-paths of a graph.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct WhiteheadEdgeSet(BTreeSet<LetterPair>);

impl WhiteheadEdgeSet {
    pub fn new() -> Self {
        WhiteheadEdgeSet(BTreeSet::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = LetterPair>>(pairs: I) -> Self {
        WhiteheadEdgeSet(pairs.into_iter().collect())
    }

    /// The full Whitehead edge set over an alphabet: all unordered pairs of
    /// distinct letters (x.x⁻¹ included, x.x excluded by construction).
    pub fn full<I: IntoIterator<Item = Gen>>(gens: I) -> Self {
        let letters: Vec<Letter> = gens
            .into_iter()
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .collect();
        let mut set = BTreeSet::new();
        for (i, &a) in letters.iter().enumerate() {
            for &b in &letters[i + 1..] {
                if let Some(p) = LetterPair::new(a, b) {
                    set.insert(p);
                }
            }
        }
        WhiteheadEdgeSet(set)
    }

    pub fn insert(&mut self, p: LetterPair) {
        self.0.insert(p);
    }

    pub fn contains(&self, p: &LetterPair) -> bool {
        self.0.contains(p)
    }

    pub fn union(&self, other: &Self) -> Self {
        WhiteheadEdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Self) -> Vec<LetterPair> {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = LetterPair> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WhiteheadEdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Vertex/edge maps of a quotient step (folding or trimming); `None` marks a
/// removed vertex or edge.
#[derive(Clone, Debug)]
pub struct Projection {
    pub vertex_map: Vec<Option<VertexId>>,
    pub edge_map: Vec<Option<u32>>,
}

/// A label- and basepoint-preserving graph morphism, stored as the image of
/// every vertex and every positive edge (as a half-edge of the target).
#[derive(Clone, Debug)]
pub struct GraphMorphism {
    pub source: LabeledGraph,
    pub target: LabeledGraph,
    pub vertex_map: Vec<VertexId>,
    /// for positive edge k of the source, the target half-edge its forward
    /// traversal maps to
    pub edge_map: Vec<EdgeId>,
}

impl GraphMorphism {
    /// True iff both the vertex map and the edge map are onto.
    pub fn is_surjective(&self) -> bool {
        let mut vseen = vec![false; self.target.n_vertices() as usize];
        for &v in &self.vertex_map {
            vseen[v as usize] = true;
        }
        let mut eseen = vec![false; self.target.edge_count()];
        for &h in &self.edge_map {
            eseen[(h >> 1) as usize] = true;
        }
        vseen.into_iter().all(|b| b) && eseen.into_iter().all(|b| b)
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Merges the classes of `a` and `b`, making `winner` the root.
    fn union_into(&mut self, winner: u32, loser: u32) {
        self.parent[loser as usize] = winner;
    }
}

impl LabeledGraph {
    fn build(
        n_vertices: u32,
        basepoint: VertexId,
        edges: Vec<PosEdge>,
    ) -> Result<LabeledGraph, GraphError> {
        let mut g = LabeledGraph {
            n_vertices,
            basepoint,
            edges,
            out: Vec::new(),
        };
        g.rebuild_out();
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn rebuild_out(&mut self) {
        let mut out = vec![Vec::new(); self.n_vertices as usize];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.from as usize].push((Letter::pos(e.gen), (k as u32) << 1));
            out[e.to as usize].push((Letter::neg(e.gen), ((k as u32) << 1) | 1));
        }
        for v in &mut out {
            v.sort();
        }
        self.out = out;
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_vertices as usize];
        let mut stack = vec![self.basepoint];
        seen[self.basepoint as usize] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, h) in &self.out[v as usize] {
                let w = self.init(h ^ 1);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_vertices
    }

    pub fn point() -> LabeledGraph {
        LabeledGraph::build(1, 0, Vec::new()).unwrap()
    }

    /// The path graph Γ_w of a reduced word: `len(w)+1` vertices with the
    /// basepoint at the start of the path.
    pub fn of_word(w: &Word) -> LabeledGraph {
        let mut edges = Vec::new();
        for (i, &l) in w.letters().iter().enumerate() {
            let (a, b) = (i as u32, i as u32 + 1);
            edges.push(if l.is_positive() {
                PosEdge {
                    from: a,
                    to: b,
                    gen: l.gen(),
                }
            } else {
                PosEdge {
                    from: b,
                    to: a,
                    gen: l.gen(),
                }
            });
        }
        LabeledGraph::build(w.len() as u32 + 1, 0, edges).unwrap()
    }

    /// Wedge of cycles at the basepoint, one per generator word.
    pub fn bouquet(generators: &[Word]) -> Result<LabeledGraph, GraphError> {
        if generators.iter().any(|w| w.is_empty()) {
            return Err(GraphError::IdentityGenerator);
        }
        let mut edges = Vec::new();
        let mut next = 1u32;
        for w in generators {
            let n = w.len() as u32;
            // vertices: 0 = basepoint, internal n-1 fresh ones
            let vertex = |i: u32, next: u32| -> u32 {
                if i == 0 || i == n {
                    0
                } else {
                    next + i - 1
                }
            };
            for (i, &l) in w.letters().iter().enumerate() {
                let a = vertex(i as u32, next);
                let b = vertex(i as u32 + 1, next);
                edges.push(if l.is_positive() {
                    PosEdge {
                        from: a,
                        to: b,
                        gen: l.gen(),
                    }
                } else {
                    PosEdge {
                        from: b,
                        to: a,
                        gen: l.gen(),
                    }
                });
            }
            next += n.saturating_sub(1);
        }
        LabeledGraph::build(next, 0, edges)
    }

    /// The canonical core graph of the subgroup generated by the given words.
    pub fn subgroup(generators: &[Word]) -> Result<LabeledGraph, GraphError> {
        Ok(LabeledGraph::bouquet(generators)?.core())
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edges.len() as u32 * 2
    }

    /// Initial vertex ι(h) of a half-edge.
    pub fn init(&self, h: EdgeId) -> VertexId {
        let e = &self.edges[(h >> 1) as usize];
        if h & 1 == 0 {
            e.from
        } else {
            e.to
        }
    }

    pub fn label(&self, h: EdgeId) -> Letter {
        let e = &self.edges[(h >> 1) as usize];
        if h & 1 == 0 {
            Letter::pos(e.gen)
        } else {
            Letter::neg(e.gen)
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v as usize].len()
    }

    pub fn outgoing(&self, v: VertexId) -> &[(Letter, EdgeId)] {
        &self.out[v as usize]
    }

    /// The unique half-edge at `v` with the given label, when folded.
    pub fn step(&self, v: VertexId, l: Letter) -> Option<EdgeId> {
        self.out[v as usize]
            .iter()
            .find(|(ll, _)| *ll == l)
            .map(|&(_, h)| h)
    }

    pub fn is_folded(&self) -> bool {
        self.out
            .iter()
            .all(|adj| adj.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Every non-basepoint vertex has degree ≥ 2 (and the graph is folded).
    pub fn is_core(&self) -> bool {
        self.is_folded() && (0..self.n_vertices).all(|v| v == self.basepoint || self.degree(v) > 1)
    }

    pub fn gens(&self) -> Vec<Gen> {
        let mut gens: Vec<Gen> = self.edges.iter().map(|e| e.gen).collect();
        gens.sort();
        gens.dedup();
        gens
    }

    /// One folding step: identifies the far endpoints of two half-edges with
    /// the same initial vertex and label, and merges the edge pairs.
    pub fn fold_step(
        &self,
        e: EdgeId,
        f: EdgeId,
    ) -> Result<(LabeledGraph, Projection), GraphError> {
        if e >> 1 == f >> 1 || self.init(e) != self.init(f) || self.label(e) != self.label(f) {
            return Err(GraphError::FoldPrecondition);
        }
        let (a, b) = (self.init(e ^ 1), self.init(f ^ 1));
        let mut vmap: Vec<Option<u32>> = (0..self.n_vertices).map(Some).collect();
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            vmap[drop as usize] = Some(keep);
        }
        // compact vertices
        let mut new_id = vec![0u32; self.n_vertices as usize];
        let mut next = 0u32;
        for v in 0..self.n_vertices {
            if vmap[v as usize] == Some(v) {
                new_id[v as usize] = next;
                next += 1;
            }
        }
        let resolve = |v: u32| -> u32 { new_id[vmap[v as usize].unwrap() as usize] };
        let dropped_edge = (f >> 1) as usize;
        let mut edges = Vec::new();
        let mut emap = vec![None; self.edges.len()];
        for (k, edge) in self.edges.iter().enumerate() {
            if k == dropped_edge {
                emap[k] = Some(e >> 1); // merged into e's edge
                continue;
            }
            emap[k] = Some(edges.len() as u32);
            edges.push(PosEdge {
                from: resolve(edge.from),
                to: resolve(edge.to),
                gen: edge.gen,
            });
        }
        // fix merged target through compaction
        let merged_into = emap[(e >> 1) as usize].unwrap();
        emap[dropped_edge] = Some(merged_into);
        let g = LabeledGraph::build(next, resolve(self.basepoint), edges)?;
        Ok((
            g,
            Projection {
                vertex_map: (0..self.n_vertices).map(|v| Some(resolve(v))).collect(),
                edge_map: emap,
            },
        ))
    }

    /// Removes a degree-one non-basepoint vertex together with its edge pair.
    pub fn trim_step(&self, v: VertexId) -> Result<(LabeledGraph, Projection), GraphError> {
        if v == self.basepoint || self.degree(v) != 1 {
            return Err(GraphError::TrimPrecondition);
        }
        let dropped_edge = (self.out[v as usize][0].1 >> 1) as usize;
        let mut edges = Vec::new();
        let mut emap = vec![None; self.edges.len()];
        for (k, edge) in self.edges.iter().enumerate() {
            if k == dropped_edge {
                continue;
            }
            emap[k] = Some(edges.len() as u32);
            edges.push(*edge);
        }
        let shift = |x: u32| -> u32 {
            if x > v {
                x - 1
            } else {
                x
            }
        };
        for e in &mut edges {
            e.from = shift(e.from);
            e.to = shift(e.to);
        }
        let mut vmap: Vec<Option<u32>> = (0..self.n_vertices)
            .map(|x| if x == v { None } else { Some(shift(x)) })
            .collect();
        vmap[v as usize] = None;
        let g = LabeledGraph::build(self.n_vertices - 1, shift(self.basepoint), edges)?;
        Ok((
            g,
            Projection {
                vertex_map: vmap,
                edge_map: emap,
            },
        ))
    }

    /// Folds to completion and trims to the core. The result is independent
    /// of the order of the individual steps.
    pub fn core(&self) -> LabeledGraph {
        self.core_impl(true).0
    }

    /// Folds to completion without trimming; errors if the hypothesis (every
    /// non-basepoint vertex has two incident edges with distinct labels)
    /// fails on the input or trimming turns out to be needed.
    pub fn core_by_folding_only(&self) -> Result<LabeledGraph, GraphError> {
        for v in 0..self.n_vertices {
            if v == self.basepoint {
                continue;
            }
            let mut labels: Vec<Letter> = self.out[v as usize].iter().map(|&(l, _)| l).collect();
            labels.dedup();
            if labels.len() < 2 {
                return Err(GraphError::FoldingOnlyHypothesis(v));
            }
        }
        let (g, trimmed) = self.core_impl(false);
        if trimmed || !g.is_core() {
            return Err(GraphError::FoldingOnlyHypothesis(g.basepoint));
        }
        Ok(g)
    }

    /// Union-find folding with an edge worklist, then cascading trims.
    /// Returns the graph and whether any trim was needed.
    fn core_impl(&self, trim: bool) -> (LabeledGraph, bool) {
        let n = self.n_vertices as usize;
        let mut uf = UnionFind::new(n);
        let mut alive = vec![true; self.edges.len()];
        // adjacency at root vertices: letter -> half-edge
        let mut adj: Vec<BTreeMap<Letter, EdgeId>> = vec![BTreeMap::new(); n];
        let mut queue: VecDeque<EdgeId> = self.half_edges().collect();
        while let Some(h) = queue.pop_front() {
            if !alive[(h >> 1) as usize] {
                continue;
            }
            let v = uf.find(self.init(h));
            let l = self.label(h);
            match adj[v as usize].get(&l).copied() {
                None => {
                    adj[v as usize].insert(l, h);
                }
                Some(h0) if h0 == h => {}
                Some(h0) if !alive[(h0 >> 1) as usize] => {
                    adj[v as usize].insert(l, h);
                }
                Some(h0) => {
                    // fold h into h0
                    let a = uf.find(self.init(h ^ 1));
                    let b = uf.find(self.init(h0 ^ 1));
                    alive[(h >> 1) as usize] = false;
                    if a != b {
                        let (winner, loser) = if adj[a as usize].len() >= adj[b as usize].len() {
                            (a, b)
                        } else {
                            (b, a)
                        };
                        uf.union_into(winner, loser);
                        let moved = std::mem::take(&mut adj[loser as usize]);
                        for (_, hh) in moved {
                            if alive[(hh >> 1) as usize] {
                                queue.push_back(hh);
                            }
                        }
                    }
                }
            }
        }
        let mut trimmed = false;
        if trim {
            let mut degree: HashMap<u32, usize> = HashMap::new();
            for (k, e) in self.edges.iter().enumerate() {
                if alive[k] {
                    *degree.entry(uf.find(e.from)).or_default() += 1;
                    *degree.entry(uf.find(e.to)).or_default() += 1;
                }
            }
            let bp = uf.find(self.basepoint);
            let mut stack: Vec<u32> = degree
                .iter()
                .filter(|&(&v, &d)| d == 1 && v != bp)
                .map(|(&v, _)| v)
                .collect();
            while let Some(v) = stack.pop() {
                if v == bp || degree.get(&v).copied().unwrap_or(0) != 1 {
                    continue;
                }
                let k = (0..self.edges.len()).find(|&k| {
                    alive[k] && (uf.find(self.edges[k].from) == v || uf.find(self.edges[k].to) == v)
                });
                let Some(k) = k else { continue };
                alive[k] = false;
                trimmed = true;
                for end in [uf.find(self.edges[k].from), uf.find(self.edges[k].to)] {
                    let d = degree.entry(end).or_default();
                    *d = d.saturating_sub(1);
                    if *d == 1 && end != bp {
                        stack.push(end);
                    }
                }
            }
        }
        // compact
        let bp_root = uf.find(self.basepoint);
        let mut new_id: HashMap<u32, u32> = HashMap::new();
        let mut order: Vec<u32> = vec![bp_root];
        new_id.insert(bp_root, 0);
        let mut edges = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if !alive[k] {
                continue;
            }
            for v in [uf.find(e.from), uf.find(e.to)] {
                new_id.entry(v).or_insert_with(|| {
                    order.push(v);
                    order.len() as u32 - 1
                });
            }
            edges.push(PosEdge {
                from: new_id[&uf.find(e.from)],
                to: new_id[&uf.find(e.to)],
                gen: e.gen,
            });
        }
        let g = LabeledGraph::build(order.len() as u32, 0, edges)
            .expect("core of a connected graph stays connected");
        (g, trimmed)
    }

    /// Reads a word edge by edge from the basepoint in a folded graph.
    /// `Ok(None)` means the word leaves the graph; membership in π₁ holds
    /// iff the result is the basepoint.
    pub fn trace(&self, w: &Word) -> Result<Option<VertexId>, GraphError> {
        if !self.is_folded() {
            return Err(GraphError::NotFolded);
        }
        let mut v = self.basepoint;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(h) => v = self.init(h ^ 1),
                None => return Ok(None),
            }
        }
        Ok(Some(v))
    }

    pub fn contains_word(&self, w: &Word) -> Result<bool, GraphError> {
        Ok(self.trace(w)? == Some(self.basepoint))
    }

    /// The unique basepoint-preserving morphism into `target`, when it
    /// exists; both graphs must be folded.
    pub fn morphism_to(&self, target: &LabeledGraph) -> Result<Option<GraphMorphism>, GraphError> {
        if !self.is_folded() || !target.is_folded() {
            return Err(GraphError::NotFolded);
        }
        let mut vmap: Vec<Option<VertexId>> = vec![None; self.n_vertices as usize];
        let mut emap: Vec<Option<EdgeId>> = vec![None; self.edges.len()];
        vmap[self.basepoint as usize] = Some(target.basepoint);
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            let tv = vmap[v as usize].unwrap();
            for &(l, h) in &self.out[v as usize] {
                let Some(th) = target.step(tv, l) else {
                    return Ok(None);
                };
                if h & 1 == 0 {
                    emap[(h >> 1) as usize] = Some(th);
                }
                let w = self.init(h ^ 1);
                let tw = target.init(th ^ 1);
                match vmap[w as usize] {
                    None => {
                        vmap[w as usize] = Some(tw);
                        queue.push_back(w);
                    }
                    Some(prev) if prev != tw => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(Some(GraphMorphism {
            source: self.clone(),
            target: target.clone(),
            vertex_map: vmap.into_iter().map(|v| v.unwrap()).collect(),
            edge_map: emap
                .into_iter()
                .map(|e| e.expect("connected graph visits every edge"))
                .collect(),
        }))
    }

    /// Label pairs {l(e), l(f̄)} over all 2-paths (e, f) with ι(f) = ι(ē),
    /// f ≠ ē. Degenerate pairs (equal letters, only possible unfolded) are
    /// skipped, as x.x is never a Whitehead edge.
    pub fn whitehead(&self) -> WhiteheadEdgeSet {
        let mut set = WhiteheadEdgeSet::new();
        for v in 0..self.n_vertices {
            let adj = &self.out[v as usize];
            for (i, &(a, _)) in adj.iter().enumerate() {
                for &(b, _) in &adj[i + 1..] {
                    // half-edges a', b' out of v give the 2-path (ā', b')
                    if let Some(p) = LetterPair::new(a.inverse(), b.inverse()) {
                        set.insert(p);
                    }
                }
            }
        }
        set
    }

    /// Glues the path of `u` so the new basepoint reads `u` into the old
    /// one: π₁ becomes u·π₁·u⁻¹. The result may need re-folding.
    pub fn attach_conjugator(&self, u: &Word) -> LabeledGraph {
        if u.is_empty() {
            return self.clone();
        }
        let mut edges = self.edges.clone();
        let n = self.n_vertices;
        let len = u.len() as u32;
        // path vertices: new basepoint n, then n+1 .. n+len-1, ending at old basepoint
        let vertex = |i: u32| -> u32 {
            if i == 0 {
                n
            } else if i == len {
                self.basepoint
            } else {
                n + i
            }
        };
        for (i, &l) in u.letters().iter().enumerate() {
            let (a, b) = (vertex(i as u32), vertex(i as u32 + 1));
            edges.push(if l.is_positive() {
                PosEdge {
                    from: a,
                    to: b,
                    gen: l.gen(),
                }
            } else {
                PosEdge {
                    from: b,
                    to: a,
                    gen: l.gen(),
                }
            });
        }
        LabeledGraph::build(n + len, n, edges).unwrap()
    }

    /// Same graph pointed at `v`.
    pub fn rebase(&self, v: VertexId) -> LabeledGraph {
        let mut g = self.clone();
        g.basepoint = v;
        g
    }

    /// Strips the maximal degree-one chain at the basepoint, returning the
    /// stripped core together with the stem word read from the old basepoint
    /// to the new one. On a core graph this makes the basepoint lie on the
    /// cyclically reduced part.
    pub fn strip_stem(&self) -> (LabeledGraph, Word) {
        let mut g = self.clone();
        let mut stem = Vec::new();
        while g.n_vertices > 1 && g.degree(g.basepoint) == 1 {
            let (l, h) = g.out[g.basepoint as usize][0];
            stem.push(l);
            let next = g.init(h ^ 1);
            let old = g.basepoint;
            g.basepoint = next;
            let (trimmed, _) = g.trim_step(old).expect("stem vertex is trimmable");
            g = trimmed;
        }
        (g, Word::reduce(stem))
    }

    /// A word labeling some path from the basepoint to `v` (BFS, so shortest
    /// in edge count).
    pub fn path_word_to(&self, v: VertexId) -> Result<Word, GraphError> {
        if !self.is_folded() {
            return Err(GraphError::NotFolded);
        }
        if v == self.basepoint {
            return Ok(Word::identity());
        }
        let mut prev: Vec<Option<(VertexId, Letter)>> = vec![None; self.n_vertices as usize];
        let mut queue = VecDeque::from([self.basepoint]);
        let mut seen = vec![false; self.n_vertices as usize];
        seen[self.basepoint as usize] = true;
        while let Some(x) = queue.pop_front() {
            for &(l, h) in &self.out[x as usize] {
                let y = self.init(h ^ 1);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    prev[y as usize] = Some((x, l));
                    if y == v {
                        let mut letters = Vec::new();
                        let mut cur = v;
                        while let Some((p, l)) = prev[cur as usize] {
                            letters.push(l);
                            cur = p;
                        }
                        letters.reverse();
                        return Ok(Word::reduce(letters));
                    }
                    queue.push_back(y);
                }
            }
        }
        Err(GraphError::NotAPath)
    }

    /// Free generators of π₁ read off a BFS spanning tree: one word per
    /// non-tree positive edge.
    pub fn spanning_basis(&self) -> Result<Vec<Word>, GraphError> {
        if !self.is_folded() {
            return Err(GraphError::NotFolded);
        }
        let (tree_edge, path) = self.spanning_tree()?;
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if tree_edge[k] {
                continue;
            }
            let to_start = &path[e.from as usize];
            let from_end = path[e.to as usize].inverse();
            out.push(
                to_start
                    .concat(&Word::letter(Letter::pos(e.gen)))
                    .concat(&from_end),
            );
        }
        Ok(out)
    }

    /// BFS spanning tree: flags tree edges and gives the tree path word from
    /// the basepoint to each vertex.
    fn spanning_tree(&self) -> Result<(Vec<bool>, Vec<Word>), GraphError> {
        let mut tree_edge = vec![false; self.edges.len()];
        let mut path: Vec<Option<Word>> = vec![None; self.n_vertices as usize];
        path[self.basepoint as usize] = Some(Word::identity());
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            for &(l, h) in &self.out[v as usize] {
                let w = self.init(h ^ 1);
                if path[w as usize].is_none() {
                    tree_edge[(h >> 1) as usize] = true;
                    let pw = path[v as usize].as_ref().unwrap();
                    path[w as usize] = Some(pw.concat(&Word::letter(l)));
                    queue.push_back(w);
                }
            }
        }
        let path = path
            .into_iter()
            .map(|p| p.ok_or(GraphError::Disconnected))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((tree_edge, path))
    }

    /// Betti number (rank of π₁ for a connected graph).
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.n_vertices as usize
    }

    /// Deterministic relabeling by BFS from the basepoint with label-sorted
    /// neighbor order. Two folded pointed graphs are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical_form(&self) -> Result<(LabeledGraph, Vec<VertexId>), GraphError> {
        if !self.is_folded() {
            return Err(GraphError::NotFolded);
        }
        let mut order: Vec<Option<u32>> = vec![None; self.n_vertices as usize];
        order[self.basepoint as usize] = Some(0);
        let mut next = 1u32;
        let mut queue = VecDeque::from([self.basepoint]);
        while let Some(v) = queue.pop_front() {
            for &(_, h) in &self.out[v as usize] {
                let w = self.init(h ^ 1);
                if order[w as usize].is_none() {
                    order[w as usize] = Some(next);
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        let renaming: Vec<u32> = order.iter().map(|o| o.unwrap()).collect();
        let mut edges: Vec<PosEdge> = self
            .edges
            .iter()
            .map(|e| PosEdge {
                from: renaming[e.from as usize],
                to: renaming[e.to as usize],
                gen: e.gen,
            })
            .collect();
        edges.sort_by_key(|e| (e.from, e.to, e.gen));
        let g = LabeledGraph::build(self.n_vertices, 0, edges)?;
        Ok((g, renaming))
    }

    /// Canonical equality of folded pointed graphs.
    pub fn isomorphic(&self, other: &LabeledGraph) -> Result<bool, GraphError> {
        Ok(self.canonical_form()?.0 == other.canonical_form()?.0)
    }

    /// Positive edges as (from, to, gen) triples, for serialization.
    pub fn positive_edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Gen)> + '_ {
        self.edges.iter().map(|e| (e.from, e.to, e.gen))
    }

    pub fn from_edges(
        n_vertices: u32,
        basepoint: VertexId,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Gen)>,
    ) -> Result<LabeledGraph, GraphError> {
        let edges: Vec<PosEdge> = edges
            .into_iter()
            .map(|(from, to, gen)| PosEdge { from, to, gen })
            .collect();
        if edges
            .iter()
            .any(|e| e.from >= n_vertices || e.to >= n_vertices)
            || basepoint >= n_vertices
        {
            return Err(GraphError::BadId);
        }
        LabeledGraph::build(n_vertices, basepoint, edges)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LabeledGraph(n={}, bp={}, edges=[",
            self.n_vertices, self.basepoint
        )?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}->{}", e.from, e.gen, e.to)?;
        }
        write!(f, "])")
    }
}
