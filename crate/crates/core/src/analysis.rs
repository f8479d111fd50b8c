//! Stencil-class exploration and free-factor witnesses: bounded search for
//! the maximal classes of core functor images of a graph, a rank-2
//! primitivity test by Whitehead length reduction, and rewriting of words
//! in a given free basis of a subgroup.

use thiserror::Error;

use crate::fgr::{self, FgrError, FgrObject};
use crate::graph::{GraphError, LabeledGraph};
use crate::solver::{
    solve_forest, CaseStatus, SolveOptions, SolverError, SurjectivityProblem, Verdict,
};
use crate::words::{Gen, Letter, Substitution, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("basis words are not freely independent")]
    DependentBasis,
    #[error("primitivity test needs an alphabet of rank ≤ 2")]
    RankTooHigh,
    #[error("identity is not a valid basis element")]
    IdentityBasisWord,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fgr(#[from] FgrError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A stencil-space leaf found during exploration: the object restricts every
/// admissible morphism to a stencil of the graph.
#[derive(Clone, Debug)]
pub struct StencilClass {
    pub label: String,
    pub graph: LabeledGraph,
    pub object: FgrObject,
}

#[derive(Clone, Debug)]
pub struct StencilClasses {
    /// representatives of the maximal classes, in discovery order
    pub maximal: Vec<StencilClass>,
    /// every stencil leaf collected before reduction
    pub leaves: usize,
    /// true iff every branch terminated within budget, certifying that the
    /// maximal classes cover all core functor images
    pub closed: bool,
}

/// Splits each root graph recursively (the surjectivity machinery with
/// Δ = Γ, which never resolves negatively) and collects the stencil-space
/// leaves; leaves are then deduplicated up to mutual stencil images and
/// classes contained in others are discarded.
pub fn explore_stencil_classes(
    roots: Vec<(String, LabeledGraph, FgrObject)>,
    opts: &SolveOptions,
) -> Result<StencilClasses, AnalysisError> {
    let mut problems = Vec::new();
    for (label, graph, object) in roots {
        let p = SurjectivityProblem::new(graph.clone(), graph, object)?;
        problems.push((label, p));
    }
    let forest = solve_forest(problems, opts)?;
    let closed = forest.verdict == Verdict::Positive;
    let mut leaves: Vec<StencilClass> = Vec::new();
    for node in &forest.nodes {
        if node.status == CaseStatus::StencilPositive {
            leaves.push(StencilClass {
                label: node.label.clone(),
                graph: node.problem.gamma().clone(),
                object: node.problem.object().clone(),
            });
        }
    }
    let n = leaves.len();
    // pairwise order: le[i][j] ⇔ class i is a stencil image of class j
    let max_len = opts.max_witness_len.max(2);
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                le[i][j] =
                    stencil_image_search(&leaves[j].graph, &leaves[i].graph, max_len).is_some();
            }
        }
    }
    // group mutually comparable leaves, keep one representative per group,
    // then drop groups strictly below another group
    let mut group = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if let Some(&r) = reps.iter().find(|&&r| le[i][r] && le[r][i]) {
            group[i] = r;
        } else {
            group[i] = i;
            reps.push(i);
        }
    }
    let mut maximal = Vec::new();
    'rep: for &r in &reps {
        for &other in &reps {
            if other != r && le[r][other] && !le[other][r] {
                continue 'rep;
            }
        }
        maximal.push(leaves[r].clone());
    }
    Ok(StencilClasses {
        maximal,
        leaves: n,
        closed,
    })
}

/// Bounded search for a non-degenerate homomorphism φ with (φ, src) a
/// stencil and F_φ(src) equal to dst up to a basepoint move. This is the
/// order on graph classes; no restriction sets are involved.
pub fn stencil_image_search(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    max_image_len: usize,
) -> Option<Substitution> {
    let src_gens = src.gens();
    if src_gens.is_empty() {
        return if dst.edge_count() == 0 {
            Some(Substitution::new())
        } else {
            None
        };
    }
    let mut counts = vec![0usize; src_gens.len()];
    for (_, _, g) in src.positive_edges() {
        counts[src_gens.iter().position(|&x| x == g).unwrap()] += 1;
    }
    let cycle_words = (cycle_word(src), cycle_word(dst));
    let dst_letters: Vec<Letter> = dst
        .gens()
        .into_iter()
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut assignment = vec![1usize; src_gens.len()];
    loop {
        let total: usize = assignment.iter().zip(&counts).map(|(l, c)| l * c).sum();
        if total == dst.edge_count() {
            let found = match &cycle_words {
                (Some(sw), Some(dw)) => {
                    cycle_segment_match(src, dst, sw, dw, &src_gens, &assignment)
                }
                _ => stencil_words_dfs(src, dst, &src_gens, &assignment, &dst_letters),
            };
            if found.is_some() {
                return found;
            }
        }
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return None;
            }
            assignment[i] += 1;
            if assignment[i] <= max_image_len {
                break;
            }
            assignment[i] = 1;
            i += 1;
        }
    }
}

/// The label word around a single-cycle graph, read from the basepoint.
fn cycle_word(g: &LabeledGraph) -> Option<Word> {
    if g.rank() != 1
        || g.edge_count() != g.n_vertices() as usize
        || (0..g.n_vertices()).any(|v| g.degree(v) != 2)
    {
        return None;
    }
    let bp = g.basepoint();
    let (l0, h0) = g.outgoing(bp)[0];
    let mut letters = vec![l0];
    let mut prev_rev = h0 ^ 1;
    let mut v = g.init(h0 ^ 1);
    while v != bp {
        let &(l, h) = g
            .outgoing(v)
            .iter()
            .find(|&&(_, h)| h != prev_rev)
            .expect("degree-two vertex has a continuation");
        letters.push(l);
        prev_rev = h ^ 1;
        v = g.init(h ^ 1);
    }
    Some(Word::reduce(letters))
}

/// Cycle-to-cycle matching: for each rotation and orientation of the target
/// cycle word, cut it into segments along the source pattern and read off a
/// candidate substitution directly.
fn cycle_segment_match(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    src_word: &Word,
    dst_word: &Word,
    gens: &[Gen],
    lengths: &[usize],
) -> Option<Substitution> {
    let m = dst_word.len();
    for target in [dst_word.clone(), dst_word.inverse()] {
        let tl = target.letters();
        for r in 0..m {
            let mut map: Vec<Option<Word>> = vec![None; gens.len()];
            let mut pos = r;
            let mut ok = true;
            for &l in src_word.letters() {
                let gi = gens.iter().position(|&g| g == l.gen()).unwrap();
                let len = lengths[gi];
                let mut seg: Vec<Letter> = (0..len).map(|k| tl[(pos + k) % m]).collect();
                pos += len;
                if !l.is_positive() {
                    seg = seg.into_iter().rev().map(|x| x.inverse()).collect();
                }
                let seg = Word::reduce(seg);
                if seg.len() != len {
                    ok = false;
                    break;
                }
                match &map[gi] {
                    None => map[gi] = Some(seg),
                    Some(prev) if *prev != seg => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if !ok {
                continue;
            }
            let mut sub = Substitution::new();
            for (gi, &g) in gens.iter().enumerate() {
                sub.set(g, map[gi].clone()?);
            }
            if confirm_stencil_image(&sub, src, dst) {
                return Some(sub);
            }
        }
    }
    None
}

fn confirm_stencil_image(map: &Substitution, src: &LabeledGraph, dst: &LabeledGraph) -> bool {
    if !fgr::is_stencil(map, src).unwrap_or(false) {
        return false;
    }
    let Ok(image) = fgr::apply_functor(map, src) else {
        return false;
    };
    let Ok((target, _)) = dst.canonical_form() else {
        return false;
    };
    for v in 0..image.n_vertices() {
        if let Ok((canon, _)) = image.rebase(v).core().canonical_form() {
            if canon == target {
                return true;
            }
        }
    }
    false
}

fn stencil_words_dfs(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    gens: &[Gen],
    lengths: &[usize],
    letters: &[Letter],
) -> Option<Substitution> {
    fn words_of_len(letters: &[Letter], len: usize) -> Vec<Word> {
        let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for prefix in &out {
                for &l in letters {
                    if prefix.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut ext = prefix.clone();
                    ext.push(l);
                    next.push(ext);
                }
            }
            out = next;
        }
        out.into_iter().map(Word::reduce).collect()
    }

    fn rec(
        src: &LabeledGraph,
        dst: &LabeledGraph,
        gens: &[Gen],
        candidates: &[Vec<Word>],
        map: &mut Substitution,
        idx: usize,
    ) -> Option<Substitution> {
        if idx == gens.len() {
            return confirm_stencil_image(map, src, dst).then(|| map.clone());
        }
        'word: for word in &candidates[idx] {
            map.set(gens[idx], word.clone());
            // prune on the stencil condition over pairs already assigned
            for pair in src.whitehead().iter() {
                let have = |l: Letter| {
                    gens.iter()
                        .position(|&g| g == l.gen())
                        .is_some_and(|p| p <= idx)
                };
                if have(pair.first())
                    && have(pair.second())
                    && map.tau(pair.first()).ok() == map.tau(pair.second()).ok()
                {
                    continue 'word;
                }
            }
            if let Some(found) = rec(src, dst, gens, candidates, map, idx + 1) {
                return Some(found);
            }
        }
        None
    }

    let candidates: Vec<Vec<Word>> = lengths
        .iter()
        .map(|&len| words_of_len(letters, len))
        .collect();
    let mut map = Substitution::new();
    rec(src, dst, gens, &candidates, &mut map, 0)
}

/// Whitehead length reduction over the finite set of type-II automorphisms
/// of a rank-2 free group: a word is primitive iff its cyclic length can be
/// driven down to one.
pub fn is_primitive_rank2(w: &Word) -> Result<bool, AnalysisError> {
    let gens = w.gens();
    if gens.len() > 2 {
        return Err(AnalysisError::RankTooHigh);
    }
    if gens.len() <= 1 {
        return Ok(w.cyclic_reduce().1.len() == 1);
    }
    let mut core = w.cyclic_reduce().1;
    'outer: loop {
        if core.len() <= 1 {
            return Ok(core.len() == 1);
        }
        for &mult_gen in &gens {
            for mult in [Letter::pos(mult_gen), Letter::neg(mult_gen)] {
                let other = *gens.iter().find(|&&g| g != mult_gen).unwrap();
                let o = Word::letter(Letter::pos(other));
                let a = Word::letter(mult);
                let images = [
                    o.concat(&a),
                    a.inverse().concat(&o),
                    a.inverse().concat(&o).concat(&a),
                ];
                for image in images {
                    let mut map = Substitution::identity_on(gens.iter().copied());
                    map.set(other, image);
                    let next = map.apply(&core)?.cyclic_reduce().1;
                    if next.len() < core.len() {
                        core = next;
                        continue 'outer;
                    }
                }
            }
        }
        return Ok(false);
    }
}

/// Folding with provenance: each edge carries a word in the basis alphabet,
/// and crossing tags of closed basepoint paths multiply to the expression of
/// the path label in the basis. Vertex identifications re-tag the absorbed
/// vertex so merged edges agree; a fold whose endpoints already coincide
/// would drop the Betti number, i.e. the basis is dependent.
struct TaggedGraph {
    parent: Vec<u32>,
    edges: Vec<TaggedEdge>,
    basepoint: u32,
}

#[derive(Clone)]
struct TaggedEdge {
    from: u32,
    to: u32,
    gen: Gen,
    tag: Word,
    alive: bool,
}

impl TaggedGraph {
    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let up = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = up;
            v = up;
        }
        v
    }

    fn gauge(&mut self, at: u32, g: &Word) {
        for k in 0..self.edges.len() {
            if !self.edges[k].alive {
                continue;
            }
            let from = self.find(self.edges[k].from);
            let to = self.find(self.edges[k].to);
            let mut tag = self.edges[k].tag.clone();
            if from == at {
                tag = g.inverse().concat(&tag);
            }
            if to == at {
                tag = tag.concat(g);
            }
            self.edges[k].tag = tag;
        }
    }

    /// Crossing tag when traversing edge k in the given direction.
    fn crossing(&self, k: usize, forward: bool) -> Word {
        if forward {
            self.edges[k].tag.clone()
        } else {
            self.edges[k].tag.inverse()
        }
    }

    fn fold_to_completion(&mut self) -> Result<(), AnalysisError> {
        loop {
            // find two live ends of distinct edges at the same vertex with
            // the same label; the two ends of one edge never clash, their
            // labels being mutually inverse
            let mut clash: Option<((usize, bool), (usize, bool))> = None;
            'search: for i in 0..self.edges.len() {
                if !self.edges[i].alive {
                    continue;
                }
                for j in i + 1..self.edges.len() {
                    if !self.edges[j].alive {
                        continue;
                    }
                    for fi in [true, false] {
                        for fj in [true, false] {
                            let (vi, li) = self.end(i, fi);
                            let (vj, lj) = self.end(j, fj);
                            if vi == vj && li == lj {
                                clash = Some(((i, fi), (j, fj)));
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some(((e1, f1), (e2, f2))) = clash else {
                return Ok(());
            };
            // far endpoints
            let w1 = self.far(e1, f1);
            let w2 = self.far(e2, f2);
            if w1 == w2 {
                return Err(AnalysisError::DependentBasis);
            }
            let bp = self.find(self.basepoint);
            // gauge and kill the edge whose far end is not the basepoint
            let ((keep, kf), (kill, klf), wk) = if w2 != bp {
                ((e1, f1), (e2, f2), w2)
            } else {
                ((e2, f2), (e1, f1), w1)
            };
            let t_keep = self.crossing(keep, kf);
            let t_kill = self.crossing(kill, klf);
            let g = t_kill.inverse().concat(&t_keep);
            if !g.is_empty() {
                self.gauge(wk, &g);
            }
            let winner = if wk == w2 { w1 } else { w2 };
            self.parent[wk as usize] = winner;
            self.edges[kill].alive = false;
        }
    }

    /// The initial vertex and outgoing label of an edge end.
    fn end(&mut self, k: usize, forward: bool) -> (u32, Letter) {
        let (from, to, gen) = (self.edges[k].from, self.edges[k].to, self.edges[k].gen);
        if forward {
            (self.find(from), Letter::pos(gen))
        } else {
            (self.find(to), Letter::neg(gen))
        }
    }

    fn far(&mut self, k: usize, forward: bool) -> u32 {
        let (from, to) = (self.edges[k].from, self.edges[k].to);
        if forward {
            self.find(to)
        } else {
            self.find(from)
        }
    }

    /// Traces a word from the basepoint, multiplying crossing tags; returns
    /// the basis expression when the trace closes up at the basepoint.
    fn express(&mut self, w: &Word) -> Option<Word> {
        let mut v = self.find(self.basepoint);
        let mut acc = Word::identity();
        for &l in w.letters() {
            let mut found = None;
            for k in 0..self.edges.len() {
                if !self.edges[k].alive {
                    continue;
                }
                for forward in [true, false] {
                    let (at, label) = self.end(k, forward);
                    if at == v && label == l {
                        found = Some((k, forward));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            let (k, forward) = found?;
            acc = acc.concat(&self.crossing(k, forward));
            v = self.far(k, forward);
        }
        if v == self.find(self.basepoint) {
            Some(acc)
        } else {
            None
        }
    }
}

/// Names for basis letters in rewriting output.
pub fn basis_letter(i: usize) -> Gen {
    const GREEK: [&str; 8] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ"];
    if i < GREEK.len() {
        Gen::new(GREEK[i])
    } else {
        Gen::new(&format!("g{}", i + 1))
    }
}

/// Expresses `w` in the given free basis of a subgroup, reading it as a
/// closed path through the tagged folded graph of the basis. Returns `None`
/// when `w` is not in the subgroup; errors when the basis is dependent.
pub fn rewrite_in_subgroup_basis(w: &Word, basis: &[Word]) -> Result<Option<Word>, AnalysisError> {
    if basis.iter().any(|b| b.is_empty()) {
        return Err(AnalysisError::IdentityBasisWord);
    }
    let mut edges = Vec::new();
    let mut n_vertices = 1u32;
    for (i, word) in basis.iter().enumerate() {
        let beta = Word::letter(Letter::pos(basis_letter(i)));
        let len = word.len() as u32;
        let vertex = |j: u32, base: u32| -> u32 {
            if j == 0 || j == len {
                0
            } else {
                base + j - 1
            }
        };
        for (j, &l) in word.letters().iter().enumerate() {
            let a = vertex(j as u32, n_vertices);
            let b = vertex(j as u32 + 1, n_vertices);
            let tag = if j == 0 {
                beta.clone()
            } else {
                Word::identity()
            };
            // store positively labeled
            let (from, to, tag) = if l.is_positive() {
                (a, b, tag)
            } else {
                (b, a, tag.inverse())
            };
            edges.push(TaggedEdge {
                from,
                to,
                gen: l.gen(),
                tag,
                alive: true,
            });
        }
        n_vertices += len.saturating_sub(1);
    }
    let mut graph = TaggedGraph {
        parent: (0..n_vertices).collect(),
        edges,
        basepoint: 0,
    };
    graph.fold_to_completion()?;
    Ok(graph.express(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WhiteheadEdgeSet;
    use crate::words::LetterPair;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn gens(names: &[&str]) -> Vec<Gen> {
        names.iter().map(|n| Gen::new(n)).collect()
    }

    fn pairs(list: &[(&str, &str)]) -> WhiteheadEdgeSet {
        WhiteheadEdgeSet::from_pairs(list.iter().map(|&(a, b)| {
            LetterPair::new(
                Letter::parse_token(a).unwrap(),
                Letter::parse_token(b).unwrap(),
            )
            .unwrap()
        }))
    }

    #[test]
    fn rewrite_examples() {
        let basis = [w("b"), w("abA")];
        assert_eq!(
            rewrite_in_subgroup_basis(&w("bbabA"), &basis).unwrap(),
            Some(w("ααβ"))
        );
        assert_eq!(rewrite_in_subgroup_basis(&w("a"), &basis).unwrap(), None);
        assert_eq!(
            rewrite_in_subgroup_basis(&w("b"), &basis).unwrap(),
            Some(w("α"))
        );
        // dependent basis is rejected
        assert_eq!(
            rewrite_in_subgroup_basis(&w("ab"), &[w("ab"), w("ab")]),
            Err(AnalysisError::DependentBasis)
        );
    }

    #[test]
    fn rewrite_round_trips() {
        let basis = [w("ab"), w("aB"), w("cc")];
        let sub = Substitution::parse("α=ab,β=aB,γ=cc").unwrap();
        for expr in ["α", "αβ", "αγ", "ββγα", "γ,~β,~α"] {
            let expr = Word::parse(expr).unwrap();
            let ambient = sub.apply(&expr).unwrap();
            let back = rewrite_in_subgroup_basis(&ambient, &basis).unwrap();
            assert_eq!(back, Some(expr), "ambient={ambient}");
        }
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive_rank2(&w("ααβ")).unwrap());
        // the commutator is an algebraic proper extension, hence not primitive
        let comm = Word::parse("α,β,~α,~β").unwrap();
        assert!(!is_primitive_rank2(&comm).unwrap());
        assert!(is_primitive_rank2(&w("α")).unwrap());
        assert!(is_primitive_rank2(&w("ab")).unwrap());
        assert!(!is_primitive_rank2(&w("aabb")).unwrap());
        assert!(!is_primitive_rank2(&w("aa")).unwrap());
        assert!(!is_primitive_rank2(&Word::identity()).unwrap());
        // conjugates of primitives stay primitive
        assert!(is_primitive_rank2(&w("Babb")).unwrap());
        assert!(is_primitive_rank2(&w("abb")).unwrap());
        // a·[a,b] is Whitehead-minimal at cyclic length five
        assert!(!is_primitive_rank2(&w("aabAB")).unwrap());
    }

    #[test]
    fn counterexample_is_free_factor_witness() {
        // bbaba⁻¹ rewrites to α²β in the basis {b, aba⁻¹}, and α²β is
        // primitive, so the subgroup is a proper free factor
        let expr = rewrite_in_subgroup_basis(&w("bbabA"), &[w("b"), w("abA")])
            .unwrap()
            .unwrap();
        assert_eq!(expr, w("ααβ"));
        assert!(is_primitive_rank2(&expr).unwrap());
    }

    #[test]
    fn single_loop_explores_to_one_class() {
        let graph = LabeledGraph::subgroup(&[w("a")]).unwrap();
        let object = FgrObject::unrestricted(gens(&["a"]));
        let classes =
            explore_stencil_classes(vec![("1".into(), graph, object)], &SolveOptions::default())
                .unwrap();
        assert!(classes.closed);
        assert_eq!(classes.maximal.len(), 1);
    }

    #[test]
    fn commutator_has_two_maximal_classes() {
        let object = FgrObject::new(
            gens(&["x", "y"]),
            pairs(&[("x", "~y"), ("~x", "y"), ("~y", "~x"), ("x", "~x")]),
        )
        .unwrap();
        let graph = LabeledGraph::subgroup(&[w("xyXY")]).unwrap();
        let classes =
            explore_stencil_classes(vec![("1".into(), graph, object)], &SolveOptions::default())
                .unwrap();
        assert!(classes.closed);
        assert_eq!(classes.maximal.len(), 2, "leaves: {}", classes.leaves);
        let words: Vec<usize> = classes
            .maximal
            .iter()
            .map(|c| c.graph.edge_count())
            .collect();
        // the commutator cycle itself and its kind-2 image of length 6
        assert!(words.contains(&4) && words.contains(&6));
    }

    #[test]
    fn counterexample_word_has_five_maximal_classes() {
        let roots = crate::coords::counterexample_roots()
            .unwrap()
            .into_iter()
            .map(|(label, p)| (label, p.gamma().clone(), p.object().clone()))
            .collect();
        let classes = explore_stencil_classes(roots, &crate::coords::scripted_options()).unwrap();
        assert!(classes.closed);
        assert_eq!(classes.maximal.len(), 5, "leaves: {}", classes.leaves);
    }

    #[test]
    fn class_representatives_are_stencil_spaces_with_core_images() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(113);
        use rand::prelude::*;
        let object = FgrObject::new(
            gens(&["x", "y"]),
            pairs(&[("x", "~y"), ("~x", "y"), ("~y", "~x"), ("x", "~x")]),
        )
        .unwrap();
        let graph = LabeledGraph::subgroup(&[w("xyXY")]).unwrap();
        let classes =
            explore_stencil_classes(vec![("1".into(), graph, object)], &SolveOptions::default())
                .unwrap();
        let ambient = gens(&["p", "q", "r"]);
        for class in &classes.maximal {
            assert!(class.object.is_stencil_space_of(&class.graph));
            let mut draw = |n: usize| rng.gen_range(0..n);
            for _ in 0..50 {
                let phi = crate::solver::random_admissible_morphism(
                    &class.object,
                    &ambient,
                    3,
                    &mut draw,
                );
                assert!(fgr::is_stencil(&phi, &class.graph).unwrap());
                let image = fgr::apply_functor(&phi, &class.graph).unwrap();
                assert!(image.is_core());
            }
        }
    }

    #[test]
    fn baumslag_solitar_word_smoke_test() {
        // b²ab³a⁻¹ = α²β³ in the subgroup basis, so the coordinate roots
        // apply; the exploration closes with five maximal classes as well
        let roots = crate::coords::counterexample_word_roots(Some("bbabbbA")).unwrap();
        let classes = explore_stencil_classes(roots, &SolveOptions::default()).unwrap();
        assert!(classes.closed);
        assert_eq!(classes.maximal.len(), 5);
    }

    #[test]
    fn stencil_image_search_finds_rotated_images() {
        let src = LabeledGraph::subgroup(&[w("uvuvvu")]).unwrap();
        let dst = LabeledGraph::subgroup(&[w("xuxuux")]).unwrap();
        // u↦x, v↦u maps uvuvvu to xuxuux
        let found = stencil_image_search(&src, &dst, 2).unwrap();
        assert_eq!(found.get(Gen::new("u")), Some(&w("x")));
        assert_eq!(found.get(Gen::new("v")), Some(&w("u")));
        // nothing of length ≤ 2 maps the 6-cycle onto a 5-cycle
        let smaller = LabeledGraph::subgroup(&[w("uuyuY")]).unwrap();
        assert!(stencil_image_search(&src, &smaller, 2).is_none());
    }
}
