//! Recursive case-splitting for surjectivity problems: a problem is a
//! core-graph morphism Γ→Δ together with an FGR object constraining the
//! admissible homomorphisms. Ambiguous problems are covered by the five-way
//! partition (or the two-way triangle rule) and new cases are closed against
//! previously seen ones by back-edges, equivalences and containments.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::fgr::{self, FgrError, FgrMorphism, FgrObject};
use crate::graph::{GraphError, LabeledGraph};
use crate::partition::{
    admissible_kinds, build_folding_morphism, triangle_split, FoldingMorphism, OrientedEdge,
    PartitionError,
};
use crate::words::{FoldKind, Gen, Letter, LetterPair, Substitution, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph uses letters outside the object alphabet")]
    AlphabetMismatch,
    #[error("no morphism Γ→Δ exists: π₁(Γ) is not contained in π₁(Δ)")]
    NoMorphism,
    #[error("cannot split: problem is not ambiguous")]
    NotAmbiguous,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Fgr(#[from] FgrError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A normalized surjectivity problem: both graphs are core graphs over the
/// object alphabet, the basepoint of Γ lies on its cyclically reduced part,
/// Δ is conjugated consistently, and both are in canonical form.
#[derive(Clone, Debug)]
pub struct SurjectivityProblem {
    object: FgrObject,
    gamma: LabeledGraph,
    delta: LabeledGraph,
}

impl SurjectivityProblem {
    pub fn new(
        gamma: LabeledGraph,
        delta: LabeledGraph,
        object: FgrObject,
    ) -> Result<SurjectivityProblem, SolverError> {
        let gamma = gamma.core();
        let delta = delta.core();
        for g in gamma.gens().iter().chain(delta.gens().iter()) {
            if !object.generators().contains(g) {
                return Err(SolverError::AlphabetMismatch);
            }
        }
        let (gamma, stem) = gamma.strip_stem();
        let delta = if stem.is_empty() {
            delta
        } else {
            let v = delta.trace(&stem)?.ok_or(SolverError::NoMorphism)?;
            delta.rebase(v).core()
        };
        let gamma = gamma.canonical_form()?.0;
        let delta = delta.canonical_form()?.0;
        if gamma.morphism_to(&delta)?.is_none() {
            return Err(SolverError::NoMorphism);
        }
        Ok(SurjectivityProblem {
            object,
            gamma,
            delta,
        })
    }

    pub fn object(&self) -> &FgrObject {
        &self.object
    }

    pub fn gamma(&self) -> &LabeledGraph {
        &self.gamma
    }

    pub fn delta(&self) -> &LabeledGraph {
        &self.delta
    }

    /// Unrestricted Whitehead edges of Γ, the candidates for splitting.
    pub fn open_edges(&self) -> Vec<LetterPair> {
        self.gamma
            .whitehead()
            .difference(self.object.restrictions())
    }
}

/// Three-way classification of a problem, before any splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Γ→Δ is not onto: some admissible instance fails.
    Negative,
    /// Γ→Δ is onto and the object is a stencil space of Γ.
    StencilPositive,
    /// Onto but with unrestricted Whitehead edges left.
    Ambiguous(Vec<LetterPair>),
}

pub fn classify(p: &SurjectivityProblem) -> Result<Classification, SolverError> {
    let m = p
        .gamma
        .morphism_to(&p.delta)?
        .ok_or(SolverError::NoMorphism)?;
    if !m.is_surjective() {
        return Ok(Classification::Negative);
    }
    let open = p.open_edges();
    if open.is_empty() {
        Ok(Classification::StencilPositive)
    } else {
        Ok(Classification::Ambiguous(open))
    }
}

/// The status of a node in a finished case tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseStatus {
    Negative,
    StencilPositive,
    /// expanded ambiguous node, covered by its children
    Ambiguous,
    /// identical (same object, conjugate graphs) to an ancestor
    BackEdge {
        target: usize,
    },
    /// equivalent to an earlier case via an FGR-isomorphism
    Equivalent {
        target: usize,
        witness: Substitution,
    },
    /// contained in an earlier case via an FGR morphism
    ContainedIn {
        target: usize,
        witness: Substitution,
    },
    /// ambiguous but never expanded (budget exhausted)
    Inconclusive,
}

/// How a node was derived from its parent.
#[derive(Clone, Debug)]
pub enum Derivation {
    Root,
    Fold {
        kind: FoldKind,
        edge: OrientedEdge,
        images: Substitution,
    },
    Triangle {
        added: LetterPair,
        images: Substitution,
    },
}

#[derive(Clone, Debug)]
pub struct CaseNode {
    pub label: String,
    pub parent: Option<usize>,
    pub derivation: Derivation,
    pub problem: SurjectivityProblem,
    pub status: CaseStatus,
    pub children: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct CaseForest {
    pub nodes: Vec<CaseNode>,
    pub roots: Vec<usize>,
    pub verdict: Verdict,
}

impl CaseForest {
    pub fn node_by_label(&self, label: &str) -> Option<&CaseNode> {
        self.nodes.iter().find(|n| n.label == label)
    }

    pub fn stencil_positive_labels(&self) -> Vec<String> {
        self.nodes
            .iter()
            .filter(|n| n.status == CaseStatus::StencilPositive)
            .map(|n| n.label.clone())
            .collect()
    }

    pub fn containment_edges(&self) -> Vec<(String, String)> {
        self.nodes
            .iter()
            .filter_map(|n| match &n.status {
                CaseStatus::ContainedIn { target, .. } => {
                    Some((n.label.clone(), self.nodes[*target].label.clone()))
                }
                _ => None,
            })
            .collect()
    }

    pub fn equivalence_edges(&self) -> Vec<(String, String)> {
        self.nodes
            .iter()
            .filter_map(|n| match &n.status {
                CaseStatus::Equivalent { target, .. } => {
                    Some((n.label.clone(), self.nodes[*target].label.clone()))
                }
                _ => None,
            })
            .collect()
    }

    pub fn back_edges(&self) -> Vec<(String, String)> {
        self.nodes
            .iter()
            .filter_map(|n| match &n.status {
                CaseStatus::BackEdge { target } => {
                    Some((n.label.clone(), self.nodes[*target].label.clone()))
                }
                _ => None,
            })
            .collect()
    }
}

/// A split decision for an ambiguous node.
#[derive(Clone, Debug)]
pub enum SplitDecision {
    FiveWay(OrientedEdge),
    /// two kind-1 children at the given edges; `first` is expanded first
    Triangle {
        first: OrientedEdge,
        second: OrientedEdge,
    },
}

/// Edge-picking strategy. The scripted variant replays fixed choices by
/// node label and falls back to the default rule elsewhere.
#[derive(Clone, Debug, Default)]
pub enum Picker {
    #[default]
    Lex,
    Scripted(HashMap<String, SplitDecision>),
}

impl Picker {
    fn decide(&self, label: &str, p: &SurjectivityProblem) -> Result<SplitDecision, SolverError> {
        if let Picker::Scripted(map) = self {
            if let Some(d) = map.get(label) {
                return Ok(d.clone());
            }
        }
        default_decision(p)
    }
}

/// Default rule: when exactly two open edges share a letter z and the pair
/// of their far endpoints is restricted, use the triangle rule; otherwise
/// split five ways at the lexicographically least open edge.
fn default_decision(p: &SurjectivityProblem) -> Result<SplitDecision, SolverError> {
    let open = p.open_edges();
    if open.is_empty() {
        return Err(SolverError::NotAmbiguous);
    }
    if open.len() == 2 {
        if let Some((z, a, b)) = common_letter(open[0], open[1]) {
            if let Some(far) = LetterPair::new(a, b) {
                if p.object.restrictions().contains(&far) {
                    return Ok(SplitDecision::Triangle {
                        first: OrientedEdge::new(z, a).unwrap(),
                        second: OrientedEdge::new(z, b).unwrap(),
                    });
                }
            }
        }
    }
    Ok(SplitDecision::FiveWay(OrientedEdge::canonical(open[0])))
}

fn common_letter(a: LetterPair, b: LetterPair) -> Option<(Letter, Letter, Letter)> {
    for z in [a.first(), a.second()] {
        if b.contains(z) {
            return Some((z, a.other(z).unwrap(), b.other(z).unwrap()));
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// maximum number of registered nodes
    pub budget: usize,
    /// image-length bound for equivalence/containment witnesses
    pub max_witness_len: usize,
    pub picker: Picker,
    /// expand frontier waves with rayon; results identical to sequential
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: 512,
            max_witness_len: 2,
            picker: Picker::Lex,
            parallel: false,
        }
    }
}

/// Compares two normalized problem pairs up to a common basepoint change:
/// some vertex of `a.gamma` re-bases both graphs onto `b`.
fn pair_conjugate_equal(a: &SurjectivityProblem, b: &SurjectivityProblem) -> bool {
    if a.gamma.n_vertices() != b.gamma.n_vertices()
        || a.gamma.edge_count() != b.gamma.edge_count()
        || a.delta.n_vertices() != b.delta.n_vertices()
        || a.delta.edge_count() != b.delta.edge_count()
    {
        return false;
    }
    let b_gamma = &b.gamma;
    let b_delta = &b.delta;
    for v in 0..a.gamma.n_vertices() {
        let Ok(rebased) = a.gamma.rebase(v).core().canonical_form() else {
            continue;
        };
        if &rebased.0 != b_gamma {
            continue;
        }
        let Ok(stem) = a.gamma.path_word_to(v) else {
            continue;
        };
        let Ok(Some(dv)) = a.delta.trace(&stem) else {
            continue;
        };
        let Ok(rebased_delta) = a.delta.rebase(dv).core().canonical_form() else {
            continue;
        };
        if &rebased_delta.0 == b_delta {
            return true;
        }
    }
    false
}

/// Searches for an FGR morphism γ from `p`'s object to `q`'s object whose
/// functor image carries `p`'s graphs onto `q`'s up to a common conjugation,
/// certifying that `q` is contained in `p`. A γ that is an FGR-isomorphism
/// certifies equivalence. Image lengths are bounded by `max_image_len`.
pub fn find_equivalence(
    p: &SurjectivityProblem,
    q: &SurjectivityProblem,
    max_image_len: usize,
) -> Option<(Substitution, bool)> {
    let p_gens = p.object.generators().to_vec();
    if p_gens.is_empty() {
        return None;
    }
    let mut gamma_counts = vec![0usize; p_gens.len()];
    let mut delta_counts = vec![0usize; p_gens.len()];
    for (_, _, g) in p.gamma.positive_edges() {
        gamma_counts[p_gens.iter().position(|&x| x == g)?] += 1;
    }
    for (_, _, g) in p.delta.positive_edges() {
        delta_counts[p_gens.iter().position(|&x| x == g)?] += 1;
    }
    let q_letters = q.object.letters();
    let mut assignment = vec![1usize; p_gens.len()];
    loop {
        let gsum: usize = assignment
            .iter()
            .zip(&gamma_counts)
            .map(|(l, c)| l * c)
            .sum();
        let dsum: usize = assignment
            .iter()
            .zip(&delta_counts)
            .map(|(l, c)| l * c)
            .sum();
        if gsum == q.gamma.edge_count() && dsum == q.delta.edge_count() {
            if let Some(found) = search_words(p, q, &p_gens, &assignment, &q_letters) {
                return Some(found);
            }
        }
        // advance the length assignment odometer
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

fn search_words(
    p: &SurjectivityProblem,
    q: &SurjectivityProblem,
    p_gens: &[Gen],
    lengths: &[usize],
    q_letters: &[Letter],
) -> Option<(Substitution, bool)> {
    fn reduced_words(letters: &[Letter], len: usize) -> Vec<Word> {
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

    fn dfs(
        p: &SurjectivityProblem,
        q: &SurjectivityProblem,
        p_gens: &[Gen],
        candidates: &[Vec<Word>],
        map: &mut Substitution,
        idx: usize,
    ) -> Option<(Substitution, bool)> {
        if idx == p_gens.len() {
            if fgr::validate(&p.object, &q.object, map).is_err() {
                return None;
            }
            let Ok(image_gamma) = fgr::core_functor_image(map, &p.gamma) else {
                return None;
            };
            let Ok(image_delta) = fgr::core_functor_image(map, &p.delta) else {
                return None;
            };
            let candidate = SurjectivityProblem {
                object: q.object.clone(),
                gamma: image_gamma,
                delta: image_delta,
            };
            if !pair_conjugate_equal(&candidate, q) {
                return None;
            }
            let iso = FgrMorphism::new(p.object.clone(), q.object.clone(), map.clone())
                .map(|m| m.is_isomorphism())
                .unwrap_or(false);
            return Some((map.clone(), iso));
        }
        let gen = p_gens[idx];
        'candidate: for word in &candidates[idx] {
            map.set(gen, word.clone());
            // prune: condition (ii) for this image
            for pair in fgr::word_whitehead(word).iter() {
                if !q.object.restrictions().contains(&pair) {
                    continue 'candidate;
                }
            }
            // prune: conditions (iii)/(iv) on fully assigned restricted pairs
            for pair in p.object.restrictions().iter() {
                let assigned = |l: Letter| {
                    let pos = p_gens.iter().position(|&g| g == l.gen()).unwrap();
                    pos <= idx
                };
                if !assigned(pair.first()) || !assigned(pair.second()) {
                    continue;
                }
                let a = map.tau(pair.first()).unwrap();
                let b = map.tau(pair.second()).unwrap();
                match LetterPair::new(a, b) {
                    None => continue 'candidate,
                    Some(img) if !q.object.restrictions().contains(&img) => continue 'candidate,
                    _ => {}
                }
            }
            if let Some(found) = dfs(p, q, p_gens, candidates, map, idx + 1) {
                return Some(found);
            }
        }
        map.set(gen, Word::identity());
        None
    }

    let candidates: Vec<Vec<Word>> = lengths
        .iter()
        .map(|&len| reduced_words(q_letters, len))
        .collect();
    let mut map = Substitution::new();
    dfs(p, q, p_gens, &candidates, &mut map, 0)
}

/// Covers an ambiguous problem by the admissible folding-morphism children
/// at the given edge, in kind order.
pub fn split(
    p: &SurjectivityProblem,
    edge: OrientedEdge,
) -> Result<Vec<(FoldingMorphism, SurjectivityProblem)>, SolverError> {
    if !p.open_edges().contains(&edge.pair()) {
        return Err(SolverError::NotAmbiguous);
    }
    let mut out = Vec::new();
    for kind in admissible_kinds(&p.object, edge)? {
        let folding = build_folding_morphism(&p.object, edge, kind)?;
        let child = child_problem(p, &folding)?;
        out.push((folding, child));
    }
    Ok(out)
}

pub type TriangleChild = (FoldingMorphism, SurjectivityProblem);

/// The two kind-1 triangle children; graphs are unchanged, restrictions grow.
pub fn triangle_children(
    p: &SurjectivityProblem,
    restricted: LetterPair,
    z: Letter,
) -> Result<(TriangleChild, TriangleChild), SolverError> {
    let (first, second) = triangle_split(&p.object, restricted, z)?;
    let a = child_problem(p, &first)?;
    let b = child_problem(p, &second)?;
    Ok(((first, a), (second, b)))
}

fn child_problem(
    p: &SurjectivityProblem,
    folding: &FoldingMorphism,
) -> Result<SurjectivityProblem, SolverError> {
    let map = folding.morphism.map();
    let gamma = fgr::core_functor_image(map, &p.gamma)?;
    let delta = fgr::core_functor_image(map, &p.delta)?;
    SurjectivityProblem::new(gamma, delta, folding.target().clone())
}

struct ChildBlueprint {
    label: String,
    derivation: Derivation,
    problem: SurjectivityProblem,
    classification: Classification,
}

fn expand_node(
    label: &str,
    problem: &SurjectivityProblem,
    picker: &Picker,
) -> Result<Vec<ChildBlueprint>, SolverError> {
    let decision = picker.decide(label, problem)?;
    let mut out = Vec::new();
    match decision {
        SplitDecision::FiveWay(edge) => {
            for (folding, child) in split(problem, edge)? {
                let classification = classify(&child)?;
                out.push(ChildBlueprint {
                    label: format!("{label}.{}", folding.kind.index()),
                    derivation: Derivation::Fold {
                        kind: folding.kind,
                        edge: folding.edge,
                        images: folding.morphism.map().clone(),
                    },
                    problem: child,
                    classification,
                });
            }
        }
        SplitDecision::Triangle { first, second } => {
            for (i, edge) in [first, second].into_iter().enumerate() {
                let folding =
                    build_folding_morphism(&problem.object, edge, FoldKind::NoCancellation)?;
                let child = child_problem(problem, &folding)?;
                let classification = classify(&child)?;
                out.push(ChildBlueprint {
                    label: if i == 0 {
                        format!("{label}.1")
                    } else {
                        format!("{label}.1'")
                    },
                    derivation: Derivation::Triangle {
                        added: edge.pair(),
                        images: folding.morphism.map().clone(),
                    },
                    problem: child,
                    classification,
                });
            }
        }
    }
    Ok(out)
}

/// Solves a forest of problems over a shared registry, so containments may
/// cross trees. Roots are registered without closure checks.
pub fn solve_forest(
    roots: Vec<(String, SurjectivityProblem)>,
    opts: &SolveOptions,
) -> Result<CaseForest, SolverError> {
    let mut nodes: Vec<CaseNode> = Vec::new();
    let mut root_ids = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for (label, problem) in roots {
        let id = nodes.len();
        let status = match classify(&problem)? {
            Classification::Negative => CaseStatus::Negative,
            Classification::StencilPositive => CaseStatus::StencilPositive,
            Classification::Ambiguous(_) => {
                queue.push_back(id);
                CaseStatus::Inconclusive // provisional until expanded
            }
        };
        nodes.push(CaseNode {
            label,
            parent: None,
            derivation: Derivation::Root,
            problem,
            status,
            children: Vec::new(),
        });
        root_ids.push(id);
    }

    let mut out_of_budget = false;
    while !queue.is_empty() {
        if nodes.len() >= opts.budget {
            out_of_budget = true;
            break;
        }
        // one frontier wave; parallel mode computes expansions concurrently
        // and registers them in the same deterministic order
        let wave: Vec<usize> = queue.drain(..).collect();
        let expansions: Vec<(usize, Result<Vec<ChildBlueprint>, SolverError>)> = if opts.parallel {
            wave.par_iter()
                .map(|&id| {
                    (
                        id,
                        expand_node(&nodes[id].label, &nodes[id].problem, &opts.picker),
                    )
                })
                .collect()
        } else {
            wave.iter()
                .map(|&id| {
                    (
                        id,
                        expand_node(&nodes[id].label, &nodes[id].problem, &opts.picker),
                    )
                })
                .collect()
        };
        for (parent, blueprints) in expansions {
            if nodes.len() >= opts.budget {
                out_of_budget = true;
                queue.push_back(parent);
                continue;
            }
            let blueprints = blueprints?;
            nodes[parent].status = CaseStatus::Ambiguous;
            // register the whole batch first
            let mut batch = Vec::new();
            for bp in blueprints {
                let id = nodes.len();
                let status = match &bp.classification {
                    Classification::Negative => CaseStatus::Negative,
                    Classification::StencilPositive => CaseStatus::StencilPositive,
                    Classification::Ambiguous(_) => CaseStatus::Inconclusive, // provisional
                };
                nodes.push(CaseNode {
                    label: bp.label,
                    parent: Some(parent),
                    derivation: bp.derivation,
                    problem: bp.problem,
                    status,
                    children: Vec::new(),
                });
                nodes[parent].children.push(id);
                batch.push(id);
            }
            // back-edge pass: an ambiguous child identical to an ancestor
            for &id in &batch {
                if nodes[id].status != CaseStatus::Inconclusive {
                    continue;
                }
                let mut anc = nodes[id].parent;
                while let Some(a) = anc {
                    if nodes[a].problem.object.same_as(&nodes[id].problem.object)
                        && pair_conjugate_equal(&nodes[id].problem, &nodes[a].problem)
                    {
                        nodes[id].status = CaseStatus::BackEdge { target: a };
                        break;
                    }
                    anc = nodes[a].parent;
                }
            }
            // containment pass, in creation order
            for (pos, &id) in batch.iter().enumerate() {
                if nodes[id].status != CaseStatus::Inconclusive {
                    continue;
                }
                let ancestors = ancestor_set(&nodes, id);
                let mut closed = false;
                for target in 0..nodes.len() {
                    if target == id || ancestors.contains(&target) {
                        continue;
                    }
                    match &nodes[target].status {
                        CaseStatus::Negative => continue,
                        CaseStatus::Inconclusive => {
                            // open sibling: only earlier ones are usable
                            let in_batch = batch.iter().position(|&b| b == target);
                            match in_batch {
                                Some(tp) if tp < pos => {}
                                _ => continue,
                            }
                        }
                        _ => {}
                    }
                    if let Some((witness, iso)) = find_equivalence(
                        &nodes[target].problem,
                        &nodes[id].problem,
                        opts.max_witness_len,
                    ) {
                        nodes[id].status = if iso {
                            CaseStatus::Equivalent { target, witness }
                        } else {
                            CaseStatus::ContainedIn { target, witness }
                        };
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    queue.push_back(id);
                }
            }
        }
    }

    let verdict = if nodes.iter().any(|n| n.status == CaseStatus::Negative) {
        Verdict::Negative
    } else if out_of_budget || nodes.iter().any(|n| n.status == CaseStatus::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Positive
    };
    Ok(CaseForest {
        nodes,
        roots: root_ids,
        verdict,
    })
}

fn ancestor_set(nodes: &[CaseNode], id: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = nodes[id].parent;
    while let Some(a) = cur {
        out.push(a);
        cur = nodes[a].parent;
    }
    out
}

/// Solves a single problem; the root is labeled "1".
pub fn solve(root: SurjectivityProblem, opts: &SolveOptions) -> Result<CaseForest, SolverError> {
    solve_forest(vec![("1".to_owned(), root)], opts)
}

/// Free generators of π₁(Γ) for reporting.
fn pi1_words(g: &LabeledGraph) -> Vec<Word> {
    g.spanning_basis().unwrap_or_default()
}

/// Indented textual case report: one line per node with its restriction
/// set, defining words, and status.
pub fn render_report(forest: &CaseForest) -> String {
    let mut out = String::new();
    for (i, &root) in forest.roots.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        render_node(forest, root, 0, &mut out);
    }
    let _ = writeln!(out, "\nverdict: {:?}", forest.verdict);
    out
}

fn render_node(forest: &CaseForest, id: usize, depth: usize, out: &mut String) {
    let node = &forest.nodes[id];
    let indent = "  ".repeat(depth);
    let gamma_words: Vec<String> = pi1_words(&node.problem.gamma)
        .iter()
        .map(|w| w.to_string())
        .collect();
    let status = match &node.status {
        CaseStatus::Negative => "negative".to_owned(),
        CaseStatus::StencilPositive => "stencil-positive".to_owned(),
        CaseStatus::Ambiguous => "ambiguous, split".to_owned(),
        CaseStatus::BackEdge { target } => {
            format!("same problem as case {}", forest.nodes[*target].label)
        }
        CaseStatus::Equivalent { target, witness } => format!(
            "equivalent to case {} via {:?}",
            forest.nodes[*target].label, witness
        ),
        CaseStatus::ContainedIn { target, witness } => format!(
            "contained in case {} via {:?}",
            forest.nodes[*target].label, witness
        ),
        CaseStatus::Inconclusive => "inconclusive (budget)".to_owned(),
    };
    let derivation = match &node.derivation {
        Derivation::Root => String::new(),
        Derivation::Fold { kind, edge, .. } => format!(" [kind {} at {}]", kind.index(), edge),
        Derivation::Triangle { added, .. } => format!(" [triangle, adds {added}]"),
    };
    let _ = writeln!(
        out,
        "{indent}case {}{derivation}: Γ = ⟨{}⟩, N = {}, {status}",
        node.label,
        gamma_words.join(", "),
        node.problem.object.restrictions(),
    );
    for &c in &node.children {
        render_node(forest, c, depth + 1, out);
    }
}

/// Random admissible morphism out of an object: reduced images over a fresh
/// ambient alphabet satisfying the restriction conditions, by rejection.
pub fn random_admissible_morphism(
    obj: &FgrObject,
    ambient: &[Gen],
    max_len: usize,
    rng: &mut impl FnMut(usize) -> usize,
) -> Substitution {
    loop {
        let mut map = Substitution::new();
        for &g in obj.generators() {
            let len = 1 + rng(max_len);
            let mut letters: Vec<Letter> = Vec::new();
            while letters.len() < len {
                let gen = ambient[rng(ambient.len())];
                let l = if rng(2) == 0 {
                    Letter::pos(gen)
                } else {
                    Letter::neg(gen)
                };
                if letters.last() == Some(&l.inverse()) {
                    continue;
                }
                letters.push(l);
            }
            map.set(g, Word::reduce(letters));
        }
        let ok = obj
            .restrictions()
            .iter()
            .all(|pair| map.tau(pair.first()).unwrap() != map.tau(pair.second()).unwrap());
        if ok {
            return map;
        }
    }
}

/// Checks a positive verdict on a sample: the instance of the root problem
/// at a concrete admissible morphism must be onto.
pub fn instance_is_surjective(
    p: &SurjectivityProblem,
    phi: &Substitution,
) -> Result<bool, SolverError> {
    let gamma = fgr::core_functor_image(phi, &p.gamma)?;
    let delta = fgr::core_functor_image(phi, &p.delta)?;
    let m = gamma.morphism_to(&delta)?.ok_or(SolverError::NoMorphism)?;
    Ok(m.is_surjective())
}
