//! Free groups with restrictions: objects (Y, N), validated morphisms,
//! composition, isomorphism and stencil tests, and the edge-subdivision
//! functor sending y-labeled edges to φ(y)-labeled paths.

use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, LabeledGraph, WhiteheadEdgeSet};
use crate::words::{Gen, Letter, LetterPair, Substitution, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FgrError {
    #[error("restriction {0} uses letters outside the alphabet")]
    RestrictionOutsideAlphabet(LetterPair),
    #[error("no image for generator {0}")]
    MissingImage(Gen),
    #[error("image of {0} uses letters outside the codomain alphabet")]
    ImageOutsideAlphabet(Gen),
    #[error("degenerate: image of {0} is the identity")]
    Degenerate(Gen),
    #[error("image Whitehead edge {pair} of generator {gen} is not a codomain restriction")]
    ImageWhitehead { gen: Gen, pair: LetterPair },
    #[error("last letters clash on restricted pair {0}: both end with {1}")]
    LastLetterClash(LetterPair, Letter),
    #[error("transported pair {image} of restriction {pair} is not a codomain restriction")]
    TransportMissing { pair: LetterPair, image: LetterPair },
    #[error("codomain of the first morphism differs from domain of the second")]
    ObjectMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An FGR object: a finite generator alphabet together with a set of
/// restriction edges inside its full Whitehead graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgrObject {
    generators: Vec<Gen>,
    restrictions: WhiteheadEdgeSet,
}

impl FgrObject {
    pub fn new(
        generators: Vec<Gen>,
        restrictions: WhiteheadEdgeSet,
    ) -> Result<FgrObject, FgrError> {
        for pair in restrictions.iter() {
            let ok = |l: Letter| generators.contains(&l.gen());
            if !ok(pair.first()) || !ok(pair.second()) {
                return Err(FgrError::RestrictionOutsideAlphabet(pair));
            }
        }
        Ok(FgrObject {
            generators,
            restrictions,
        })
    }

    /// (Y, ∅): admits every non-degenerate homomorphism out.
    pub fn unrestricted(generators: Vec<Gen>) -> FgrObject {
        FgrObject {
            generators,
            restrictions: WhiteheadEdgeSet::new(),
        }
    }

    /// (X, W_X): the ambient codomain for concrete evaluations.
    pub fn saturated(generators: Vec<Gen>) -> FgrObject {
        let restrictions = WhiteheadEdgeSet::full(generators.iter().copied());
        FgrObject {
            generators,
            restrictions,
        }
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn restrictions(&self) -> &WhiteheadEdgeSet {
        &self.restrictions
    }

    pub fn full_whitehead(&self) -> WhiteheadEdgeSet {
        WhiteheadEdgeSet::full(self.generators.iter().copied())
    }

    /// Unrestricted edges W_Y \ N, in letter order.
    pub fn slack_edges(&self) -> Vec<LetterPair> {
        self.full_whitehead().difference(&self.restrictions)
    }

    pub fn is_saturated(&self) -> bool {
        self.full_whitehead().is_subset(&self.restrictions)
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.generators
            .iter()
            .flat_map(|&g| [Letter::pos(g), Letter::neg(g)])
            .collect()
    }

    /// Equality as objects: same generator set, same restrictions.
    pub fn same_as(&self, other: &FgrObject) -> bool {
        let mut a = self.generators.clone();
        let mut b = other.generators.clone();
        a.sort();
        b.sort();
        a == b && self.restrictions == other.restrictions
    }

    /// (Y, N) is a stencil space of Γ when W(Γ) ⊆ N: every admissible
    /// morphism out of it is a stencil for Γ.
    pub fn is_stencil_space_of(&self, g: &LabeledGraph) -> bool {
        g.whitehead().is_subset(&self.restrictions)
    }
}

impl fmt::Display for FgrObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.name()).collect();
        write!(f, "({{{}}}, {})", gens.join(","), self.restrictions)
    }
}

/// W(Γ_w) for the path graph of a reduced word: the consecutive-letter
/// pairs {w_i, w_{i+1}⁻¹}.
pub fn word_whitehead(w: &Word) -> WhiteheadEdgeSet {
    let mut set = WhiteheadEdgeSet::new();
    for pair in w.letters().windows(2) {
        if let Some(p) = LetterPair::new(pair[0], pair[1].inverse()) {
            set.insert(p);
        }
    }
    set
}

/// Checks conditions (i)–(iv) in order and reports the first violation:
/// (i) every image is nontrivial, (ii) image path Whitehead edges lie in the
/// codomain restrictions, (iii) restricted pairs keep distinct last letters,
/// (iv) transported restricted pairs are codomain restrictions.
pub fn validate(
    domain: &FgrObject,
    codomain: &FgrObject,
    map: &Substitution,
) -> Result<(), FgrError> {
    for &g in domain.generators() {
        let img = map.get(g).ok_or(FgrError::MissingImage(g))?;
        if img
            .letters()
            .iter()
            .any(|l| !codomain.generators().contains(&l.gen()))
        {
            return Err(FgrError::ImageOutsideAlphabet(g));
        }
        if img.is_empty() {
            return Err(FgrError::Degenerate(g));
        }
    }
    for &g in domain.generators() {
        let img = map.get(g).unwrap();
        for pair in word_whitehead(img).iter() {
            if !codomain.restrictions().contains(&pair) {
                return Err(FgrError::ImageWhitehead { gen: g, pair });
            }
        }
    }
    for pair in domain.restrictions().iter() {
        let a = map.tau(pair.first())?;
        let b = map.tau(pair.second())?;
        if a == b {
            return Err(FgrError::LastLetterClash(pair, a));
        }
    }
    for pair in domain.restrictions().iter() {
        let a = map.tau(pair.first())?;
        let b = map.tau(pair.second())?;
        let image = LetterPair::new(a, b).expect("(iii) already checked");
        if !codomain.restrictions().contains(&image) {
            return Err(FgrError::TransportMissing { pair, image });
        }
    }
    Ok(())
}

/// A validated FGR morphism.
#[derive(Clone, Debug)]
pub struct FgrMorphism {
    domain: FgrObject,
    codomain: FgrObject,
    map: Substitution,
}

impl FgrMorphism {
    pub fn new(
        domain: FgrObject,
        codomain: FgrObject,
        map: Substitution,
    ) -> Result<FgrMorphism, FgrError> {
        validate(&domain, &codomain, &map)?;
        Ok(FgrMorphism {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(obj: &FgrObject) -> FgrMorphism {
        FgrMorphism {
            domain: obj.clone(),
            codomain: obj.clone(),
            map: Substitution::identity_on(obj.generators().iter().copied()),
        }
    }

    pub fn domain(&self) -> &FgrObject {
        &self.domain
    }

    pub fn codomain(&self) -> &FgrObject {
        &self.codomain
    }

    pub fn map(&self) -> &Substitution {
        &self.map
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        self.map.apply(w)
    }

    /// `other ∘ self`; composition of valid morphisms is again valid, which
    /// is re-checked rather than trusted.
    pub fn compose(&self, other: &FgrMorphism) -> Result<FgrMorphism, FgrError> {
        if !self.codomain.same_as(&other.domain) {
            return Err(FgrError::ObjectMismatch);
        }
        let map = self.map.then(&other.map)?;
        FgrMorphism::new(self.domain.clone(), other.codomain.clone(), map)
    }

    /// FGR-isomorphism test: the images restrict to a bijection of letters
    /// commuting with inversion, and the codomain restrictions are exactly
    /// the transported domain restrictions.
    pub fn is_isomorphism(&self) -> bool {
        let mut image_letters = Vec::new();
        for &g in self.domain.generators() {
            match self.map.get(g) {
                Some(img) if img.len() == 1 => image_letters.push(img.letters()[0]),
                _ => return false,
            }
        }
        let mut gens: Vec<Gen> = image_letters.iter().map(|l| l.gen()).collect();
        gens.sort();
        gens.dedup();
        let mut cod = self.codomain.generators().to_vec();
        cod.sort();
        if gens != cod || image_letters.len() != cod.len() {
            return false;
        }
        let transported =
            WhiteheadEdgeSet::from_pairs(self.domain.restrictions().iter().map(|pair| {
                let a = self.map.tau(pair.first()).unwrap();
                let b = self.map.tau(pair.second()).unwrap();
                LetterPair::new(a, b).expect("valid morphism transports injectively")
            }));
        transported == *self.codomain.restrictions()
    }
}

impl fmt::Display for FgrMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(g, w)| format!("{g}↦{w}")).collect();
        write!(
            f,
            "{} → {}: {}",
            self.domain,
            self.codomain,
            parts.join(", ")
        )
    }
}

/// (φ, Γ) is a stencil iff Γ is folded and the last letters of the images
/// differ across every Whitehead edge of Γ — equivalently, the subdivided
/// image graph is already folded.
pub fn is_stencil(map: &Substitution, g: &LabeledGraph) -> Result<bool, FgrError> {
    for gen in g.gens() {
        let img = map.get(gen).ok_or(FgrError::MissingImage(gen))?;
        if img.is_empty() {
            return Err(FgrError::Degenerate(gen));
        }
    }
    if !g.is_folded() {
        return Ok(false);
    }
    for pair in g.whitehead().iter() {
        if map.tau(pair.first())? == map.tau(pair.second())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The edge-subdivision functor: replaces each positive y-edge by a path
/// reading φ(y), keeping the original vertices and the basepoint.
pub fn apply_functor(map: &Substitution, g: &LabeledGraph) -> Result<LabeledGraph, FgrError> {
    let mut edges: Vec<(u32, u32, Gen)> = Vec::new();
    let mut next = g.n_vertices();
    for (from, to, gen) in g.positive_edges() {
        let img = map.get(gen).ok_or(FgrError::MissingImage(gen))?;
        if img.is_empty() {
            return Err(FgrError::Degenerate(gen));
        }
        let n = img.len() as u32;
        let base = next;
        let vertex = |i: u32| -> u32 {
            if i == 0 {
                from
            } else if i == n {
                to
            } else {
                base + i - 1
            }
        };
        for (i, &l) in img.letters().iter().enumerate() {
            let a = vertex(i as u32);
            let b = vertex(i as u32 + 1);
            edges.push(if l.is_positive() {
                (a, b, l.gen())
            } else {
                (b, a, l.gen())
            });
        }
        next += n - 1;
    }
    Ok(LabeledGraph::from_edges(next, g.basepoint(), edges)?)
}

/// Core of the functor image; for a core input this equals the subgroup
/// graph of the φ-images of any generating set of π₁.
pub fn core_functor_image(map: &Substitution, g: &LabeledGraph) -> Result<LabeledGraph, FgrError> {
    Ok(apply_functor(map, g)?.core())
}
