//! The five-way partition of Hom((Y,N),(X,W_X)) at an unrestricted
//! Whitehead edge: canonical folding morphisms, factorization of concrete
//! homomorphisms through them, the lexicographic height function, full
//! decomposition, and the two-way triangle rule.

use std::fmt;

use thiserror::Error;

use crate::fgr::{validate, FgrError, FgrMorphism, FgrObject};
use crate::graph::WhiteheadEdgeSet;
use crate::words::{
    cancellation_split, FoldKind, Gen, Letter, LetterPair, Substitution, Word, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("edge {0} is already restricted")]
    EdgeRestricted(LetterPair),
    #[error("edge {0} is not over the object alphabet")]
    EdgeOutsideAlphabet(LetterPair),
    #[error("kind {kind:?} cannot occur at edge {edge}: {reason}")]
    KindForbidden {
        kind: FoldKind,
        edge: LetterPair,
        reason: &'static str,
    },
    #[error("triangle rule precondition violated")]
    TrianglePrecondition,
    #[error("degenerate transported restriction {0} (implementation bug guard)")]
    DegenerateTransport(LetterPair),
    #[error(transparent)]
    Fgr(#[from] FgrError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An ordered presentation (x, y) of a Whitehead edge {x, y}. The roles of
/// x and y fix which of the kind-3/4/5 substitutions applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrientedEdge {
    pub x: Letter,
    pub y: Letter,
}

impl OrientedEdge {
    pub fn new(x: Letter, y: Letter) -> Option<OrientedEdge> {
        if x == y {
            None
        } else {
            Some(OrientedEdge { x, y })
        }
    }

    /// Letter-order orientation of an unordered pair.
    pub fn canonical(pair: LetterPair) -> OrientedEdge {
        OrientedEdge {
            x: pair.first(),
            y: pair.second(),
        }
    }

    pub fn pair(&self) -> LetterPair {
        LetterPair::new(self.x, self.y).expect("oriented edge has distinct letters")
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.x, self.y)
    }
}

/// One of the five canonical morphisms ψ^i_{x.y} through which every
/// admissible homomorphism of cancellation type i factors.
#[derive(Clone, Debug)]
pub struct FoldingMorphism {
    pub kind: FoldKind,
    pub edge: OrientedEdge,
    /// kind 2 splits on whether the edge is x.x⁻¹
    pub inverse_pair: bool,
    pub morphism: FgrMorphism,
    /// the fresh generator of a kind-2 step
    pub fresh: Option<Gen>,
    /// the generator removed by a kind-5 step
    pub removed: Option<Gen>,
}

impl FoldingMorphism {
    pub fn target(&self) -> &FgrObject {
        self.morphism.codomain()
    }
}

/// Lexicographically ordered height (Σ image length, |W_Y \ N_Y|); every
/// factorization step strictly decreases it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Height {
    pub total_length: usize,
    pub slack: usize,
}

pub fn height(map: &Substitution, obj: &FgrObject) -> Result<Height, PartitionError> {
    let mut total = 0;
    for &g in obj.generators() {
        let img = map.get(g).ok_or(FgrError::MissingImage(g))?;
        if img.is_empty() {
            return Err(PartitionError::Fgr(FgrError::Degenerate(g)));
        }
        total += img.len();
    }
    Ok(Height {
        total_length: total,
        slack: obj.slack_edges().len(),
    })
}

/// Deterministic fresh-generator names for kind-2 steps.
fn fresh_gen(obj: &FgrObject) -> Gen {
    const NAMES: [&str; 10] = ["t", "s", "r", "q", "p", "o", "n", "m", "l", "k"];
    let taken: Vec<&str> = obj.generators().iter().map(|g| g.name()).collect();
    for name in NAMES {
        if !taken.contains(&name) {
            return Gen::new(name);
        }
    }
    for i in 1.. {
        let name = format!("t{i}");
        if !taken.contains(&name.as_str()) {
            return Gen::new(&name);
        }
    }
    unreachable!()
}

fn check_edge(obj: &FgrObject, edge: OrientedEdge) -> Result<(), PartitionError> {
    let pair = edge.pair();
    let over = |l: Letter| obj.generators().contains(&l.gen());
    if !over(edge.x) || !over(edge.y) {
        return Err(PartitionError::EdgeOutsideAlphabet(pair));
    }
    if obj.restrictions().contains(&pair) {
        return Err(PartitionError::EdgeRestricted(pair));
    }
    Ok(())
}

/// The kinds admissible at an edge: all five in general, only 1–2 when
/// y = x⁻¹, and only 1–4 when x⁻¹.y⁻¹ is restricted.
pub fn admissible_kinds(
    obj: &FgrObject,
    edge: OrientedEdge,
) -> Result<Vec<FoldKind>, PartitionError> {
    check_edge(obj, edge)?;
    if edge.y == edge.x.inverse() {
        return Ok(vec![FoldKind::NoCancellation, FoldKind::BothSurvive]);
    }
    let opposite = LetterPair::new(edge.x.inverse(), edge.y.inverse()).unwrap();
    if obj.restrictions().contains(&opposite) {
        return Ok(vec![
            FoldKind::NoCancellation,
            FoldKind::BothSurvive,
            FoldKind::FirstAbsorbs,
            FoldKind::SecondAbsorbs,
        ]);
    }
    Ok(FoldKind::ALL.to_vec())
}

/// Transports restriction pairs through τψ; a degenerate image pair would
/// signal an implementation bug and is rejected.
fn transport(
    restrictions: &WhiteheadEdgeSet,
    psi: &Substitution,
) -> Result<WhiteheadEdgeSet, PartitionError> {
    let mut out = WhiteheadEdgeSet::new();
    for pair in restrictions.iter() {
        let a = psi.tau(pair.first())?;
        let b = psi.tau(pair.second())?;
        let image = LetterPair::new(a, b).ok_or(PartitionError::DegenerateTransport(pair))?;
        out.insert(image);
    }
    Ok(out)
}

/// Builds ψ^i_{x.y} and its target object (U_i, N_{U_i}).
pub fn build_folding_morphism(
    obj: &FgrObject,
    edge: OrientedEdge,
    kind: FoldKind,
) -> Result<FoldingMorphism, PartitionError> {
    let kinds = admissible_kinds(obj, edge)?;
    if !kinds.contains(&kind) {
        let reason = if edge.y == edge.x.inverse() {
            "only the first two kinds occur when y = x⁻¹"
        } else {
            "only the first four kinds occur when x⁻¹.y⁻¹ is restricted"
        };
        return Err(PartitionError::KindForbidden {
            kind,
            edge: edge.pair(),
            reason,
        });
    }
    let (x, y) = (edge.x, edge.y);
    let mut map = Substitution::identity_on(obj.generators().iter().copied());
    let mut generators = obj.generators().to_vec();
    let mut fresh = None;
    let mut removed = None;
    let inverse_pair = y == x.inverse();
    match kind {
        FoldKind::NoCancellation => {}
        FoldKind::BothSurvive => {
            let s = fresh_gen(obj);
            generators.push(s);
            fresh = Some(s);
            let s_pos = Word::letter(Letter::pos(s));
            if inverse_pair {
                // x ↦ s⁻¹xs
                let image = s_pos.inverse().concat(&Word::letter(x)).concat(&s_pos);
                map.set_letter(x, image);
            } else {
                map.set_letter(x, Word::letter(x).concat(&s_pos));
                map.set_letter(y, Word::letter(y).concat(&s_pos));
            }
        }
        FoldKind::FirstAbsorbs => {
            map.set_letter(x, Word::letter(x).concat(&Word::letter(y)));
        }
        FoldKind::SecondAbsorbs => {
            map.set_letter(y, Word::letter(y).concat(&Word::letter(x)));
        }
        FoldKind::FullCancellation => {
            map.set_letter(y, Word::letter(x));
            generators.retain(|&g| g != y.gen());
            removed = Some(y.gen());
        }
    }
    let mut restrictions = transport(obj.restrictions(), &map)?;
    match kind {
        FoldKind::NoCancellation => {
            restrictions.insert(edge.pair());
        }
        FoldKind::BothSurvive => {
            let s_inv = Letter::neg(fresh.unwrap());
            restrictions.insert(LetterPair::new(x, s_inv).unwrap());
            restrictions.insert(LetterPair::new(y, s_inv).unwrap());
            restrictions.insert(edge.pair());
        }
        FoldKind::FirstAbsorbs => {
            restrictions.insert(LetterPair::new(x, y.inverse()).unwrap());
        }
        FoldKind::SecondAbsorbs => {
            restrictions.insert(LetterPair::new(x.inverse(), y).unwrap());
        }
        FoldKind::FullCancellation => {}
    }
    let target = FgrObject::new(generators, restrictions)?;
    let morphism = FgrMorphism::new(obj.clone(), target, map)?;
    Ok(FoldingMorphism {
        kind,
        edge,
        inverse_pair,
        morphism,
        fresh,
        removed,
    })
}

/// Classifies φ's cancellation type at the edge and factors φ = φ′ ∘ ψ^i
/// exactly; φ′ is a valid morphism out of the target into (X, W_X).
pub fn classify_and_factor(
    phi: &Substitution,
    obj: &FgrObject,
    edge: OrientedEdge,
) -> Result<(FoldingMorphism, Substitution), PartitionError> {
    check_edge(obj, edge)?;
    let u = phi.apply_letter(edge.x)?;
    let v = phi.apply_letter(edge.y)?;
    let split = cancellation_split(&u, &v)?;
    let folding = build_folding_morphism(obj, edge, split.kind)?;
    let mut residual = Substitution::new();
    for &g in folding.target().generators() {
        if Some(g) == folding.fresh {
            continue;
        }
        residual.set(g, phi.get(g).ok_or(FgrError::MissingImage(g))?.clone());
    }
    match split.kind {
        FoldKind::NoCancellation | FoldKind::FullCancellation => {}
        FoldKind::BothSurvive => {
            let s = folding.fresh.unwrap();
            residual.set(s, split.t.clone());
            if folding.inverse_pair {
                // φ(x) = t⁻¹·m·t, so the residual image of x is the middle m
                let middle = split.t.concat(&split.u0);
                residual.set_letter(edge.x, middle);
            } else {
                residual.set_letter(edge.x, split.u0.clone());
                residual.set_letter(edge.y, split.v0.clone());
            }
        }
        FoldKind::FirstAbsorbs => {
            residual.set_letter(edge.x, split.u0.clone());
        }
        FoldKind::SecondAbsorbs => {
            residual.set_letter(edge.y, split.v0.clone());
        }
    }
    // recomposition identity: φ = φ′ ∘ ψ, letter for letter
    let recomposed = folding.morphism.map().then(&residual)?;
    for &g in obj.generators() {
        if recomposed.get(g) != phi.get(g) {
            return Err(PartitionError::DegenerateTransport(edge.pair()));
        }
    }
    let ambient = FgrObject::saturated(residual.image_gens());
    validate(folding.target(), &ambient, &residual)?;
    Ok((folding, residual))
}

/// Picks the next unrestricted edge to split during decomposition.
pub trait EdgePicker {
    fn pick(&mut self, obj: &FgrObject, slack: &[LetterPair]) -> OrientedEdge;
}

/// Lexicographically least unrestricted edge, oriented by letter order.
pub struct LexPicker;

impl EdgePicker for LexPicker {
    fn pick(&mut self, _obj: &FgrObject, slack: &[LetterPair]) -> OrientedEdge {
        OrientedEdge::canonical(slack[0])
    }
}

/// Repeated factorization until the restriction set saturates. Returns the
/// chain [ψ₁, …, ψ_k] and the final residual, whose images are pairwise
/// cancellation-free.
pub fn decompose(
    phi: &Substitution,
    obj: &FgrObject,
    picker: &mut dyn EdgePicker,
) -> Result<(Vec<FoldingMorphism>, Substitution), PartitionError> {
    let mut chain = Vec::new();
    let mut current = phi.clone();
    let mut object = obj.clone();
    let mut last_height = height(&current, &object)?;
    loop {
        let slack = object.slack_edges();
        if slack.is_empty() {
            return Ok((chain, current));
        }
        let edge = picker.pick(&object, &slack);
        let (folding, residual) = classify_and_factor(&current, &object, edge)?;
        object = folding.target().clone();
        current = residual;
        let h = height(&current, &object)?;
        if h >= last_height {
            return Err(PartitionError::DegenerateTransport(edge.pair()));
        }
        last_height = h;
        chain.push(folding);
    }
}

/// The triangle rule: with x.y restricted and z.x, z.y both unrestricted,
/// every morphism factors through one of the two kind-1 steps at z.y and
/// z.x (a cover, not a partition).
pub fn triangle_split(
    obj: &FgrObject,
    restricted: LetterPair,
    z: Letter,
) -> Result<(FoldingMorphism, FoldingMorphism), PartitionError> {
    if !obj.restrictions().contains(&restricted) {
        return Err(PartitionError::TrianglePrecondition);
    }
    let (x, y) = (restricted.first(), restricted.second());
    let zx = LetterPair::new(z, x).ok_or(PartitionError::TrianglePrecondition)?;
    let zy = LetterPair::new(z, y).ok_or(PartitionError::TrianglePrecondition)?;
    let full = obj.full_whitehead();
    let unrestricted = |p: &LetterPair| full.contains(p) && !obj.restrictions().contains(p);
    if !unrestricted(&zx) || !unrestricted(&zy) {
        return Err(PartitionError::TrianglePrecondition);
    }
    let first = build_folding_morphism(
        obj,
        OrientedEdge::new(z, y).unwrap(),
        FoldKind::NoCancellation,
    )?;
    let second = build_folding_morphism(
        obj,
        OrientedEdge::new(z, x).unwrap(),
        FoldKind::NoCancellation,
    )?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn gens(names: &[&str]) -> Vec<Gen> {
        names.iter().map(|n| Gen::new(n)).collect()
    }

    fn letter(tok: &str) -> Letter {
        Letter::parse_token(tok).unwrap()
    }

    fn pair(a: &str, b: &str) -> LetterPair {
        LetterPair::new(letter(a), letter(b)).unwrap()
    }

    fn pairs(list: &[(&str, &str)]) -> WhiteheadEdgeSet {
        WhiteheadEdgeSet::from_pairs(list.iter().map(|&(a, b)| pair(a, b)))
    }

    #[test]
    fn kind1_is_identity_with_grown_restrictions() {
        let obj = FgrObject::unrestricted(gens(&["x", "y"]));
        let edge = OrientedEdge::new(letter("x"), letter("y")).unwrap();
        let f = build_folding_morphism(&obj, edge, FoldKind::NoCancellation).unwrap();
        assert_eq!(
            f.morphism.map(),
            &Substitution::identity_on(gens(&["x", "y"]))
        );
        assert!(f.target().restrictions().contains(&pair("x", "y")));
        assert_eq!(f.target().restrictions().len(), 1);
    }

    #[test]
    fn kind2_on_inverse_pair_conjugates() {
        // edge x.x⁻¹, kind 2: x ↦ s⁻¹xs with the three new restrictions
        let obj = FgrObject::unrestricted(gens(&["x"]));
        let edge = OrientedEdge::new(letter("x"), letter("~x")).unwrap();
        let f = build_folding_morphism(&obj, edge, FoldKind::BothSurvive).unwrap();
        let s = f.fresh.unwrap();
        assert_eq!(s.name(), "t"); // first fresh name
        assert_eq!(f.morphism.map().get(Gen::new("x")), Some(&w("Txt")));
        for p in [pair("x", "~t"), pair("~x", "~t"), pair("x", "~x")] {
            assert!(f.target().restrictions().contains(&p), "missing {p}");
        }
    }

    #[test]
    fn kind3_matches_absorbing_case() {
        // ({y,u}, N) split by kind 3 at u.y⁻¹: u ↦ uy⁻¹
        let obj = FgrObject::new(
            gens(&["y", "u"]),
            pairs(&[("y", "~u"), ("u", "y"), ("u", "~u"), ("~u", "~y")]),
        )
        .unwrap();
        let edge = OrientedEdge::new(letter("u"), letter("~y")).unwrap();
        let f = build_folding_morphism(&obj, edge, FoldKind::FirstAbsorbs).unwrap();
        assert_eq!(f.morphism.map().get(Gen::new("u")), Some(&w("uY")));
        let expected = pairs(&[("y", "~u"), ("~y", "y"), ("~y", "~u"), ("u", "y")]);
        assert_eq!(f.target().restrictions(), &expected);
    }

    #[test]
    fn forbidden_kinds_are_rejected() {
        let obj = FgrObject::unrestricted(gens(&["x"]));
        let edge = OrientedEdge::new(letter("x"), letter("~x")).unwrap();
        for kind in [
            FoldKind::FirstAbsorbs,
            FoldKind::SecondAbsorbs,
            FoldKind::FullCancellation,
        ] {
            assert!(matches!(
                build_folding_morphism(&obj, edge, kind),
                Err(PartitionError::KindForbidden { .. })
            ));
        }
        // x⁻¹.y⁻¹ restricted forbids kind 5
        let obj = FgrObject::new(gens(&["x", "y"]), pairs(&[("~x", "~y")])).unwrap();
        let edge = OrientedEdge::new(letter("x"), letter("y")).unwrap();
        assert!(matches!(
            build_folding_morphism(&obj, edge, FoldKind::FullCancellation),
            Err(PartitionError::KindForbidden { .. })
        ));
        assert_eq!(admissible_kinds(&obj, edge).unwrap().len(), 4);
    }

    #[test]
    fn factor_examples() {
        let obj = FgrObject::unrestricted(gens(&["x", "y"]));
        let edge = OrientedEdge::new(letter("x"), letter("y")).unwrap();

        let phi = Substitution::parse("x=ab,y=cb").unwrap();
        let (f, residual) = classify_and_factor(&phi, &obj, edge).unwrap();
        assert_eq!(f.kind, FoldKind::BothSurvive);
        assert_eq!(residual.get(Gen::new("x")), Some(&w("a")));
        assert_eq!(residual.get(Gen::new("y")), Some(&w("c")));
        assert_eq!(residual.get(f.fresh.unwrap()), Some(&w("b")));

        let phi = Substitution::parse("x=abc,y=bc").unwrap();
        let (f, residual) = classify_and_factor(&phi, &obj, edge).unwrap();
        assert_eq!(f.kind, FoldKind::FirstAbsorbs);
        assert_eq!(f.morphism.map().get(Gen::new("x")), Some(&w("xy")));
        assert_eq!(residual.get(Gen::new("x")), Some(&w("a")));

        let phi = Substitution::parse("x=ab,y=ab").unwrap();
        let (f, residual) = classify_and_factor(&phi, &obj, edge).unwrap();
        assert_eq!(f.kind, FoldKind::FullCancellation);
        assert_eq!(f.removed, Some(Gen::new("y")));
        assert_eq!(f.target().generators(), &gens(&["x"])[..]);
        assert_eq!(residual.get(Gen::new("x")), Some(&w("ab")));
    }

    #[test]
    fn factor_inverse_pair_takes_conjugated_middle() {
        let obj = FgrObject::unrestricted(gens(&["x"]));
        let edge = OrientedEdge::new(letter("x"), letter("~x")).unwrap();
        let phi = Substitution::parse("x=Bab").unwrap();
        let (f, residual) = classify_and_factor(&phi, &obj, edge).unwrap();
        assert_eq!(f.kind, FoldKind::BothSurvive);
        assert_eq!(residual.get(Gen::new("x")), Some(&w("a")));
        assert_eq!(residual.get(f.fresh.unwrap()), Some(&w("b")));
        let recomposed = f.morphism.map().then(&residual).unwrap();
        assert_eq!(recomposed.get(Gen::new("x")), Some(&w("Bab")));
    }

    #[test]
    fn height_examples() {
        let obj = FgrObject::unrestricted(gens(&["x", "y"]));
        let phi = Substitution::parse("x=ab,y=b").unwrap();
        let h = height(&phi, &obj).unwrap();
        assert_eq!((h.total_length, h.slack), (3, 6));
    }

    #[test]
    fn decompose_terminates_and_saturates() {
        let obj = FgrObject::unrestricted(gens(&["x", "y"]));
        let phi = Substitution::parse("x=a,y=a").unwrap();
        let (chain, residual) = decompose(&phi, &obj, &mut LexPicker).unwrap();
        assert!(!chain.is_empty());
        assert!(chain.iter().any(|f| f.kind == FoldKind::FullCancellation));
        // the surviving generator keeps its single-letter image
        assert!(residual.iter().all(|(_, w)| w.len() == 1));
        let mut map = residual.clone();
        for f in chain.iter().rev() {
            map = f.morphism.map().then(&map).unwrap();
        }
        for &g in obj.generators() {
            assert_eq!(map.get(g), phi.get(g));
        }
        // saturated objects decompose trivially
        let saturated = FgrObject::saturated(gens(&["x"]));
        let id = Substitution::parse("x=a").unwrap();
        let (chain, _) = decompose(&id, &saturated, &mut LexPicker).unwrap();
        assert!(chain.is_empty());
    }

    fn random_word(rng: &mut StdRng, alphabet: &[Gen], max_len: usize) -> Word {
        let len = rng.gen_range(1..=max_len);
        let mut letters: Vec<Letter> = Vec::new();
        while letters.len() < len {
            let g = *alphabet.choose(rng).unwrap();
            let l = if rng.gen() {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            };
            if letters.last() == Some(&l.inverse()) {
                continue;
            }
            letters.push(l);
        }
        Word::reduce(letters)
    }

    #[test]
    fn random_decomposition_recomposes_with_decreasing_height() {
        let mut rng = StdRng::seed_from_u64(43);
        let y = gens(&["x", "y", "z"]);
        let x = gens(&["a", "b"]);
        for _ in 0..200 {
            let obj = FgrObject::unrestricted(y.clone());
            let mut phi = Substitution::new();
            for &g in &y {
                phi.set(g, random_word(&mut rng, &x, 4));
            }
            let (chain, residual) = decompose(&phi, &obj, &mut LexPicker).unwrap();
            let h0 = height(&phi, &obj).unwrap();
            // at most h0.total_length length-dropping steps; each kind-1 run
            // is bounded by the largest possible slack, over an alphabet
            // that grows by at most one generator per length drop
            let max_letters = 2 * (y.len() + h0.total_length);
            let max_slack = max_letters * (max_letters - 1) / 2;
            let bound = h0.total_length + (h0.total_length + 1) * max_slack;
            assert!(chain.len() <= bound);
            let final_obj = chain
                .last()
                .map(|f| f.target().clone())
                .unwrap_or_else(|| obj.clone());
            assert!(final_obj.is_saturated());
            // final residual has pairwise cancellation-free images
            for p in final_obj.full_whitehead().iter() {
                assert_ne!(
                    residual.tau(p.first()).unwrap(),
                    residual.tau(p.second()).unwrap()
                );
            }
            let mut map = residual.clone();
            for f in chain.iter().rev() {
                map = f.morphism.map().then(&map).unwrap();
            }
            for &g in &y {
                assert_eq!(map.get(g), phi.get(g), "phi={phi:?}");
            }
        }
    }

    #[test]
    fn triangle_rule_examples_and_cover() {
        // restricted u.u⁻¹ with unrestricted y⁻¹.u and y⁻¹.u⁻¹
        let obj = FgrObject::new(
            gens(&["y", "u"]),
            pairs(&[("y", "~u"), ("u", "y"), ("u", "~u")]),
        )
        .unwrap();
        let (first, second) = triangle_split(&obj, pair("u", "~u"), letter("~y")).unwrap();
        assert_eq!(first.kind, FoldKind::NoCancellation);
        assert_eq!(second.kind, FoldKind::NoCancellation);

        assert!(matches!(
            triangle_split(&obj, pair("u", "y"), letter("~u")),
            Err(PartitionError::TrianglePrecondition)
        ));

        // every admissible φ factors through at least one side
        let mut rng = StdRng::seed_from_u64(47);
        let x = gens(&["a", "b"]);
        let ambient = FgrObject::saturated(x.clone());
        let mut found = 0;
        while found < 100 {
            let mut phi = Substitution::new();
            for &g in obj.generators() {
                phi.set(g, random_word(&mut rng, &x, 4));
            }
            if validate(&obj, &ambient, &phi).is_err() {
                continue;
            }
            found += 1;
            let through_first = validate(first.target(), &ambient, &phi).is_ok();
            let through_second = validate(second.target(), &ambient, &phi).is_ok();
            assert!(through_first || through_second, "phi={phi:?}");
        }
    }

    #[test]
    fn exactly_one_kind_factors_each_morphism() {
        let mut rng = StdRng::seed_from_u64(53);
        let y = gens(&["x", "y"]);
        let ambient = gens(&["a", "b"]);
        let obj = FgrObject::unrestricted(y.clone());
        let edge = OrientedEdge::new(letter("x"), letter("y")).unwrap();
        for _ in 0..300 {
            let mut phi = Substitution::new();
            for &g in &y {
                phi.set(g, random_word(&mut rng, &ambient, 4));
            }
            let (f, residual) = classify_and_factor(&phi, &obj, edge).unwrap();
            let recomposed = f.morphism.map().then(&residual).unwrap();
            for &g in &y {
                assert_eq!(recomposed.get(g), phi.get(g));
            }
            let h_phi = height(&phi, &obj).unwrap();
            let h_res = height(&residual, f.target()).unwrap();
            assert!(h_res < h_phi, "phi={phi:?} kind={:?}", f.kind);
        }
    }
}
