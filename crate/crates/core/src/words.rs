//! Reduced words over named alphabets: free reduction, cyclic reduction,
//! cancellation analysis of products, and homomorphic substitution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

static INTERNER: OnceLock<Mutex<HashMap<String, &'static str>>> = OnceLock::new();

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("tau undefined on identity")]
    TauOfIdentity,
    #[error("no image for generator {0}")]
    MissingImage(Gen),
    #[error("invalid word syntax: {0}")]
    Parse(String),
    #[error("invalid generator name: {0:?}")]
    BadName(String),
}

/// Interned generator symbol. Comparison and ordering go by name, so they are
/// stable across runs regardless of interning order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(&'static str);

impl Gen {
    pub fn new(name: &str) -> Gen {
        Gen::try_new(name).expect("invalid generator name")
    }

    pub fn try_new(name: &str) -> Result<Gen, WordError> {
        if name.is_empty() || name == "1" || name.contains([',', '~', '.', ' ']) {
            return Err(WordError::BadName(name.to_owned()));
        }
        let mut map = INTERNER
            .get_or_init(|| Mutex::new(HashMap::new()))
            .lock()
            .unwrap();
        if let Some(s) = map.get(name) {
            return Ok(Gen(s));
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        map.insert(name.to_owned(), leaked);
        Ok(Gen(leaked))
    }

    pub fn name(&self) -> &'static str {
        self.0
    }

    /// True when the name renders as a single lowercase character, which
    /// enables the compact text form (uppercase meaning inverse).
    pub fn is_compact(&self) -> bool {
        let mut chars = self.0.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => c.is_alphabetic() && c.is_lowercase(),
            _ => false,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gen({})", self.0)
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: Gen,
    positive: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Letter {
        Letter {
            gen,
            positive: true,
        }
    }

    pub fn neg(gen: Gen) -> Letter {
        Letter {
            gen,
            positive: false,
        }
    }

    pub fn gen(&self) -> Gen {
        self.gen
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            positive: !self.positive,
        }
    }

    /// Token form: `x` or `~x`.
    pub fn token(&self) -> String {
        if self.positive {
            self.gen.0.to_owned()
        } else {
            format!("~{}", self.gen.0)
        }
    }

    pub fn parse_token(tok: &str) -> Result<Letter, WordError> {
        let tok = tok.trim();
        if let Some(rest) = tok.strip_prefix('~') {
            Ok(Letter::neg(Gen::try_new(rest)?))
        } else {
            Ok(Letter::pos(Gen::try_new(tok)?))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            f.write_str(self.gen.0)
        } else if self.gen.is_compact() {
            for c in self.gen.0.chars().flat_map(|c| c.to_uppercase()) {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            write!(f, "~{}", self.gen.0)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An unordered pair of distinct letters, kept sorted. These are the edges of
/// Whitehead graphs and the elements of restriction sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterPair(Letter, Letter);

impl LetterPair {
    pub fn new(a: Letter, b: Letter) -> Option<LetterPair> {
        if a == b {
            None
        } else if a < b {
            Some(LetterPair(a, b))
        } else {
            Some(LetterPair(b, a))
        }
    }

    pub fn first(&self) -> Letter {
        self.0
    }

    pub fn second(&self) -> Letter {
        self.1
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0 == l || self.1 == l
    }

    /// The endpoint other than `l`, if `l` is an endpoint.
    pub fn other(&self, l: Letter) -> Option<Letter> {
        if self.0 == l {
            Some(self.1)
        } else if self.1 == l {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for LetterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.0, self.1)
    }
}

impl fmt::Debug for LetterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A freely reduced word. The empty word is the identity and prints as "1".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Free reduction of an arbitrary letter sequence. Idempotent on reduced
    /// input and length-nonincreasing.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Last letter of a nonempty reduced word.
    pub fn tau(&self) -> Result<Letter, WordError> {
        self.0.last().copied().ok_or(WordError::TauOfIdentity)
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => a != b.inverse(),
            _ => true,
        }
    }

    /// Splits `w` as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced and the conjugator maximal.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        (Word(self.0[..lo].to_vec()), Word(self.0[lo..hi].to_vec()))
    }

    pub fn gens(&self) -> Vec<Gen> {
        let mut seen = Vec::new();
        for l in &self.0 {
            if !seen.contains(&l.gen) {
                seen.push(l.gen);
            }
        }
        seen
    }

    /// Parses either the compact form ("bbabA", uppercase = inverse), the
    /// token form ("u,v,~u"), or "1" for the identity.
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::identity());
        }
        if s.contains(',') || s.contains('~') {
            let letters = s
                .split(',')
                .map(Letter::parse_token)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Word::reduce(letters));
        }
        if s.chars().all(|c| c.is_alphabetic()) {
            let mut letters = Vec::new();
            for c in s.chars() {
                if c.is_lowercase() {
                    letters.push(Letter::pos(Gen::try_new(&c.to_string())?));
                } else {
                    let lower: String = c.to_lowercase().collect();
                    letters.push(Letter::neg(Gen::try_new(&lower)?));
                }
            }
            return Ok(Word::reduce(letters));
        }
        // single multi-character token
        Ok(Word::letter(Letter::parse_token(s)?))
    }

    /// Token form regardless of alphabet shape; used in wire formats.
    pub fn tokens(&self) -> String {
        if self.is_empty() {
            return "1".to_owned();
        }
        self.0
            .iter()
            .map(|l| l.token())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        if self.0.iter().all(|l| l.gen.is_compact()) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.tokens())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The five cancellation types of a product u·v⁻¹, with the maximal
/// cancelled part `t` and the stubs `u = u0·t`, `v = v0·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoldKind {
    NoCancellation = 1,
    BothSurvive = 2,
    FirstAbsorbs = 3,
    SecondAbsorbs = 4,
    FullCancellation = 5,
}

impl FoldKind {
    pub fn index(&self) -> u8 {
        *self as u8
    }

    pub fn from_index(i: u8) -> Option<FoldKind> {
        match i {
            1 => Some(FoldKind::NoCancellation),
            2 => Some(FoldKind::BothSurvive),
            3 => Some(FoldKind::FirstAbsorbs),
            4 => Some(FoldKind::SecondAbsorbs),
            5 => Some(FoldKind::FullCancellation),
            _ => None,
        }
    }

    pub const ALL: [FoldKind; 5] = [
        FoldKind::NoCancellation,
        FoldKind::BothSurvive,
        FoldKind::FirstAbsorbs,
        FoldKind::SecondAbsorbs,
        FoldKind::FullCancellation,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationSplit {
    pub t: Word,
    pub u0: Word,
    pub v0: Word,
    pub kind: FoldKind,
}

/// Analyzes the cancellation in u·v⁻¹, i.e. the maximal common suffix of u
/// and v. Exactly one kind applies to every input pair.
pub fn cancellation_split(u: &Word, v: &Word) -> Result<CancellationSplit, WordError> {
    if u.is_empty() || v.is_empty() {
        return Err(WordError::TauOfIdentity);
    }
    if u == v {
        return Ok(CancellationSplit {
            t: u.clone(),
            u0: Word::identity(),
            v0: Word::identity(),
            kind: FoldKind::FullCancellation,
        });
    }
    let ul = u.letters();
    let vl = v.letters();
    let mut k = 0;
    while k < ul.len() && k < vl.len() && ul[ul.len() - 1 - k] == vl[vl.len() - 1 - k] {
        k += 1;
    }
    let t = Word(ul[ul.len() - k..].to_vec());
    let u0 = Word(ul[..ul.len() - k].to_vec());
    let v0 = Word(vl[..vl.len() - k].to_vec());
    let kind = if k == 0 {
        FoldKind::NoCancellation
    } else if v0.is_empty() {
        FoldKind::FirstAbsorbs
    } else if u0.is_empty() {
        FoldKind::SecondAbsorbs
    } else {
        FoldKind::BothSurvive
    };
    Ok(CancellationSplit { t, u0, v0, kind })
}

/// Images of generators under a homomorphism of free groups, applicable to
/// letters, words and (via the edge-subdivision functor) graphs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Substitution {
    images: BTreeMap<Gen, Word>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn identity_on<I: IntoIterator<Item = Gen>>(gens: I) -> Substitution {
        let mut s = Substitution::new();
        for g in gens {
            s.set(g, Word::letter(Letter::pos(g)));
        }
        s
    }

    pub fn set(&mut self, gen: Gen, image: Word) {
        self.images.insert(gen, image);
    }

    /// Defines the image of a letter (negative letters set the generator to
    /// the inverse word).
    pub fn set_letter(&mut self, l: Letter, image: Word) {
        if l.is_positive() {
            self.set(l.gen(), image);
        } else {
            self.set(l.gen(), image.inverse());
        }
    }

    pub fn get(&self, gen: Gen) -> Option<&Word> {
        self.images.get(&gen)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Gen, &Word)> {
        self.images.iter().map(|(g, w)| (*g, w))
    }

    pub fn domain(&self) -> impl Iterator<Item = Gen> + '_ {
        self.images.keys().copied()
    }

    pub fn apply_letter(&self, l: Letter) -> Result<Word, WordError> {
        let img = self
            .images
            .get(&l.gen())
            .ok_or(WordError::MissingImage(l.gen()))?;
        Ok(if l.is_positive() {
            img.clone()
        } else {
            img.inverse()
        })
    }

    /// Reduced image word; respects inverses and concatenation.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for &l in w.letters() {
            letters.extend_from_slice(self.apply_letter(l)?.letters());
        }
        Ok(Word::reduce(letters))
    }

    /// Last letter of the image of a letter.
    pub fn tau(&self, l: Letter) -> Result<Letter, WordError> {
        self.apply_letter(l)?.tau()
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.images.values().all(|w| !w.is_empty())
    }

    /// Composition `other ∘ self`: apply `other` to this map's images.
    pub fn then(&self, other: &Substitution) -> Result<Substitution, WordError> {
        let mut out = Substitution::new();
        for (g, w) in self.iter() {
            out.set(g, other.apply(w)?);
        }
        Ok(out)
    }

    /// Letters of the codomain that actually appear in the images.
    pub fn image_gens(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for w in self.images.values() {
            for l in w.letters() {
                if !out.contains(&l.gen()) {
                    out.push(l.gen());
                }
            }
        }
        out.sort();
        out
    }

    /// Parses "a=~u,b=uv" style image lists.
    pub fn parse(s: &str) -> Result<Substitution, WordError> {
        let mut out = Substitution::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (gen, word) = part
                .split_once('=')
                .ok_or_else(|| WordError::Parse(part.to_owned()))?;
            out.set(Gen::try_new(gen.trim())?, Word::parse(word)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(g, w)| format!("{g}->{w}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = Letter::pos(Gen::new("a"));
        let b = Letter::pos(Gen::new("b"));
        assert_eq!(Word::reduce([a, b, b.inverse(), a]), w("aa"));
        assert_eq!(Word::reduce([a, a.inverse()]), Word::identity());
        assert_eq!(w("bbabA").to_string(), "bbabA");
    }

    #[test]
    fn tau_examples() {
        assert_eq!(w("bbabA").tau().unwrap(), Letter::neg(Gen::new("a")));
        assert_eq!(w("a").tau().unwrap(), Letter::pos(Gen::new("a")));
        assert_eq!(Word::identity().tau(), Err(WordError::TauOfIdentity));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("abA").cyclic_reduce(), (w("a"), w("b")));
        assert_eq!(w("bbabA").cyclic_reduce(), (Word::identity(), w("bbabA")));
        assert_eq!(w("abcBA").cyclic_reduce(), (w("ab"), w("c")));
    }

    #[test]
    fn cancellation_split_examples() {
        let s = cancellation_split(&w("ab"), &w("cb")).unwrap();
        assert_eq!(
            (s.t, s.u0, s.v0, s.kind),
            (w("b"), w("a"), w("c"), FoldKind::BothSurvive)
        );
        let s = cancellation_split(&w("abc"), &w("bc")).unwrap();
        assert_eq!(
            (s.t, s.u0, s.v0, s.kind),
            (w("bc"), w("a"), w("1"), FoldKind::FirstAbsorbs)
        );
        let s = cancellation_split(&w("ab"), &w("ab")).unwrap();
        assert_eq!(s.kind, FoldKind::FullCancellation);
        assert_eq!(s.t, w("ab"));
        let s = cancellation_split(&w("a"), &w("b")).unwrap();
        assert_eq!((s.t, s.kind), (Word::identity(), FoldKind::NoCancellation));
        assert!(cancellation_split(&Word::identity(), &w("a")).is_err());
    }

    #[test]
    fn substitute_examples() {
        let phi = Substitution::parse("a=~u,b=uv").unwrap();
        assert_eq!(phi.apply(&w("bbabA")).unwrap(), w("uvuvvu"));

        let back = Substitution::parse("α=b,β=abA").unwrap();
        assert_eq!(back.apply(&w("ααβ")).unwrap(), w("bbabA"));

        let id = Substitution::identity_on([Gen::new("a"), Gen::new("b")]);
        assert_eq!(id.apply(&w("bbabA")).unwrap(), w("bbabA"));

        let missing = Substitution::parse("a=u").unwrap();
        assert_eq!(
            missing.apply(&w("ab")),
            Err(WordError::MissingImage(Gen::new("b")))
        );
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["1", "a", "bbabA", "xyXY"] {
            assert_eq!(w(s).to_string(), s);
        }
        let tok = Word::parse("u,v,~u").unwrap();
        assert_eq!(tok.tokens(), "u,v,~u");
        assert_eq!(Word::parse(&tok.tokens()).unwrap(), tok);
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (0..4u8, any::<bool>()).prop_map(|(i, pos)| {
            let g = Gen::new(["a", "b", "c", "d"][i as usize]);
            if pos {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            }
        })
    }

    fn arb_raw() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(arb_letter(), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_nonincreasing(raw in arb_raw()) {
            let once = Word::reduce(raw.iter().copied());
            prop_assert!(once.len() <= raw.len());
            let twice = Word::reduce(once.letters().iter().copied());
            prop_assert_eq!(&once, &twice);
        }

        #[test]
        fn reduce_ww_inverse_is_identity(raw in arb_raw()) {
            let word = Word::reduce(raw.iter().copied());
            prop_assert!(word.concat(&word.inverse()).is_empty());
        }

        #[test]
        fn split_recomposition_matches_naive_reduction(a in arb_raw(), b in arb_raw()) {
            let u = Word::reduce(a.iter().copied());
            let v = Word::reduce(b.iter().copied());
            prop_assume!(!u.is_empty() && !v.is_empty());
            let s = cancellation_split(&u, &v).unwrap();
            // u = u0·t and v = v0·t with no cancellation at the dots
            prop_assert_eq!(s.u0.len() + s.t.len(), u.len());
            prop_assert_eq!(s.v0.len() + s.t.len(), v.len());
            // naive oracle: fully reduce u·v⁻¹ letter by letter
            let naive = u.concat(&v.inverse());
            let dot = s.u0.concat(&s.v0.inverse());
            prop_assert_eq!(&naive, &dot);
            if s.kind != FoldKind::FullCancellation {
                prop_assert_eq!(naive.len(), s.u0.len() + s.v0.len());
            }
        }

        #[test]
        fn split_kind_is_total_and_exclusive(a in arb_raw(), b in arb_raw()) {
            let u = Word::reduce(a.iter().copied());
            let v = Word::reduce(b.iter().copied());
            prop_assume!(!u.is_empty() && !v.is_empty());
            let s = cancellation_split(&u, &v).unwrap();
            let conds = [
                s.t.is_empty(),
                !s.t.is_empty() && !s.u0.is_empty() && !s.v0.is_empty(),
                !s.t.is_empty() && s.v0.is_empty() && !s.u0.is_empty(),
                !s.t.is_empty() && s.u0.is_empty() && !s.v0.is_empty(),
                u == v,
            ];
            prop_assert_eq!(conds.iter().filter(|c| **c).count(), 1);
            prop_assert!(conds[(s.kind.index() - 1) as usize]);
        }

        #[test]
        fn cyclic_reduce_invariants(raw in arb_raw()) {
            let word = Word::reduce(raw.iter().copied());
            let (conj, core) = word.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(word.len(), core.len() + 2 * conj.len());
            let recomposed = conj.concat(&core).concat(&conj.inverse());
            prop_assert_eq!(&recomposed, &word);
        }
    }
}
