//! Computing with core graphs of free-group subgroups.
//!
//! The crate provides reduced words and labeled Serre graphs with folding,
//! trimming and core computation; the category of free groups with
//! restrictions (FGR) together with its edge-subdivision functor; the
//! five-way partition of homomorphism sets at a Whitehead edge; a recursive
//! case-splitting solver for basis-independent surjectivity problems; the
//! eight-case change of coordinates for the extension ⟨bbaba⁻¹⟩ < ⟨b, aba⁻¹⟩;
//! and stencil-class exploration with a rank-2 primitivity test.

pub mod analysis;
pub mod coords;
pub mod fgr;
pub mod graph;
pub mod jsonio;
pub mod partition;
pub mod solver;
pub mod words;

pub use words::{Gen, Letter, LetterPair, Substitution, Word};
