//! Computational tools for mapping class groups of nonorientable surfaces:
//! free-group words and presentations, bounded consequence search,
//! coset enumeration, arithmetic in `Mod(N_{2,1})`, mod-2 homology
//! representations, Euler characteristic surface searches, and a verifier
//! for candidate automorphisms.

pub mod abelian;
pub mod catalog;
pub mod consequence;
pub mod coset;
pub mod error;
pub mod freeaut;
pub mod homology;
pub mod klein;
pub mod morphism;
pub mod presentation;
pub mod surface;
pub mod tietze;
pub mod verifier;
pub mod word;

pub use abelian::{abelianization_image, AbelianImage, Invariants};
pub use catalog::{CatalogEntry, SubgroupSpec};
pub use consequence::{is_consequence, Certificate, ConsequenceVerdict, Prover, Refuter};
pub use coset::{coset_enumerate, CosetTable};
pub use error::{Error, Result};
pub use homology::{Mod2Class, Mod2Matrix};
pub use klein::KleinElement;
pub use morphism::GeneratorMap;
pub use presentation::Presentation;
pub use surface::{ChainConstraint, Decomposition, SurfaceType};
pub use verifier::{EndomorphismSpec, OutInvariant};
pub use word::{GenId, Letter, Syllable, Word};
