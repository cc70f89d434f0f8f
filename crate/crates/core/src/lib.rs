//! Finite, decidable machinery around complete bifix decodings of subshift
//! languages.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: alphabets and words over letter indices.
//! * [`substitution`]: substitutions, their incidence matrices and the
//!   structural tests (primitive, proper, stable, periodic at scale), plus
//!   exact generation of the factor language up to a length bound.
//! * [`language`]: finite windows onto factorial languages ([`FactorSet`]),
//!   Rauzy graphs, recurrence and uniform recurrence at scale, extension
//!   graphs and complexity.
//! * [`code`]: finite codes, Sardinas–Patterson, right/left completeness
//!   relative to a language, maximality, intersections and unique parsing.
//! * [`monoid`]: minimal automata of `X*`, transition (syntactic) monoids,
//!   Green's relations and group-code detection.
//! * [`charging`]: finite-quotient certificates for charged group codes,
//!   omega-images, free-group invertibility and procyclic fingerprints.
//! * [`decoding`]: decodings `F ∩ X*` over the alphabet `X`, higher powers
//!   and consistency reports.
//!
//! Every verdict computed on a finite window carries the bound it was
//! checked up to.
//!
//! Data-parallel sweeps go through [`par::Execution`]; with the `parallel`
//! feature disabled everything runs sequentially.

pub mod charging;
pub mod code;
pub mod decoding;
pub mod error;
pub mod language;
pub mod monoid;
pub mod par;
pub mod source;
pub mod substitution;
pub mod word;

mod util;

pub use charging::{ChargeOutcome, ChargeVerdict, FiniteGroup, GroupCodeSpec};
pub use code::FiniteCode;
pub use decoding::DecodedLanguage;
pub use error::{Error, Result};
pub use language::FactorSet;
pub use monoid::{Dfa, FiniteMonoidPresentation, GreenSummary};
pub use source::LanguageSource;
pub use substitution::{PeriodicityVerdict, Substitution};
pub use word::{Alphabet, Letter, Word};
