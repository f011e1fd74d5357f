//! Decides first-order separability of regular languages and builds
//! separating sentences.
//!
//! Languages come in as regexes or NFAs and are turned into one
//! [`RecognizingMorphism`]. [`saturation::saturate`] computes the family
//! of subsets that no first-order partition can split. Two languages are
//! separable exactly when no pair of their accepting elements lies in a
//! common member. When they are separable, [`synthesis`] builds a
//! separating sentence and [`synthesis::verify_separator`] checks it on
//! all short words. The [`omega`] module answers the same question for
//! languages of infinite words given by a finite ω-semigroup.

pub mod automata;
pub mod cli;
pub mod error;
pub mod gen;
pub mod logic;
pub mod morphism;
pub mod omega;
pub mod saturation;
pub mod semigroup;
pub mod subsets;
pub mod synthesis;

pub use error::{Error, Result};
pub use morphism::RecognizingMorphism;
pub use semigroup::{Element, FiniteSemigroup};
pub use subsets::{ElementSet, SubsetFamily};
