//! Composition MV-algebras: finite models, the one-variable McNaughton
//! algebra with composition, ideal and module machinery, and the
//! one-variable substitution logic with its Hilbert-style proof checker.

pub mod cmv;
pub mod error;
pub mod io;
pub mod iso;
pub mod logic;
pub mod modules;
pub mod mv;
pub mod ops;
pub mod par;
pub mod pwl;
pub mod rational;
pub mod sample;
pub mod structure;
pub mod subset;
pub mod term;

pub use error::{Error, Result};
pub use ops::{CmvOps, MvOps};
pub use par::{Config, Exec};
pub use rational::Rational;
pub use subset::Subset;
