//! Combinatorial toolkit for subsemigroups `P` of groups `G`: constructible
//! right ideals, the left inverse hull, Toeplitz-type conditions, filter
//! spectra, and groupoid probes, collected into reproducible dossiers.

pub mod ambient;
pub mod catalog;
pub mod config;
pub mod dossier;
pub mod error;
pub mod groupoid;
pub mod hull;
pub mod ideal;
pub mod spectrum;
pub mod toeplitz;

pub use ambient::{Ambient, Cited, GroupElement, Kind, Metadata};
pub use error::{Error, Result};
pub use hull::{Letter, PartialIsometry};
pub use ideal::{Caps, Ideal, IdealFamily, Independence};
pub use spectrum::{BasicOpen, Filter, Spectrum};
