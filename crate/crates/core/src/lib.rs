//! Census engine for finite-index subgroups and finite covers.
//!
//! The crate enumerates index-`n` subgroups of finitely presented groups as
//! canonical coset tables, classifies them up to isomorphism where a complete
//! invariant is available (Fuchsian signatures, finite groups), and renders
//! exceptionality verdicts for surfaces, spherical space forms, circle
//! bundles, Sol torus bundles, crystallographic groups and connected sums.
//!
//! Module map:
//!
//! * [`presentations`]: words, finite presentations and the catalog groups.
//! * [`lowindex`]: low-index subgroup enumeration, Reidemeister–Schreier,
//!   conjugacy and normality.
//! * [`homology`]: Smith normal form, abelianization, cyclic surjection counts.
//! * [`fuchsian`]: signatures, orbifold Euler characteristic, subgroup
//!   signatures and isomorphism-type counts.
//! * [`todd_coxeter`]: coset enumeration over a subgroup given by words.
//! * [`finitegroups`]: explicit finite groups, subgroup lattices, isomorphism
//!   testing and the spherical exceptionality report.
//! * [`bundles`]: circle-bundle and Sol-bundle cover arithmetic.
//! * [`crystallographic`]: abelian/non-abelian equal-index witnesses.
//! * [`topology`]: surfaces, connected sums and the verdict dispatcher.
//! * [`cli`]: command-line front end producing JSON reports.

pub mod bundles;
pub mod cli;
pub mod crystallographic;
mod error;
pub mod finitegroups;
pub mod fuchsian;
pub mod homology;
pub mod lowindex;
pub mod par;
pub mod presentations;
pub mod todd_coxeter;
pub mod topology;

pub use error::{Error, Result};
