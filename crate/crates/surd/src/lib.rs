//! Exact obstruction calculus for adjoining formal radicals to graded rings
//! and for extending gradings, carried out entirely in the category of
//! finitely generated abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] — arbitrary-precision integer matrices, Smith normal form
//!   with unimodular transforms, and exact linear solving;
//! * [`abelian`] — finitely generated abelian groups in canonical form,
//!   homomorphisms, `Hom`/`Ext` groups, torsion and quotient functors,
//!   Eilenberg–MacLane mapping-group tables, the Yoneda pairing, pushouts;
//! * [`extensions`] — abelian extensions presented by normalized symmetric
//!   2-cocycles: Baer sum, pushforward, splitting tests, total groups, and
//!   extension of homomorphisms over a total group;
//! * [`models`] — two-stage unit models (π₀, π₁, k-invariant) and Picard
//!   models (π₀pic, π₁pic, twist), with validators;
//! * [`radicals`] — obstruction classes for adjoining a formal n-th root of
//!   a unit, lift enumeration, and the resulting twisted group algebras;
//! * [`gradings`] — Picard-side obstructions for making gradings symmetric
//!   and for extending them along an extension of grading groups;
//! * [`twisted_tensor`] — cocycle-twisted tensor products of graded modules
//!   with Koszul sign forms and coherence checks.
//!
//! All arithmetic is exact (`num-bigint`); nothing here rounds or samples.
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature
//! (default) only forwards to the integer backends.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abelian;
mod error;
pub mod extensions;
pub mod gradings;
pub mod matrix;
pub mod models;
pub mod radicals;
pub mod twisted_tensor;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
