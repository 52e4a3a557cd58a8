//! Derivation and verification of the eight tetrahedron equations.
//!
//! The tetrahedron equation is the three-dimensional analogue of the
//! Yang-Baxter equation. Because the plane has no preferred ordering, the
//! usual single equation is really one member of a system of eight, obtained
//! by reversing words of `R`-factors with three local rewriting rules
//! (an `S` triple reversal, an `S~` triple reversal, and a `Q` swap of
//! factors on disjoint spaces). This crate re-derives that system
//! mechanically and checks it numerically:
//!
//! - [`bruhat`] enumerates the higher Bruhat order `B(n,k)`; `B(4,2)` has
//!   eight classes and labels the eight equations.
//! - [`word`] implements the rewriting rules, searches complete
//!   order-reversal derivations, and generates the equations in their raw,
//!   shorthand, geometric, and classic forms.
//! - [`tensor`] embeds the operator letters as dense complex matrices on a
//!   product of six spaces and evaluates operator words.
//! - [`verify`] runs the numeric checks: the eight equations, the classic
//!   equation, Yang-Baxter, both obstruction relations, unitarity, the
//!   reduction that builds a solution from a Yang-Baxter `Q`, and the
//!   unitarity collapse.
//! - [`geometry`] realizes the sweep-line picture: a moving line hits the
//!   six intersections of four straight lines in an order that selects one
//!   of the eight equations.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `tetreq-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bruhat;
pub mod geometry;
pub mod golden;
pub mod rng;
pub mod tensor;
pub mod verify;
pub mod word;

mod math;
