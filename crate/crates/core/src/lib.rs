//! Extended crystals `B̂(∞)` of simply-laced finite type and the braid group
//! action on them.
//!
//! The crate is `no_std` and only needs `alloc`. It is organized bottom-up:
//!
//! * [`cartan`]: Cartan data, roots, reduced words and braid-move paths.
//! * [`binf`]: `B(∞)` realized by Lusztig data, Kashiwara operators, star
//!   operators, Saito reflections and the Dynkin involution.
//! * [`multiseg`]: the type `A` multisegment realization, used as an
//!   independent oracle and as a readable text format.
//! * [`ext`]: the extended crystal with its operators `F̃_{i,k}`, `Ẽ_{i,k}`,
//!   the shift `D` and the connectivity walk.
//! * [`braid`]: the bijections `R_i`, `R*_i`, braid words and relation checks.
//! * [`folding`]: diagram automorphism folding, giving the non-simply-laced
//!   braid relations.
//! * [`labels`]: affine highest-weight labels for type `A_2^{(1)}`.
//!
//! Node labels in every text format are 1-based; internally indices are
//! 0-based.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod binf;
pub mod braid;
pub mod cartan;
mod error;
pub mod ext;
pub mod folding;
pub mod labels;
pub mod multiseg;
pub mod sample;

pub use binf::{BInfinity, BinfElt, Convention, KashiwaraOp, LocalData, LusztigDatum, Relabeling};
pub use braid::{BraidLetter, BraidWord, RelationReport, Sign};
pub use cartan::{CartanDatum, CartanType, Family, Move, ReducedWord, Weight, WeylElement};
pub use error::Error;
pub use ext::{ExtCrystal, ExtElt};
pub use folding::{FoldedCrystal, FoldingDatum};
pub use labels::AffineLabel;
pub use multiseg::{MultisegBridge, Multisegment, Segment};

pub type Result<T> = core::result::Result<T, Error>;
