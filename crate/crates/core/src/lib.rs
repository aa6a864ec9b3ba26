//! Construction and classification of Boolean bent functions.
//!
//! The crate covers truth tables and ANF ([`boolfun`], [`anf`]), linear
//! algebra over F_2 ([`gf2`]), finite fields ([`gf2m`]), vectorial functions
//! ([`vectorial`]), M-subspace enumeration ([`msub`]), bent constructions
//! ([`construct`]) and partial spread membership ([`psclass`]).
//!
//! Vectors of F_2^n are `u32` masks with coordinate `x_j` in bit `j - 1`.

pub mod anf;
pub mod battery;
pub mod boolfun;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gf2;
pub mod gf2m;
pub mod msub;
pub(crate) mod pairgraph;
pub mod psclass;
pub mod reference;
pub mod report;
pub mod vectorial;

pub use anf::AnfPoly;
pub use boolfun::{BooleanFunction, WalshSpectrum};
pub use error::{Error, Result};
pub use gf2::Subspace;
pub use vectorial::VectorialFunction;
