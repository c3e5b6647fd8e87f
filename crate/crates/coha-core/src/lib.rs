//! Exact symbolic kernel for cohomological Hall algebras of quivers.
//!
//! Everything is computed over arbitrary-precision rationals: chern-root
//! polynomials, Euler classes of the Ext complex, Ψ-series and R-matrices,
//! localised and vertex coproducts, the shuffle product, the bosonised
//! Cartan–spherical sector of tripled quivers and BPS characters.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cohomology;
pub mod coproducts;
pub mod enumerative;
pub mod error;
pub mod extdata;
pub mod polyalg;
pub mod quiver;
pub mod yangian;

pub use error::AlgError;
pub use polyalg::{Frac, Mono, Poly, Series, Spectral, Var, Q};
pub use quiver::{DimVector, Edge, EdgeRole, Quiver};
