//! Exact-arithmetic intersection calculus on the blowup X of P^3 at N points,
//! together with the pullback/pushforward calculus of pseudo-isomorphisms of X.
//!
//! Everything here is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. The two lattices in play are
//! H^{1,1}(X) with basis (H, E_0..E_{N-1}) and H^{2,2}(X) with basis
//! (H^2, L_0..L_{N-1}), where H is the hyperplane class, E_i the exceptional
//! divisor over the i-th point and L_i a line inside E_i.
//!
//! The crate is `no_std` (alloc only); IO, file formats and the numerical lab
//! live in the companion `cremona` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod pseudo;
pub mod rat;
pub mod ring;

pub use error::Error;
pub use rat::Rat;
