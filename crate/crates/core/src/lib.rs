//! Teichmüller geometry of the once-punctured torus in closed form.
//!
//! The Teichmüller space `T₁,₁` is the upper half-plane; extremal length,
//! Hubbard–Masur differentials, Teichmüller rays and disks, the Thurston
//! measure and the pluriharmonic measure are all explicit there. This crate
//! builds the Poisson integral, mean-value operator and F.&M. Riesz-type
//! bounds on top of them, with the quadrature and Monte-Carlo machinery used
//! to check each identity numerically.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! | module | contents |
//! |--------|----------|
//! | [`surface`] | points, laminations, `Ext`, `d_T`, rays, disks |
//! | [`measures`] | Thurston / pluriharmonic measure, kernels, sphere and fiber measures |
//! | [`quadrature`] | adaptive Gauss–Kronrod, compensated sums, seeded Monte-Carlo |
//! | [`potential`] | test families, radial limits, Poisson integral, gradients, Riesz bounds |

#![no_std]

extern crate alloc;

pub mod error;
pub mod measures;
pub mod potential;
pub mod quadrature;
pub mod surface;

pub use error::{Error, Result};
pub use num_complex::Complex64;
