//! Exact symbolic machinery for extending Poisson brackets from a singular
//! hypersurface `V(phi)` in affine n-space to the ambient space.
//!
//! The library works entirely over the rationals. It provides:
//!
//! - [`polyring`]: sparse multivariate polynomials with exact arithmetic;
//! - [`groebner`]: Gröbner bases for ideals and free-module submodules with
//!   cofactor tracking, module membership solving, and Milnor numbers;
//! - [`exterior`]: polyvector fields and differential forms, the wedge
//!   product, the Schouten bracket, the Koszul differential `d_phi`, the
//!   de Rham differential, the volume-form duality and the divergence
//!   operator;
//! - [`extension`]: the extension pipeline — bi-derivations from bracket
//!   data on the hypersurface, the Koszul decomposition
//!   `beta = d_phi(X3) + phi*X2`, the dimension-3 Poisson extension and the
//!   dimension-4 obstruction;
//! - [`cli`]: problem files, reports, the embedded singularity corpus and
//!   seeded verification suites backing the `pext` binary.

pub mod cli;
pub mod extension;
pub mod exterior;
pub mod groebner;
pub mod polyring;
