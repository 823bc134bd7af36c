//! Section–section interaction potentials (SSIP) for slender deformable fibers.
//!
//! This crate models molecular-scale interactions — van der Waals attraction,
//! Lennard-Jones adhesion/steric repulsion, and Coulomb forces — between thin
//! elastic fibers whose centerlines are discretized with cubic Hermite
//! elements. Instead of integrating a point-pair potential over the full 6D
//! product of two fiber volumes, the two transverse dimensions of each fiber
//! are reduced analytically to a *section–section* law `pi(g)` (energy per
//! unit length of each fiber), leaving a cheap 2D numerical quadrature along
//! the two centerlines:
//!
//! ```text
//! Pi = ∫∫ pi(g(s1, s2)) ds2 ds1,    g = |r1 - r2| - R1 - R2
//! ```
//!
//! The crate provides, bottom-up:
//!
//! - [`special`]: log-gamma (Lanczos) used by the closed-form coefficients.
//! - [`quadrature`]: Gauss–Legendre rules, segmented and geometrically graded
//!   partitions for the verification oracles.
//! - [`geometry`]: cubic Hermite centerline elements, kinematics, gap states.
//! - [`potentials`]: point-pair laws, closed-form section–section laws
//!   (short-range power laws, long-range monopole laws, Lennard-Jones
//!   composites and their C1 regularization), disk/cylinder characteristics,
//!   and analytic reference curves.
//! - [`oracle`]: brute-force reference integrators (4D disk–disk quadrature,
//!   Langbein's exact 2D reduction for parallel disks, ring–ring quadrature,
//!   rigid cylinder sweeps) used to verify the section laws.
//! - [`pair`]: the element-pair quadrature producing interaction potential,
//!   residual (generalized forces), and consistent tangent stiffness, plus a
//!   finite-difference verifier.
//! - [`elastic`]: a geometrically nonlinear Euler–Bernoulli (extension +
//!   bending) element on the same Hermite centerline.
//! - [`broadphase`]: a uniform bucket grid over element bounding boxes.
//! - [`model`] / [`assembly`] / [`solver`]: fiber meshes, global residual and
//!   stiffness assembly, Newton iteration with adaptive load stepping.
//! - [`scenario`]: JSON scenario configs and end-to-end quasi-static runs with
//!   CSV / JSON / polyline outputs.
//! - [`drivers`]: the verification drivers behind the `ssip` command-line
//!   verbs (`verify-disks`, `verify-cylinders`, `lj-table`, `run`, `fd-check`).
//! - [`bench`]: cost-scaling measurements comparing the section laws against
//!   brute-force transverse quadrature.
//!
//! # Conventions
//!
//! - Gaps `g` are *surface* gaps (centroid distance minus both radii);
//!   distances `d` are centroid distances. Short-range laws take `g`,
//!   long-range laws take `d`.
//! - Point forces are `f = -dPhi/dr`; negative values mean attraction.
//! - All quantities are in one consistent (user-chosen) unit system; config
//!   keys carry dimension suffixes (`_len`, `_force`, ...) to make the
//!   expected dimension explicit.
//!
//! # Quick start
//!
//! ```
//! use ssip::potentials::{CrossSectionPair, SsipLaw, ssip_eval};
//!
//! // Two fibers of radius 0.02 with unit volume charge-like density product,
//! // interacting via a van der Waals point law Phi = -C r^-6 with C = 1e-7.
//! let pair = CrossSectionPair::volume(0.02, 0.02, 1.0).unwrap();
//! let law = SsipLaw::short_range_small_sep(6.0, -1.0e-7, &pair).unwrap();
//! let (pi, dpi_dg) = ssip_eval(&law, 1.0e-3).unwrap();
//! assert!(pi < 0.0 && dpi_dg > 0.0); // attractive, decaying with the gap
//! ```

#![warn(missing_docs)]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is the NaN-rejecting validation idiom used throughout: it
// rejects NaN along with nonpositive values, which `x <= 0.0` would let pass.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Frozen reference constants are written at their full published precision.
#![allow(clippy::excessive_precision)]

mod error;

pub use error::{Error, Result};

pub mod special;

pub mod quadrature;

pub mod geometry;

pub mod potentials;

pub mod oracle;

pub mod pair;

pub mod elastic;

pub mod broadphase;

pub mod model;

pub mod assembly;

pub mod solver;

pub mod scenario;

pub mod output;

pub mod drivers;

pub mod bench;
