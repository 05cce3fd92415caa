//! Exact computation of indicators of finite-dimensional Hopf algebras.
//!
//! A finite-dimensional Hopf algebra `H` is described here by its structure
//! constants over a fixed basis: the multiplication tensor, the
//! comultiplication tensor, unit, counit and antipode. All scalars live in a
//! cyclotomic field `Q(zeta_N)` and every computation is exact; there is no
//! floating point anywhere in this crate.
//!
//! The central quantity is the n-th indicator
//!
//! ```text
//! nu_n(H) = Trace(S . P^(n-1)),
//! ```
//!
//! where `S` is the antipode and `P^(m)` is the m-th Sweedler power map (the
//! m-th convolution power of the identity). The crate evaluates `nu_n` for
//! every integer `n` by independent routes — the trace definition, the
//! integral pairing `<lambda, Lambda^[n]>`, and closed formulas for the Taft
//! algebras and the graded small quantum group of sl2 — and analyses the
//! indicator sequence: minimal polynomials, root-of-unity structure, the
//! binomial/periodic decomposition, and the exponent and quasi-exponent.
//!
//! Module map:
//!
//! * [`cyclotomic`] — exact arithmetic in `Q(zeta_N)`: conjugation, norms,
//!   conductor embeddings, multiplicative orders.
//! * [`linalg`] — dense exact linear algebra (kernels, solves, inverses).
//! * [`qcomb`] — Gaussian binomials, the partition generating function
//!   `{L; a, m}_q`, and the closed indicator formulas.
//! * [`hopf`] — Hopf algebras as structure constants: axiom verification,
//!   the built-in families, duals/opposites, tensor products and the
//!   Drinfeld double.
//! * [`indicators`] — Sweedler power maps for all integers, the trace and
//!   integral evaluators, special values, exponent and quasi-exponent.
//! * [`sequences`] — linearly recursive sequences over `Q(zeta)`: minimal
//!   polynomials, recurrence extension, periodic-binomial decomposition.
//! * [`config`] — the JSON algebra-configuration schema shared with the CLI.

// Index-based loops read better than iterator chains in the matrix and
// structure-tensor code.
#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod cyclotomic;
pub mod diagnostics;
pub mod hopf;
pub mod indicators;
pub mod linalg;
pub mod qcomb;
pub mod sequences;

pub use cyclotomic::{CycNumber, Rational};
pub use hopf::HopfAlgebra;
pub use indicators::{IndicatorValue, Method};
pub use sequences::CycPolynomial;
