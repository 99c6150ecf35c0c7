//! Combinatorics of numerical semigroups and their cofinite subsemimodules,
//! together with the motivic invariants of the associated monomial curve
//! singularities.
//!
//! The library is organised around two objects:
//!
//! * [`NumericalSemigroup`] — a cofinite additive submonoid `Γ ⊆ ℕ`, given by
//!   generators, with exact membership, gaps, conductor and a canonical
//!   minimal generating set.
//! * [`GammaSemimodule`] — a cofinite `Γ`-subsemimodule `Δ ⊆ Γ`, encoded by
//!   its finite gap set `Γ ∖ Δ`.
//!
//! On top of these, the crate computes:
//!
//! * the rooted tree of all subsemimodules ordered by colength, level
//!   enumeration and `φ`-sequence parametrisations ([`tree`]);
//! * syzygy modules, augmented syzygies in `(a, b)` normal form and the
//!   dimension data `N(Δ)`, `B(Δ)` with its recursion ([`syzygy`],
//!   [`motivic`]);
//! * motivic Hilbert zeta functions `Z(q) = Σ [C^[ℓ]] q^ℓ` with empirical
//!   stabilisation detection and rational form ([`motivic`]);
//! * generator-count refinements `[C^{Δ,m}]`, Euler-characteristic
//!   specialisations and torus-knot HOMFLY polynomials ([`strata`]);
//! * an independent finite-field oracle that counts ideals with prescribed
//!   value set point by point and cross-checks the symbolic tables
//!   ([`oracle`]).

pub mod error;
pub mod motivic;
pub mod oracle;
pub mod semigroup;
pub mod semimodule;
pub mod strata;
pub mod syzygy;
pub mod tree;

pub use error::{Error, Result};
pub use motivic::{LPolynomial, NDeltaMode, ZetaSeries};
pub use semigroup::{MonomialForm, NumericalSemigroup, PQCoordinates};
pub use semimodule::GammaSemimodule;
pub use strata::{GenClassTable, GenSeries, HomflyPolynomial};
pub use tree::SemimoduleTree;
