//! Symmetric Dijkgraaf-Witten type invariants of oriented 3-manifolds.
//!
//! A manifold is presented by an oriented special spine. Colourings of the
//! spine's 2-cells by a finite group `G` are enumerated, each coloured spine
//! receives a weight by contracting vertex tensors of a `G`-system along the
//! triple lines, and the invariant is the multiset of weights written as a
//! formal sum.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: finite groups, coefficient groups, formal sums, rings.
//! - [`linalg`]: exact integer / modular normal forms.
//! - [`cohomology`]: the symmetric chain complex, 3-cocycles and `H^3`.
//! - [`spine`]: the slot-based spine encoding, validation, JSON I/O, catalog.
//! - [`colouring`]: colouring enumeration and local colours at vertices.
//! - [`moves`]: forward T- and L-moves with colouring transport.
//! - [`gsystem`]: general `G`-systems, the contraction engine and weights.
//! - [`invariant`]: the invariant pipeline and its report.

pub mod algebra;
pub mod cohomology;
pub mod colouring;
pub mod error;
pub mod gsystem;
pub mod invariant;
pub mod linalg;
pub mod moves;
pub mod spine;

pub use algebra::{CoeffGroup, FiniteGroup, FormalSum, QuotientPolyRing};
pub use cohomology::{Chain, Cochain2, Cochain3};
pub use colouring::Colouring;
pub use error::{Error, Result};
pub use gsystem::{GSystem, Tensor, TripleKey};
pub use invariant::InvariantReport;
pub use spine::Spine;
