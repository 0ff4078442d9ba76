//! Idempotent 2-cocycles over finite groups.
//!
//! Groups are Cayley tables with the identity at index `0`. A cocycle is a
//! 0/1 table satisfying the cocycle identity; everything else (the monomial
//! ideals of the weak crossed product algebra, chain cocycles, generator
//! words, decompositions and semilinear maps) is computed from that table.

pub mod algebra;
pub mod cocycle;
pub mod decomposition;
pub mod generators;
pub mod group;
pub mod io;
pub mod oracle;
pub mod semilinear;
pub mod set;
pub mod worked;

pub use algebra::{AlgebraContext, AlgebraError, DescendingChain, MonomialIdeal};
pub use cocycle::{BinaryTable, Cocycle, CocycleError, Comparison};
pub use group::{Group, GroupError, Subgroup};
pub use semilinear::{AdditiveNaturals, LexProduct, OrderedMonoid, SemilinearMap};
pub use set::ElemSet;
