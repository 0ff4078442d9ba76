//! Small worked cocycles used by the docs, the CLI and the test suites.

use std::sync::Arc;

use crate::algebra::AlgebraContext;
use crate::cocycle::{BinaryTable, Cocycle};
use crate::group::Group;
use crate::semilinear::{AdditiveNaturals, SemilinearMap};

/// A semilinear map on `Z/9Z` over the additive naturals.
pub const Z9_R: [u64; 9] = [0, 1, 2, 3, 4, 1, 2, 3, 3];

/// A second map on `Z/9Z` whose cocycle keeps a single non-trivial
/// annihilator class.
pub const Z9_LIFTED_R: [u64; 9] = [0, 9, 18, 27, 36, 9, 17, 24, 27];

/// The cocycle of [`Z9_R`], row `σ` holding `f(σ, ·)`.
pub const Z9_TABLE: [&str; 9] = [
    "111111111",
    "111101100",
    "111001000",
    "110000000",
    "100000000",
    "111000001",
    "110000000",
    "100000000",
    "100001000",
];

/// A cocycle on the dihedral group of order 6 with rows and columns in the
/// order `e, a, a^2, b, ab, a^2b`.
pub const D3_TABLE: [&str; 6] = ["111111", "110100", "100000", "111000", "100000", "110000"];

pub fn parse_rows(rows: &[&str]) -> Vec<Vec<bool>> {
    rows.iter()
        .map(|r| r.bytes().map(|b| b == b'1').collect())
        .collect()
}

pub fn z9() -> Arc<Group> {
    Arc::new(Group::cyclic(9).expect("positive order"))
}

pub fn d3() -> Arc<Group> {
    Arc::new(Group::dihedral(3).expect("positive order"))
}

pub fn z9_cocycle() -> Cocycle {
    let table = BinaryTable::from_rows(z9(), &parse_rows(&Z9_TABLE)).expect("9x9");
    Cocycle::validate(table).expect("worked table is a cocycle")
}

pub fn z9_r() -> SemilinearMap<AdditiveNaturals> {
    SemilinearMap::new(z9(), AdditiveNaturals, Z9_R.to_vec()).expect("valid map")
}

pub fn z9_lifted_r() -> SemilinearMap<AdditiveNaturals> {
    SemilinearMap::new(z9(), AdditiveNaturals, Z9_LIFTED_R.to_vec()).expect("valid map")
}

pub fn z9_context() -> AlgebraContext {
    AlgebraContext::new(z9_cocycle()).expect("proper inertial group")
}

pub fn z9_lifted_context() -> AlgebraContext {
    AlgebraContext::new(z9_lifted_r().cocycle()).expect("proper inertial group")
}

pub fn d3_cocycle() -> Cocycle {
    let table = BinaryTable::from_rows(d3(), &parse_rows(&D3_TABLE)).expect("6x6");
    Cocycle::validate(table).expect("worked table is a cocycle")
}

pub fn d3_context() -> AlgebraContext {
    AlgebraContext::new(d3_cocycle()).expect("proper inertial group")
}
