//! Idempotent normalized weak 2-cocycles as 0/1 tables.
//!
//! Values are 0 or 1 and the Galois twist acts trivially on them. The
//! cocycle identity is
//! `f(σ,τ) f(στ,ρ) = f(τ,ρ) f(σ,τρ)` over plain integers.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Group, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("table is {rows}x{cols} but the group has order {order}")]
    Shape {
        rows: usize,
        cols: usize,
        order: usize,
    },
    #[error("tables live over different groups")]
    DomainMismatch,
    #[error("not normalized: f(0,{0}) or f({0},0) is 0")]
    NotNormalized(usize),
    #[error("cocycle identity fails at ({0},{1},{2})")]
    IdentityViolated(usize, usize, usize),
    #[error("inertial set is not a subgroup: {0}")]
    InertialNotSubgroup(String),
    #[error("cannot combine an empty list of tables")]
    EmptyList,
}

/// A raw 0/1 table over a group, with no cocycle guarantee.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryTable {
    group: Arc<Group>,
    bits: Vec<bool>,
}

impl BinaryTable {
    pub fn from_rows(group: Arc<Group>, rows: &[Vec<bool>]) -> Result<BinaryTable, CocycleError> {
        let n = group.order();
        let shape = CocycleError::Shape {
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            order: n,
        };
        if rows.len() != n {
            return Err(shape);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(CocycleError::Shape {
                rows: rows.len(),
                cols: bad.len(),
                order: n,
            });
        }
        Ok(BinaryTable {
            group,
            bits: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(group: Arc<Group>, mut f: impl FnMut(usize, usize) -> bool) -> BinaryTable {
        let n = group.order();
        let mut bits = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                bits.push(f(s, t));
            }
        }
        BinaryTable { group, bits }
    }

    pub fn ones(group: Arc<Group>) -> BinaryTable {
        let n = group.order();
        BinaryTable {
            group,
            bits: vec![true; n * n],
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.group.order() + t]
    }

    pub fn set(&mut self, s: usize, t: usize, value: bool) {
        let n = self.group.order();
        self.bits[s * n + t] = value;
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.bits
            .chunks(self.order())
            .map(<[bool]>::to_vec)
            .collect()
    }

    /// Number of entries equal to 1.
    pub fn support_size(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// First `(σ,τ)` in row-major order where the tables differ.
    pub fn first_difference(&self, other: &BinaryTable) -> Option<(usize, usize)> {
        let n = self.order();
        self.bits
            .iter()
            .zip(&other.bits)
            .position(|(a, b)| a != b)
            .map(|i| (i / n, i % n))
    }

    fn same_domain(&self, other: &BinaryTable) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    /// Checks normalization and the cocycle identity, reporting the first
    /// violation in lexicographic order.
    pub fn check_cocycle(&self) -> Result<(), CocycleError> {
        let g = &*self.group;
        let n = g.order();
        for s in 0..n {
            if !self.get(0, s) || !self.get(s, 0) {
                return Err(CocycleError::NotNormalized(s));
            }
        }
        for s in 0..n {
            for t in 0..n {
                let st = g.mul(s, t);
                let left_st = self.get(s, t);
                for r in 0..n {
                    let lhs = left_st && self.get(st, r);
                    let rhs = self.get(t, r) && self.get(s, g.mul(t, r));
                    if lhs != rhs {
                        return Err(CocycleError::IdentityViolated(s, t, r));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// A validated idempotent normalized weak 2-cocycle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cocycle {
    table: BinaryTable,
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.table, f)
    }
}

impl std::ops::Deref for Cocycle {
    type Target = BinaryTable;
    fn deref(&self) -> &BinaryTable {
        &self.table
    }
}

/// Outcome of comparing two cocycles by support inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    Incomparable,
}

impl Cocycle {
    pub fn validate(table: BinaryTable) -> Result<Cocycle, CocycleError> {
        table.check_cocycle()?;
        Ok(Cocycle { table })
    }

    /// Wraps a table without checking it.
    ///
    /// Only for fault injection in tests and negative controls; every
    /// other path goes through [`Cocycle::validate`].
    pub fn new_unchecked(table: BinaryTable) -> Cocycle {
        Cocycle { table }
    }

    /// Copy of this cocycle with entry `(σ,τ)` flipped, skipping validation.
    pub fn flipped_unchecked(&self, s: usize, t: usize) -> Cocycle {
        let mut table = self.table.clone();
        table.set(s, t, !table.get(s, t));
        Cocycle { table }
    }

    pub fn table(&self) -> &BinaryTable {
        &self.table
    }

    pub fn into_table(self) -> BinaryTable {
        self.table
    }

    /// `H(f) = {σ : f(σ, σ⁻¹) = 1}`, checked to be a subgroup.
    pub fn inertial_group(&self) -> Result<Subgroup, CocycleError> {
        let g = &**self.group();
        let members = (0..g.order()).filter(|&s| self.get(s, g.inv(s)));
        let set = crate::set::ElemSet::from_members(g.order(), members);
        Subgroup::new(g, set).map_err(|e| CocycleError::InertialNotSubgroup(e.to_string()))
    }

    /// The Waterhouse idempotent of `H`: 1 exactly when an argument lies in `H`.
    pub fn waterhouse(group: Arc<Group>, h: &Subgroup) -> Cocycle {
        let table = BinaryTable::from_fn(group, |s, t| h.contains(s) || h.contains(t));
        Cocycle { table }
    }

    /// Partial order by inclusion of supports.
    pub fn compare(&self, other: &Cocycle) -> Result<Comparison, CocycleError> {
        compare_tables(&self.table, &other.table)
    }

    pub fn leq(&self, other: &Cocycle) -> bool {
        matches!(
            self.compare(other),
            Ok(Comparison::Equal | Comparison::Less)
        )
    }
}

pub fn compare_tables(a: &BinaryTable, b: &BinaryTable) -> Result<Comparison, CocycleError> {
    if !a.same_domain(b) {
        return Err(CocycleError::DomainMismatch);
    }
    let mut a_sub_b = true;
    let mut b_sub_a = true;
    for (&x, &y) in a.bits.iter().zip(&b.bits) {
        a_sub_b &= !x || y;
        b_sub_a &= !y || x;
    }
    Ok(match (a_sub_b, b_sub_a) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    })
}

fn combine<'a, I>(tables: I, op: fn(bool, bool) -> bool) -> Result<BinaryTable, CocycleError>
where
    I: IntoIterator<Item = &'a BinaryTable>,
{
    let mut iter = tables.into_iter();
    let mut acc = iter.next().ok_or(CocycleError::EmptyList)?.clone();
    for t in iter {
        if !acc.same_domain(t) {
            return Err(CocycleError::DomainMismatch);
        }
        for (x, &y) in acc.bits.iter_mut().zip(&t.bits) {
            *x = op(*x, y);
        }
    }
    Ok(acc)
}

/// Pointwise maximum. The result is not validated: the set of cocycles is
/// not closed under this operation in general.
pub fn vee<'a, I>(tables: I) -> Result<BinaryTable, CocycleError>
where
    I: IntoIterator<Item = &'a BinaryTable>,
{
    combine(tables, |x, y| x || y)
}

/// Pointwise product, unvalidated.
pub fn pointwise_product<'a, I>(tables: I) -> Result<BinaryTable, CocycleError>
where
    I: IntoIterator<Item = &'a BinaryTable>,
{
    combine(tables, |x, y| x && y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    #[test]
    fn trivial_and_printed_tables_validate() {
        let z9 = Arc::new(Group::cyclic(9).unwrap());
        let ones = Cocycle::validate(BinaryTable::ones(z9.clone())).unwrap();
        assert_eq!(ones.inertial_group().unwrap().len(), 9);
        let f = worked::z9_cocycle();
        assert_eq!(f.inertial_group().unwrap().members().to_vec(), vec![0]);
        let d3 = worked::d3_cocycle();
        assert_eq!(d3.inertial_group().unwrap().members().to_vec(), vec![0]);
    }

    #[test]
    fn flipped_entry_is_rejected() {
        let f = worked::z9_cocycle();
        let broken = f.flipped_unchecked(1, 1).into_table();
        // (1,1,2): f(1,1)f(2,2) = 0 but f(1,2)f(1,3) = 1; every earlier
        // triple still balances
        assert_eq!(
            broken.check_cocycle(),
            Err(CocycleError::IdentityViolated(1, 1, 2))
        );
    }

    #[test]
    fn shape_and_normalization_errors() {
        let z3 = Arc::new(Group::cyclic(3).unwrap());
        let err = BinaryTable::from_rows(z3.clone(), &[vec![true; 3], vec![true; 3]]);
        assert!(matches!(err, Err(CocycleError::Shape { .. })));
        let mut t = BinaryTable::ones(z3);
        t.set(2, 0, false);
        assert_eq!(
            Cocycle::validate(t).unwrap_err(),
            CocycleError::NotNormalized(2)
        );
    }

    #[test]
    fn waterhouse_properties() {
        let z9 = Arc::new(Group::cyclic(9).unwrap());
        let whole = Cocycle::waterhouse(z9.clone(), &z9.whole());
        assert_eq!(whole.support_size(), 81);
        let f0 = Cocycle::waterhouse(z9.clone(), &z9.trivial_subgroup());
        for s in 1..9 {
            for t in 1..9 {
                assert!(!f0.get(s, t));
            }
        }
        Cocycle::validate(f0.table().clone()).unwrap();
        assert_eq!(f0.inertial_group().unwrap(), z9.trivial_subgroup());
        let f = worked::z9_cocycle();
        assert_eq!(&vee([f.table(), f0.table()]).unwrap(), f.table());
        assert_eq!(
            &pointwise_product([f0.table(), f.table()]).unwrap(),
            f0.table()
        );
        assert_eq!(f0.compare(&f).unwrap(), Comparison::Less);
    }

    #[test]
    fn compare_and_combine_basics() {
        let f = worked::z9_cocycle();
        assert_eq!(f.compare(&f).unwrap(), Comparison::Equal);
        assert_eq!(&vee([f.table()]).unwrap(), f.table());
        let ones = BinaryTable::ones(f.group().clone());
        assert_eq!(&pointwise_product([f.table(), &ones]).unwrap(), f.table());
        let other = Cocycle::waterhouse(
            Arc::new(Group::cyclic(3).unwrap()),
            &Group::cyclic(3).unwrap().whole(),
        );
        assert_eq!(f.compare(&other), Err(CocycleError::DomainMismatch));
        assert_eq!(vee(std::iter::empty()), Err(CocycleError::EmptyList));
    }
}
