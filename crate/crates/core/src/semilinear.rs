//! Ordered monoids, semilinear maps `r: G -> Ω`, their cocycles `f_r`,
//! lexicographic chain lifts and a bounded realizability search.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, DescendingChain, MonomialIdeal};
use crate::cocycle::{BinaryTable, Cocycle, CocycleError};
use crate::decomposition::{cocycle_from_chain, DecompositionError};
use crate::group::Group;
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("value at {0} does not belong to the monoid")]
    BadElement(usize),
    #[error("r(identity) is not the neutral element")]
    IdentityNotNeutral,
    #[error("subadditivity fails at ({0}, {1})")]
    NotSubadditive(usize, usize),
    #[error("the neutral fibre of r is not a subgroup")]
    KernelNotSubgroup,
    #[error("the map's cocycle differs from the context cocycle")]
    ContextMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// A totally ordered monoid whose neutral element is the minimum and whose
/// operation is strictly compatible with the order on both sides.
pub trait OrderedMonoid: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Ord + fmt::Debug + Send + Sync;

    fn neutral(&self) -> Self::Elem;

    fn combine(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Whether `e` is a well-formed element of this particular monoid.
    fn contains(&self, e: &Self::Elem) -> bool;

    fn render(&self, e: &Self::Elem) -> String;
}

/// `(ℕ, +, ≤)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdditiveNaturals;

impl OrderedMonoid for AdditiveNaturals {
    type Elem = u64;

    fn neutral(&self) -> u64 {
        0
    }

    fn combine(&self, a: &u64, b: &u64) -> u64 {
        a.checked_add(*b).expect("monoid values overflow u64")
    }

    fn contains(&self, _: &u64) -> bool {
        true
    }

    fn render(&self, e: &u64) -> String {
        e.to_string()
    }
}

/// Direct product of monoids, combined componentwise and ordered
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexProduct<M> {
    factors: Vec<M>,
}

impl<M: OrderedMonoid> LexProduct<M> {
    pub fn new(factors: Vec<M>) -> Self {
        LexProduct { factors }
    }

    pub fn power(m: M, k: usize) -> Self {
        LexProduct {
            factors: vec![m; k],
        }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }
}

impl<M: OrderedMonoid> OrderedMonoid for LexProduct<M> {
    type Elem = Vec<M::Elem>;

    fn neutral(&self) -> Vec<M::Elem> {
        self.factors.iter().map(OrderedMonoid::neutral).collect()
    }

    fn combine(&self, a: &Vec<M::Elem>, b: &Vec<M::Elem>) -> Vec<M::Elem> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(m, (x, y))| m.combine(x, y))
            .collect()
    }

    fn contains(&self, e: &Vec<M::Elem>) -> bool {
        e.len() == self.factors.len() && self.factors.iter().zip(e).all(|(m, x)| m.contains(x))
    }

    fn render(&self, e: &Vec<M::Elem>) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(e)
            .map(|(m, x)| m.render(x))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// A validated element of `Sl(G)`.
#[derive(Clone)]
pub struct SemilinearMap<M: OrderedMonoid> {
    group: Arc<Group>,
    monoid: M,
    values: Vec<M::Elem>,
}

impl<M: OrderedMonoid> fmt::Debug for SemilinearMap<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.values.iter().map(|v| self.monoid.render(v)))
            .finish()
    }
}

impl<M: OrderedMonoid> PartialEq for SemilinearMap<M> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

impl<M: OrderedMonoid> SemilinearMap<M> {
    pub fn new(
        group: Arc<Group>,
        monoid: M,
        values: Vec<M::Elem>,
    ) -> Result<Self, SemilinearError> {
        let n = group.order();
        if values.len() != n {
            return Err(SemilinearError::Length {
                expected: n,
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().position(|v| !monoid.contains(v)) {
            return Err(SemilinearError::BadElement(bad));
        }
        let neutral = monoid.neutral();
        if values[0] != neutral {
            return Err(SemilinearError::IdentityNotNeutral);
        }
        for s in 0..n {
            for t in 0..n {
                if values[group.mul(s, t)] > monoid.combine(&values[s], &values[t]) {
                    return Err(SemilinearError::NotSubadditive(s, t));
                }
            }
        }
        let kernel = ElemSet::from_members(n, (0..n).filter(|&s| values[s] == neutral));
        if crate::group::Subgroup::new(&group, kernel).is_err() {
            return Err(SemilinearError::KernelNotSubgroup);
        }
        Ok(SemilinearMap {
            group,
            monoid,
            values,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn values(&self) -> &[M::Elem] {
        &self.values
    }

    pub fn value(&self, s: usize) -> &M::Elem {
        &self.values[s]
    }

    /// `M_r`, the elements sent to the neutral element.
    pub fn kernel(&self) -> ElemSet {
        let neutral = self.monoid.neutral();
        ElemSet::from_members(
            self.group.order(),
            (0..self.group.order()).filter(|&s| self.values[s] == neutral),
        )
    }

    /// `f_r(σ,τ) = 1` iff `r(στ) = r(σ)r(τ)`.
    pub fn cocycle_table(&self) -> BinaryTable {
        BinaryTable::from_fn(self.group.clone(), |s, t| {
            self.values[self.group.mul(s, t)]
                == self.monoid.combine(&self.values[s], &self.values[t])
        })
    }

    /// `f_r`, validated. Panics only if the monoid breaks its order axioms.
    pub fn cocycle(&self) -> Cocycle {
        Cocycle::validate(self.cocycle_table()).expect("f_r of a semilinear map is a cocycle")
    }

    /// One value per line, in the r-file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.values {
            out.push_str(&self.monoid.render(v));
            out.push('\n');
        }
        out
    }

    fn check_context(&self, ctx: &AlgebraContext) -> Result<(), SemilinearError> {
        if self.group != *ctx.group() || self.cocycle_table() != *ctx.cocycle().table() {
            return Err(SemilinearError::ContextMismatch);
        }
        Ok(())
    }

    /// `r_𝐈`: a `σ` of level `a` (zero outside `I_1`) maps to `r(σ)` repeated
    /// `k - a + 1` times followed by `a` neutral entries.
    pub fn chain_lift(
        &self,
        ctx: &AlgebraContext,
        chain: &DescendingChain,
    ) -> Result<SemilinearMap<LexProduct<M>>, SemilinearError> {
        self.check_context(ctx)?;
        let k = chain.len();
        let neutral = self.monoid.neutral();
        let values = (0..self.group.order())
            .map(|s| {
                let level = chain.level(s).unwrap_or(0);
                let mut tuple = vec![self.values[s].clone(); k - level + 1];
                tuple.resize(k + 1, neutral.clone());
                tuple
            })
            .collect();
        let lifted = SemilinearMap::new(
            self.group.clone(),
            LexProduct::power(self.monoid.clone(), k + 1),
            values,
        )?;
        assert_eq!(
            lifted.kernel(),
            self.kernel(),
            "lifting changed the neutral fibre"
        );
        Ok(lifted)
    }

    /// Pads `chain` so that it runs from `J` to `0` without changing the
    /// chain cocycle, then lifts over the padded chain.
    pub fn padded_lift(
        &self,
        ctx: &AlgebraContext,
        chain: &DescendingChain,
    ) -> Result<PaddedLift<M>, SemilinearError> {
        self.check_context(ctx)?;
        let padded = pad_chain(ctx, chain)?;
        let map = self.chain_lift(ctx, &padded)?;
        let target = cocycle_from_chain(ctx, chain)?;
        let certified = map.cocycle_table() == *target.table();
        Ok(PaddedLift {
            chain: padded,
            map,
            certified,
        })
    }
}

/// The result of [`SemilinearMap::padded_lift`]. `certified` records the
/// table equality `(f_r)_𝐈 = f_{r'}`.
#[derive(Debug, Clone)]
pub struct PaddedLift<M: OrderedMonoid> {
    pub chain: DescendingChain,
    pub map: SemilinearMap<LexProduct<M>>,
    pub certified: bool,
}

/// `{J, J²+I_1, …, J^(2^(a-1))+I_1, I_1, …, I_k, I_k², …, I_k^(2^(b-1)), 0}`
/// with `a` least such that `J^(2^a) ⊆ I_1` and `b` least such that
/// `I_k^(2^b) = 0`. Terms that do not apply are left out.
pub fn pad_chain(
    ctx: &AlgebraContext,
    chain: &DescendingChain,
) -> Result<DescendingChain, AlgebraError> {
    let j = ctx.radical();
    let first = chain.first();
    let last = chain.last();
    let mut ideals: Vec<MonomialIdeal> = Vec::new();
    if *first != j {
        ideals.push(j.clone());
        let mut square = ctx.product(&j, &j);
        while !square.is_subset(first) {
            ideals.push(ctx.sum(&square, first));
            square = ctx.product(&square, &square);
        }
    }
    ideals.extend(chain.ideals().iter().cloned());
    if !last.is_zero() {
        let mut power = ctx.product(last, last);
        while !power.is_zero() {
            ideals.push(power.clone());
            power = ctx.product(&power, &power);
        }
        ideals.push(ctx.zero_ideal());
    }
    ctx.chain(ideals)
}

/// Outcome of [`search_realization`].
#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    /// The lexicographically least `r` with values in `[0, bound]` and `f_r = f`.
    Witness(SemilinearMap<AdditiveNaturals>),
    /// No such `r` exists; `nodes` counts the partial assignments visited.
    Exhausted { bound: u64, nodes: u64 },
}

struct Search<'a> {
    ctx: &'a AlgebraContext,
    vars: Vec<usize>,
    /// Pairs whose constraint becomes decidable once variable `i` is set.
    checks: Vec<Vec<(usize, usize)>>,
    bound: u64,
}

impl Search<'_> {
    fn holds(&self, r: &[u64], s: usize, t: usize) -> bool {
        let lhs = r[self.ctx.mul(s, t)];
        let rhs = r[s] + r[t];
        if self.ctx.f(s, t) {
            lhs == rhs
        } else {
            lhs < rhs
        }
    }

    fn assign(&self, r: &mut [u64], depth: usize, value: u64, nodes: &AtomicU64) -> bool {
        nodes.fetch_add(1, Ordering::Relaxed);
        r[self.vars[depth]] = value;
        if !self.checks[depth].iter().all(|&(s, t)| self.holds(r, s, t)) {
            return false;
        }
        if depth + 1 == self.vars.len() {
            return true;
        }
        (1..=self.bound).any(|v| self.assign(r, depth + 1, v, nodes))
    }
}

/// Exhaustive search for `r` over the additive naturals with `f_r = f`,
/// values in `[1, bound]` on `G*` and `0` on `H`. The first variable's
/// range is split across rayon workers.
pub fn search_realization(ctx: &AlgebraContext, bound: u64) -> Realization {
    let n = ctx.order();
    let vars: Vec<usize> = ctx.gstar().to_vec();
    let mut position = vec![None; n];
    for (i, &v) in vars.iter().enumerate() {
        position[v] = Some(i);
    }
    let mut checks = vec![Vec::new(); vars.len()];
    for s in 0..n {
        for t in 0..n {
            let trigger = [s, t, ctx.mul(s, t)]
                .iter()
                .filter_map(|&x| position[x])
                .max();
            match trigger {
                Some(i) => checks[i].push((s, t)),
                None => assert!(ctx.f(s, t), "f vanishes inside the inertial group"),
            }
        }
    }
    let search = Search {
        ctx,
        vars,
        checks,
        bound,
    };
    let nodes = AtomicU64::new(0);
    let witness = (1..=bound).into_par_iter().find_map_first(|v| {
        let mut r = vec![0u64; n];
        search.assign(&mut r, 0, v, &nodes).then_some(r)
    });
    match witness {
        Some(values) => {
            let map = SemilinearMap::new(ctx.group().clone(), AdditiveNaturals, values)
                .expect("constraint solutions are subadditive");
            assert_eq!(
                map.cocycle_table(),
                *ctx.cocycle().table(),
                "witness does not reproduce f"
            );
            Realization::Witness(map)
        }
        None => Realization::Exhausted {
            bound,
            nodes: nodes.into_inner(),
        },
    }
}

impl From<CocycleError> for SemilinearError {
    fn from(e: CocycleError) -> Self {
        SemilinearError::Algebra(AlgebraError::Cocycle(e))
    }
}
