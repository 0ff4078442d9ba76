//! The weak crossed product algebra `A_f` seen through its monomial ideals.
//!
//! Every two-sided ideal of `A_f` is spanned by the basis elements it
//! contains, so an ideal is represented by the set of indices `σ` with
//! `x_σ` in it. All ideals here are proper, i.e. contained in the radical
//! `J`, which is spanned by `x_σ` for `σ` outside the inertial group.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cocycle::{Cocycle, CocycleError};
use crate::group::{Group, Subgroup};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("the inertial group is the whole group, so the radical is zero")]
    NoRadical,
    #[error("element {0} lies in the inertial group")]
    NotInGstar(usize),
    #[error("set is not an ideal: {member} is a member but {missing} is not")]
    NotClosed { member: usize, missing: usize },
    #[error("chain needs at least two ideals, got {0}")]
    ChainTooShort(usize),
    #[error("chain is not descending: ideal {} is not contained in ideal {} (counting from 1)", .index + 2, .index + 1)]
    NotDescending { index: usize },
    #[error("element {0} is not in the first ideal of the chain")]
    UndefinedLevel(usize),
    #[error("ideal does not belong to this algebra")]
    ContextMismatch,
}

/// A cocycle together with the data every ideal computation needs.
///
/// Cheap to clone.
#[derive(Clone)]
pub struct AlgebraContext {
    inner: Arc<Inner>,
}

struct Inner {
    cocycle: Cocycle,
    inertial: Subgroup,
    gstar: ElemSet,
}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraContext")
            .field("order", &self.order())
            .field("inertial", &self.inner.inertial)
            .finish()
    }
}

impl AlgebraContext {
    pub fn new(cocycle: Cocycle) -> Result<AlgebraContext, AlgebraError> {
        let inertial = cocycle.inertial_group()?;
        let n = cocycle.order();
        let gstar = ElemSet::full(n).difference(inertial.members());
        if gstar.is_empty() {
            return Err(AlgebraError::NoRadical);
        }
        Ok(AlgebraContext {
            inner: Arc::new(Inner {
                cocycle,
                inertial,
                gstar,
            }),
        })
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.inner.cocycle
    }

    pub fn group(&self) -> &Arc<Group> {
        self.inner.cocycle.group()
    }

    pub fn order(&self) -> usize {
        self.inner.cocycle.order()
    }

    pub fn inertial(&self) -> &Subgroup {
        &self.inner.inertial
    }

    pub fn gstar(&self) -> &ElemSet {
        &self.inner.gstar
    }

    #[inline]
    pub fn f(&self, s: usize, t: usize) -> bool {
        self.inner.cocycle.get(s, t)
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.group().mul(s, t)
    }

    pub fn is_same(&self, other: &AlgebraContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.cocycle() == other.cocycle()
    }

    /// The Waterhouse idempotent with this context's inertial group.
    pub fn waterhouse(&self) -> Cocycle {
        Cocycle::waterhouse(self.group().clone(), self.inertial())
    }

    fn check_gstar(&self, s: usize) -> Result<(), AlgebraError> {
        if s >= self.order() || !self.gstar().contains(s) {
            Err(AlgebraError::NotInGstar(s))
        } else {
            Ok(())
        }
    }

    fn check_universe(&self, set: &ElemSet) -> Result<(), AlgebraError> {
        if set.universe() != self.order() {
            Err(AlgebraError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    /// Smallest closed superset of `seed`: the sum of the principal ideals
    /// of its members. Breadth-first over left and right basis products.
    pub fn ideal_closure(&self, seed: &ElemSet) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(seed)?;
        for s in seed.iter() {
            self.check_gstar(s)?;
        }
        let n = self.order();
        let mut members = seed.clone();
        let mut queue: VecDeque<usize> = seed.iter().collect();
        while let Some(s) = queue.pop_front() {
            for t in 0..n {
                if self.f(t, s) {
                    let ts = self.mul(t, s);
                    if members.insert(ts) {
                        queue.push_back(ts);
                    }
                }
                if self.f(s, t) {
                    let st = self.mul(s, t);
                    if members.insert(st) {
                        queue.push_back(st);
                    }
                }
            }
        }
        assert!(
            members.is_subset(self.gstar()),
            "a nonzero product with a radical factor left the radical"
        );
        Ok(MonomialIdeal { members })
    }

    /// `I_σ`, the ideal generated by `x_σ`.
    pub fn principal_ideal(&self, s: usize) -> Result<MonomialIdeal, AlgebraError> {
        self.check_gstar(s)?;
        self.ideal_closure(&ElemSet::from_members(self.order(), [s]))
    }

    /// Accepts `members` as an ideal if it is closed, otherwise names a
    /// member whose product escapes.
    pub fn ideal(&self, members: ElemSet) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(&members)?;
        for s in members.iter() {
            self.check_gstar(s)?;
        }
        for s in members.iter() {
            for t in 0..self.order() {
                for (flag, prod) in [
                    (self.f(t, s), self.mul(t, s)),
                    (self.f(s, t), self.mul(s, t)),
                ] {
                    if flag && !members.contains(prod) {
                        return Err(AlgebraError::NotClosed {
                            member: s,
                            missing: prod,
                        });
                    }
                }
            }
        }
        Ok(MonomialIdeal { members })
    }

    pub fn zero_ideal(&self) -> MonomialIdeal {
        MonomialIdeal {
            members: ElemSet::empty(self.order()),
        }
    }

    /// The radical `J`.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal {
            members: self.gstar().clone(),
        }
    }

    pub fn sum(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal {
            members: a.members.union(&b.members),
        }
    }

    pub fn intersection(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal {
            members: a.members.intersection(&b.members),
        }
    }

    /// `ab`, spanned by the nonzero basis products `x_σ x_τ`.
    pub fn product(&self, a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
        let mut members = ElemSet::empty(self.order());
        for s in a.iter() {
            for t in b.iter() {
                if self.f(s, t) {
                    members.insert(self.mul(s, t));
                }
            }
        }
        let ideal = MonomialIdeal { members };
        debug_assert!(
            self.ideal(ideal.members.clone()).is_ok(),
            "product of ideals must be closed"
        );
        ideal
    }

    pub fn lattice_op(
        &self,
        op: LatticeOp,
        a: &MonomialIdeal,
        b: &MonomialIdeal,
    ) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(&a.members)?;
        self.check_universe(&b.members)?;
        Ok(match op {
            LatticeOp::Sum => self.sum(a, b),
            LatticeOp::Intersection => self.intersection(a, b),
            LatticeOp::Product => self.product(a, b),
        })
    }

    /// `I^k` for `k >= 1`.
    pub fn power(&self, ideal: &MonomialIdeal, k: usize) -> MonomialIdeal {
        assert!(k >= 1);
        let mut acc = ideal.clone();
        for _ in 1..k {
            acc = self.product(&acc, ideal);
        }
        acc
    }

    /// `[J, J², …, J^t]`, stopping at the last nonzero power.
    pub fn radical_powers(&self) -> Vec<MonomialIdeal> {
        let j = self.radical();
        let mut powers = vec![j.clone()];
        loop {
            let next = self.product(powers.last().expect("nonempty"), &j);
            if next.is_zero() {
                return powers;
            }
            powers.push(next);
        }
    }

    /// `t` with `J^t ≠ 0 = J^(t+1)`; the nilpotency index of `J` is `t + 1`.
    pub fn depth(&self) -> usize {
        self.radical_powers().len()
    }

    /// Elements of the radical with no nonzero factorization inside it.
    pub fn n1_direct(&self) -> ElemSet {
        let mut n1 = self.gstar().clone();
        for s in self.gstar().iter() {
            for t in self.gstar().iter() {
                if self.f(s, t) {
                    n1.remove(self.mul(s, t));
                }
            }
        }
        n1
    }

    /// `N_k = J^k \ J^(k+1)` for `k = 1..=t`.
    pub fn nk_partition(&self) -> Vec<ElemSet> {
        let powers = self.radical_powers();
        let mut layers = Vec::with_capacity(powers.len());
        for (k, p) in powers.iter().enumerate() {
            match powers.get(k + 1) {
                Some(next) => layers.push(p.members.difference(&next.members)),
                None => layers.push(p.members.clone()),
            }
        }
        assert_eq!(
            layers[0],
            self.n1_direct(),
            "two characterizations of N_1 disagree"
        );
        layers
    }

    /// Elements whose basis vector kills the radical on both sides.
    pub fn annihilators(&self) -> ElemSet {
        let gstar = self.gstar();
        let members = gstar
            .iter()
            .filter(|&s| gstar.iter().all(|t| !self.f(s, t) && !self.f(t, s)));
        ElemSet::from_members(self.order(), members)
    }

    /// Annihilators split into trivial (in `N_1`) and non-trivial ones.
    pub fn classify_annihilators(&self) -> AnnihilatorSplit {
        let ann = self.annihilators();
        for s in ann.iter() {
            let class = self.group().double_coset(self.inertial(), s);
            assert!(
                class.is_subset(&ann),
                "annihilators must be closed under HσH"
            );
        }
        let n1 = self.n1_direct();
        AnnihilatorSplit {
            trivial: ann.intersection(&n1),
            nontrivial: ann.difference(&n1),
        }
    }

    /// Least member of each `HσH` class meeting `set`, ascending.
    pub fn class_representatives(&self, set: &ElemSet) -> Vec<usize> {
        let mut seen = ElemSet::empty(self.order());
        let mut reps = Vec::new();
        for s in set.iter() {
            if seen.contains(s) {
                continue;
            }
            let class = self.group().double_coset(self.inertial(), s);
            reps.push(class.first().expect("class contains s"));
            seen.union_with(&class);
        }
        reps.sort_unstable();
        reps
    }

    pub fn chain(&self, ideals: Vec<MonomialIdeal>) -> Result<DescendingChain, AlgebraError> {
        DescendingChain::new(self, ideals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorSplit {
    pub trivial: ElemSet,
    pub nontrivial: ElemSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Sum,
    Intersection,
    Product,
}

/// A two-sided ideal contained in the radical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    members: ElemSet,
}

impl MonomialIdeal {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members)
    }
}

/// `I_1 ⊇ I_2 ⊇ … ⊇ I_k` with `k >= 2`.
#[derive(Clone, PartialEq, Eq)]
pub struct DescendingChain {
    ideals: Vec<MonomialIdeal>,
}

impl fmt::Debug for DescendingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.ideals).finish()
    }
}

impl DescendingChain {
    pub fn new(
        ctx: &AlgebraContext,
        ideals: Vec<MonomialIdeal>,
    ) -> Result<DescendingChain, AlgebraError> {
        if ideals.len() < 2 {
            return Err(AlgebraError::ChainTooShort(ideals.len()));
        }
        for ideal in &ideals {
            if ideal.members.universe() != ctx.order() || !ideal.members.is_subset(ctx.gstar()) {
                return Err(AlgebraError::ContextMismatch);
            }
        }
        for (index, pair) in ideals.windows(2).enumerate() {
            if !pair[1].is_subset(&pair[0]) {
                return Err(AlgebraError::NotDescending { index });
            }
        }
        Ok(DescendingChain { ideals })
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &MonomialIdeal {
        &self.ideals[0]
    }

    pub fn last(&self) -> &MonomialIdeal {
        self.ideals.last().expect("chains have at least two ideals")
    }

    /// `s(σ)`: the largest 1-based position `a` with `σ ∈ I_a`.
    pub fn level(&self, s: usize) -> Result<usize, AlgebraError> {
        self.ideals
            .iter()
            .rposition(|i| i.contains(s))
            .map(|p| p + 1)
            .filter(|_| self.ideals[0].contains(s))
            .ok_or(AlgebraError::UndefinedLevel(s))
    }

    /// The 1-based layer `I_a \ I_(a+1)` holding `σ`, for `a < k`; `None`
    /// when `σ` is outside `I_1` or inside `I_k`.
    pub fn layer(&self, s: usize) -> Option<usize> {
        let level = self.level(s).ok()?;
        (level < self.ideals.len()).then_some(level)
    }
}
