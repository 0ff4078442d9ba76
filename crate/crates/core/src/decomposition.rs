//! Chain cocycles `f_𝐈`, the quotient cocycles `f_I`, the identities they
//! satisfy and the two decompositions of `f` into simpler cocycles.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, DescendingChain, MonomialIdeal};
use crate::cocycle::{pointwise_product, vee, BinaryTable, Cocycle, CocycleError, Comparison};
use crate::generators::{all_generators, bstar, ideal_of_word, GeneratorError, GeneratorSet, Word};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("f is the Waterhouse idempotent; there is nothing to decompose")]
    NothingToDecompose,
    #[error("{0} lies in N_1")]
    RhoInN1(usize),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the constructed cocycle has inertial group {found}, expected {expected}")]
    InertialChanged { expected: ElemSet, found: ElemSet },
}

fn check_ideal(ctx: &AlgebraContext, ideal: &MonomialIdeal) -> Result<(), DecompositionError> {
    ctx.ideal(ideal.members().clone())?;
    Ok(())
}

fn finish(ctx: &AlgebraContext, table: BinaryTable) -> Result<Cocycle, DecompositionError> {
    let cocycle = Cocycle::validate(table)?;
    let h = cocycle.inertial_group()?;
    if h.members() != ctx.inertial().members() {
        return Err(DecompositionError::InertialChanged {
            expected: ctx.inertial().members().clone(),
            found: h.members().clone(),
        });
    }
    Ok(cocycle)
}

/// `f_𝐈`: keeps `f(σ,τ) = 1` on `G*` only when `σ`, `τ` and `στ` share a
/// layer `I_i \ I_(i+1)`.
pub fn cocycle_from_chain(
    ctx: &AlgebraContext,
    chain: &DescendingChain,
) -> Result<Cocycle, DecompositionError> {
    for ideal in chain.ideals() {
        check_ideal(ctx, ideal)?;
    }
    finish(ctx, chain_table(ctx, chain))
}

fn chain_table(ctx: &AlgebraContext, chain: &DescendingChain) -> BinaryTable {
    let h = ctx.inertial();
    let layers: Vec<Option<usize>> = (0..ctx.order()).map(|s| chain.layer(s)).collect();
    BinaryTable::from_fn(ctx.group().clone(), |s, t| {
        if h.contains(s) || h.contains(t) {
            return true;
        }
        let st = ctx.mul(s, t);
        ctx.f(s, t) && layers[s].is_some() && layers[s] == layers[t] && layers[t] == layers[st]
    })
}

/// `f_I = f_{J,I}`, read directly from its defining rule: on `G*` it keeps
/// `f(σ,τ) = 1` exactly when `στ ∉ I`. In particular `f_J = f_0`.
pub fn f_sub_i(ctx: &AlgebraContext, ideal: &MonomialIdeal) -> Result<Cocycle, DecompositionError> {
    check_ideal(ctx, ideal)?;
    let h = ctx.inertial();
    let table = BinaryTable::from_fn(ctx.group().clone(), |s, t| {
        h.contains(s) || h.contains(t) || (ctx.f(s, t) && !ideal.contains(ctx.mul(s, t)))
    });
    finish(ctx, table)
}

/// `∨` of the tables, with the empty join taken to be `f_0`.
pub fn join_or_waterhouse<'a>(
    ctx: &AlgebraContext,
    tables: impl IntoIterator<Item = &'a BinaryTable>,
) -> Result<BinaryTable, CocycleError> {
    let tables: Vec<&BinaryTable> = tables.into_iter().collect();
    if tables.is_empty() {
        Ok(ctx.waterhouse().into_table())
    } else {
        vee(tables)
    }
}

/// `Σ { I_σ : ρ ∉ I_σ }`, whose `f_I` has `[ρ]` as its only class of
/// non-trivial annihilators.
pub fn unique_class_ideal(
    ctx: &AlgebraContext,
    rho: usize,
) -> Result<MonomialIdeal, DecompositionError> {
    if rho >= ctx.order() || !ctx.gstar().contains(rho) {
        return Err(AlgebraError::NotInGstar(rho).into());
    }
    if ctx.n1_direct().contains(rho) {
        return Err(DecompositionError::RhoInN1(rho));
    }
    let mut members = ElemSet::empty(ctx.order());
    for s in ctx.gstar().iter() {
        let principal = ctx.principal_ideal(s)?;
        if !principal.contains(rho) {
            members.union_with(principal.members());
        }
    }
    Ok(ctx.ideal(members)?)
}

/// One `f_{I_i}` of the class decomposition.
#[derive(Debug, Clone)]
pub struct DecompositionPart {
    pub rho: usize,
    pub ideal: MonomialIdeal,
    pub cocycle: Cocycle,
    /// `f_0 < f_{I_i} < f`.
    pub strict: bool,
    /// `[ρ]` is the only class of non-trivial annihilators of `f_{I_i}`.
    pub unique_class: bool,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub parts: Vec<DecompositionPart>,
    pub recombines: bool,
}

impl DecompositionReport {
    pub fn all_strict(&self) -> bool {
        self.parts.iter().all(|p| p.strict)
    }

    pub fn is_sound(&self) -> bool {
        self.recombines && self.parts.iter().all(|p| p.strict && p.unique_class)
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            writeln!(
                f,
                "rho={} ideal={} strict={}",
                part.rho, part.ideal, part.strict
            )?;
        }
        writeln!(f, "recombines={}", self.recombines)
    }
}

#[derive(Debug, Clone)]
pub enum ClassDecomposition {
    /// `f` already has a single class of non-trivial annihilators.
    UniqueClass {
        representative: usize,
    },
    Parts(DecompositionReport),
}

impl fmt::Display for ClassDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassDecomposition::UniqueClass { representative } => {
                writeln!(f, "unique-class rho={representative}")
            }
            ClassDecomposition::Parts(report) => write!(f, "{report}"),
        }
    }
}

/// Representatives of the non-trivial annihilator classes of a context.
pub fn nontrivial_classes(ctx: &AlgebraContext) -> Vec<usize> {
    ctx.class_representatives(&ctx.classify_annihilators().nontrivial)
}

/// Splits `f` into cocycles `f_{I_i}`, one per `HσH` class meeting `J²`,
/// each with a single class of non-trivial annihilators.
pub fn decompose_by_classes(
    ctx: &AlgebraContext,
) -> Result<ClassDecomposition, DecompositionError> {
    let f0 = ctx.waterhouse();
    if *ctx.cocycle() == f0 {
        return Err(DecompositionError::NothingToDecompose);
    }
    let classes = nontrivial_classes(ctx);
    if classes.len() == 1 {
        return Ok(ClassDecomposition::UniqueClass {
            representative: classes[0],
        });
    }
    let j2 = ctx.power(&ctx.radical(), 2);
    let mut parts = Vec::new();
    for rho in ctx.class_representatives(j2.members()) {
        let ideal = unique_class_ideal(ctx, rho)?;
        let cocycle = f_sub_i(ctx, &ideal)?;
        let strict = f0.compare(&cocycle)? == Comparison::Less
            && cocycle.compare(ctx.cocycle())? == Comparison::Less;
        let part_ctx = AlgebraContext::new(cocycle.clone())?;
        let class = ctx.group().double_coset(ctx.inertial(), rho);
        let reps = nontrivial_classes(&part_ctx);
        let unique_class = reps.len() == 1 && class.contains(reps[0]);
        parts.push(DecompositionPart {
            rho,
            ideal,
            cocycle,
            strict,
            unique_class,
        });
    }
    let joined = join_or_waterhouse(ctx, parts.iter().map(|p| p.cocycle.table()))?;
    let recombines = joined == *ctx.cocycle().table();
    Ok(ClassDecomposition::Parts(DecompositionReport {
        parts,
        recombines,
    }))
}

#[derive(Debug, Clone)]
pub struct BstarPart {
    pub word: Word,
    pub ideal: MonomialIdeal,
    pub cocycle: Cocycle,
}

#[derive(Debug, Clone)]
pub struct BstarDecomposition {
    pub parts: Vec<BstarPart>,
    pub recombines: bool,
}

impl BstarDecomposition {
    /// Parts with pairwise distinct cocycles, first occurrence kept.
    pub fn distinct_parts(&self) -> Vec<&BstarPart> {
        let mut seen: Vec<&Cocycle> = Vec::new();
        let mut out = Vec::new();
        for part in &self.parts {
            if !seen.contains(&&part.cocycle) {
                seen.push(&part.cocycle);
                out.push(part);
            }
        }
        out
    }

    /// One block per part: the word, its ideal and the part's generator
    /// catalog in set-of-words notation.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for part in &self.parts {
            let _ = writeln!(
                out,
                "gamma={} ideal={}",
                part.word.render(labels),
                part.ideal
            );
            let gens = AlgebraContext::new(part.cocycle.clone()).map(|c| all_generators(&c));
            if let Ok(gens) = gens {
                let _ = writeln!(out, "  generators={}", render_catalog(&gens, labels));
            }
        }
        let _ = writeln!(out, "recombines={}", self.recombines);
        out
    }
}

/// `{{(…)},{(…),(…)},…}`, one inner set per element in index order.
pub fn render_catalog(gens: &GeneratorSet, labels: &[String]) -> String {
    let blocks: Vec<String> = gens
        .iter()
        .map(|(_, words)| {
            let inner: Vec<String> = words.iter().map(|w| w.render(labels)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    format!("{{{}}}", blocks.join(","))
}

/// `f = ∨_{γ ∈ B*} f_{J, I_γ, 0}`.
pub fn decompose_by_bstar(ctx: &AlgebraContext) -> Result<BstarDecomposition, DecompositionError> {
    let gens = all_generators(ctx);
    let mut parts = Vec::new();
    for word in bstar(ctx, &gens) {
        let ideal = ideal_of_word(ctx, &word)?;
        let chain = ctx.chain(vec![ctx.radical(), ideal.clone(), ctx.zero_ideal()])?;
        let cocycle = cocycle_from_chain(ctx, &chain)?;
        parts.push(BstarPart {
            word,
            ideal,
            cocycle,
        });
    }
    let joined = join_or_waterhouse(ctx, parts.iter().map(|p| p.cocycle.table()))?;
    let recombines = joined == *ctx.cocycle().table();
    Ok(BstarDecomposition { parts, recombines })
}

/// The named identities, each with its own arguments.
#[derive(Debug, Clone)]
pub enum Identity {
    /// `f_𝐈 = f_{I_1..I_a} ∨ f_{I_a..I_k}` for every interior `a`, and
    /// `f_𝐈 = ∨ f_{I_i, I_(i+1)}`.
    ChainBreak(DescendingChain),
    /// `f_𝐈 = f_0` iff `I_a² ⊆ I_(a+1)` for every `a`.
    WaterhouseIff(DescendingChain),
    /// `f_{I, ΣI_i} = Π f_{I, I_i}`, requiring every `I_i ⊆ I`.
    SumProduct {
        base: MonomialIdeal,
        parts: Vec<MonomialIdeal>,
    },
    /// `f_{I, ∩I_i} = ∨ f_{I, I_i}`, requiring every `I_i ⊆ I`.
    IntersectionVee {
        base: MonomialIdeal,
        parts: Vec<MonomialIdeal>,
    },
    /// `∩ I_i = 0` implies `f = ∨ f_{I_i}`.
    CapZero(Vec<MonomialIdeal>),
    /// `f_I = f` iff `I` is spanned by trivial annihilators.
    FIEqF(MonomialIdeal),
    /// `f_{I_1, I_2} = f_{I_1, 0}` when `I_2` is spanned by trivial
    /// annihilators lying in `I_1`.
    TrivialAnnihReplace {
        top: MonomialIdeal,
        bottom: MonomialIdeal,
    },
    /// `f_𝐈 ≤ f`.
    LeqF(DescendingChain),
}

impl Identity {
    pub const NAMES: [&'static str; 8] = [
        "chain_break",
        "waterhouse_iff",
        "sum_product",
        "intersection_vee",
        "cap_zero",
        "fI_eq_f",
        "trivial_annih_replace",
        "leq_f",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::ChainBreak(_) => "chain_break",
            Identity::WaterhouseIff(_) => "waterhouse_iff",
            Identity::SumProduct { .. } => "sum_product",
            Identity::IntersectionVee { .. } => "intersection_vee",
            Identity::CapZero(_) => "cap_zero",
            Identity::FIEqF(_) => "fI_eq_f",
            Identity::TrivialAnnihReplace { .. } => "trivial_annih_replace",
            Identity::LeqF(_) => "leq_f",
        }
    }

    /// Builds the identity `name` from a list of ideals: chains for the
    /// chain identities, `[I, I_1, …]` for the sum and intersection forms,
    /// `[I_1, I_2]` for the trivial-annihilator replacement.
    pub fn from_ideals(
        ctx: &AlgebraContext,
        name: &str,
        ideals: Vec<MonomialIdeal>,
    ) -> Result<Identity, DecompositionError> {
        let need = |min: usize| {
            if ideals.len() < min {
                Err(DecompositionError::Precondition(format!(
                    "{name} needs at least {min} ideals"
                )))
            } else {
                Ok(())
            }
        };
        Ok(match name {
            "chain_break" => Identity::ChainBreak(ctx.chain(ideals)?),
            "waterhouse_iff" => Identity::WaterhouseIff(ctx.chain(ideals)?),
            "leq_f" => Identity::LeqF(ctx.chain(ideals)?),
            "sum_product" | "intersection_vee" => {
                need(2)?;
                let mut it = ideals.into_iter();
                let base = it.next().expect("checked length");
                let parts = it.collect();
                if name == "sum_product" {
                    Identity::SumProduct { base, parts }
                } else {
                    Identity::IntersectionVee { base, parts }
                }
            }
            "cap_zero" => {
                need(1)?;
                Identity::CapZero(ideals)
            }
            "fI_eq_f" => {
                if ideals.len() != 1 {
                    return Err(DecompositionError::Precondition(
                        "fI_eq_f takes exactly one ideal".into(),
                    ));
                }
                Identity::FIEqF(ideals.into_iter().next().expect("checked length"))
            }
            "trivial_annih_replace" => {
                if ideals.len() != 2 {
                    return Err(DecompositionError::Precondition(
                        "trivial_annih_replace takes exactly two ideals".into(),
                    ));
                }
                let mut it = ideals.into_iter();
                let top = it.next().expect("checked length");
                let bottom = it.next().expect("checked length");
                Identity::TrivialAnnihReplace { top, bottom }
            }
            other => {
                return Err(DecompositionError::Precondition(format!(
                    "unknown identity {other}"
                )))
            }
        })
    }
}

/// Why an identity did not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// First `(σ, τ)` where the two sides differ, when the sides are tables.
    pub pair: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pair {
            Some((s, t)) => write!(f, "{} at ({s},{t})", self.detail),
            None => write!(f, "{}", self.detail),
        }
    }
}

fn compare_sides(lhs: &BinaryTable, rhs: &BinaryTable, detail: &str) -> Result<(), Counterexample> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(pair) => Err(Counterexample {
            pair: Some(pair),
            detail: detail.to_string(),
        }),
    }
}

fn chain_of(ctx: &AlgebraContext, ideals: &[MonomialIdeal]) -> Result<Cocycle, DecompositionError> {
    cocycle_from_chain(ctx, &ctx.chain(ideals.to_vec())?)
}

fn ensure_within(base: &MonomialIdeal, parts: &[MonomialIdeal]) -> Result<(), DecompositionError> {
    if parts.is_empty() {
        return Err(DecompositionError::Precondition(
            "at least one ideal I_i is required".into(),
        ));
    }
    match parts.iter().position(|p| !p.is_subset(base)) {
        Some(i) => Err(DecompositionError::Precondition(format!(
            "I_{} is not contained in I",
            i + 1
        ))),
        None => Ok(()),
    }
}

fn spanned_by_trivial_annihilators(ctx: &AlgebraContext, ideal: &MonomialIdeal) -> bool {
    ideal
        .members()
        .is_subset(&ctx.classify_annihilators().trivial)
}

/// `Ok(Ok(()))` when the identity holds, `Ok(Err(_))` with a
/// counterexample when it fails, `Err(_)` when its hypotheses are not met.
pub fn check_identity(
    ctx: &AlgebraContext,
    identity: &Identity,
) -> Result<Result<(), Counterexample>, DecompositionError> {
    let f = ctx.cocycle().table();
    match identity {
        Identity::ChainBreak(chain) => {
            let ideals = chain.ideals();
            let whole = cocycle_from_chain(ctx, chain)?;
            let k = ideals.len();
            for a in 1..k.saturating_sub(1) {
                let left = chain_of(ctx, &ideals[..=a])?;
                let right = chain_of(ctx, &ideals[a..])?;
                let joined = vee([left.table(), right.table()])?;
                let detail = format!("split at position {}", a + 1);
                if let Err(c) = compare_sides(whole.table(), &joined, &detail) {
                    return Ok(Err(c));
                }
            }
            let steps = ideals
                .windows(2)
                .map(|w| chain_of(ctx, w))
                .collect::<Result<Vec<_>, _>>()?;
            let joined = vee(steps.iter().map(Cocycle::table))?;
            Ok(compare_sides(
                whole.table(),
                &joined,
                "join of consecutive pairs",
            ))
        }
        Identity::WaterhouseIff(chain) => {
            let fi = cocycle_from_chain(ctx, chain)?;
            let f0 = ctx.waterhouse();
            let squares = chain
                .ideals()
                .windows(2)
                .all(|w| ctx.product(&w[0], &w[0]).is_subset(&w[1]));
            let is_f0 = fi == f0;
            if squares == is_f0 {
                Ok(Ok(()))
            } else {
                Ok(Err(Counterexample {
                    pair: fi.first_difference(f0.table()),
                    detail: format!("squares condition is {squares} but f_I = f_0 is {is_f0}"),
                }))
            }
        }
        Identity::SumProduct { base, parts } => {
            ensure_within(base, parts)?;
            let mut sum = ctx.zero_ideal();
            for p in parts {
                sum = ctx.sum(&sum, p);
            }
            let lhs = chain_of(ctx, &[base.clone(), sum])?;
            let factors = parts
                .iter()
                .map(|p| chain_of(ctx, &[base.clone(), p.clone()]))
                .collect::<Result<Vec<_>, _>>()?;
            let rhs = pointwise_product(factors.iter().map(Cocycle::table))?;
            Ok(compare_sides(lhs.table(), &rhs, "sum against product"))
        }
        Identity::IntersectionVee { base, parts } => {
            ensure_within(base, parts)?;
            let mut meet = base.clone();
            for p in parts {
                meet = ctx.intersection(&meet, p);
            }
            let lhs = chain_of(ctx, &[base.clone(), meet])?;
            let terms = parts
                .iter()
                .map(|p| chain_of(ctx, &[base.clone(), p.clone()]))
                .collect::<Result<Vec<_>, _>>()?;
            let rhs = vee(terms.iter().map(Cocycle::table))?;
            Ok(compare_sides(
                lhs.table(),
                &rhs,
                "intersection against join",
            ))
        }
        Identity::CapZero(parts) => {
            let mut meet = ctx.radical();
            for p in parts {
                check_ideal(ctx, p)?;
                meet = ctx.intersection(&meet, p);
            }
            if !meet.is_zero() {
                return Err(DecompositionError::Precondition(format!(
                    "the intersection {meet} is not zero"
                )));
            }
            let terms = parts
                .iter()
                .map(|p| f_sub_i(ctx, p))
                .collect::<Result<Vec<_>, _>>()?;
            let rhs = vee(terms.iter().map(Cocycle::table))?;
            Ok(compare_sides(f, &rhs, "f against the join of f_I"))
        }
        Identity::FIEqF(ideal) => {
            let fi = f_sub_i(ctx, ideal)?;
            let equal = fi == *ctx.cocycle();
            let trivial = spanned_by_trivial_annihilators(ctx, ideal);
            if equal == trivial {
                Ok(Ok(()))
            } else {
                Ok(Err(Counterexample {
                    pair: fi.first_difference(f),
                    detail: format!(
                        "f_I = f is {equal} but spanned by trivial annihilators is {trivial}"
                    ),
                }))
            }
        }
        Identity::TrivialAnnihReplace { top, bottom } => {
            check_ideal(ctx, top)?;
            check_ideal(ctx, bottom)?;
            if !bottom.is_subset(top) {
                return Err(DecompositionError::Precondition(
                    "I_2 is not contained in I_1".into(),
                ));
            }
            if !spanned_by_trivial_annihilators(ctx, bottom) {
                return Err(DecompositionError::Precondition(
                    "I_2 is not spanned by trivial annihilators".into(),
                ));
            }
            let lhs = chain_of(ctx, &[top.clone(), bottom.clone()])?;
            let rhs = chain_of(ctx, &[top.clone(), ctx.zero_ideal()])?;
            Ok(compare_sides(
                lhs.table(),
                rhs.table(),
                "replacement by the zero ideal",
            ))
        }
        Identity::LeqF(chain) => {
            let fi = cocycle_from_chain(ctx, chain)?;
            let pair = (0..ctx.order())
                .flat_map(|s| (0..ctx.order()).map(move |t| (s, t)))
                .find(|&(s, t)| fi.get(s, t) && !ctx.f(s, t));
            Ok(match pair {
                None => Ok(()),
                Some(p) => Err(Counterexample {
                    pair: Some(p),
                    detail: "f_I exceeds f".into(),
                }),
            })
        }
    }
}

/// Outcome of [`morphism_check`] for `φ: A_f -> A_{f_I}` and
/// `ψ: A_{f_I} -> A_f / I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// First pair breaking `f(σ,τ) a(στ) = a(σ) a(τ) f_I(σ,τ)`.
    pub phi_violation: Option<(usize, usize)>,
    /// First pair where `ψ(y_σ y_τ) ≠ ψ(y_σ) ψ(y_τ)`.
    pub psi_violation: Option<(usize, usize)>,
    pub phi_kernel_ok: bool,
    pub psi_kernel_ok: bool,
    /// `ψ ∘ θ` is the identity on `A_f / I`.
    pub section_ok: bool,
    pub dimension: usize,
    pub quotient_dimension: usize,
    pub ideal_dimension: usize,
}

impl MorphismReport {
    pub fn passes(&self) -> bool {
        self.phi_violation.is_none()
            && self.psi_violation.is_none()
            && self.phi_kernel_ok
            && self.psi_kernel_ok
            && self.section_ok
            && self.dimension == self.quotient_dimension + self.ideal_dimension
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair =
            |p: Option<(usize, usize)>| p.map_or("none".to_string(), |(s, t)| format!("({s},{t})"));
        writeln!(f, "phi_violation={}", pair(self.phi_violation))?;
        writeln!(f, "psi_violation={}", pair(self.psi_violation))?;
        writeln!(f, "phi_kernel={}", self.phi_kernel_ok)?;
        writeln!(f, "psi_kernel={}", self.psi_kernel_ok)?;
        writeln!(f, "section={}", self.section_ok)?;
        writeln!(
            f,
            "dimensions={} = {} + {}",
            self.dimension, self.quotient_dimension, self.ideal_dimension
        )?;
        writeln!(f, "passes={}", self.passes())
    }
}

/// Verifies the homomorphisms relating `A_f`, `A_{f_I}` and `A_f / I` on
/// basis elements.
pub fn morphism_check(
    ctx: &AlgebraContext,
    ideal: &MonomialIdeal,
) -> Result<MorphismReport, DecompositionError> {
    let fi = f_sub_i(ctx, ideal)?;
    let n = ctx.order();
    let a = |s: usize| !ideal.contains(s);
    let pairs = || (0..n).flat_map(|s| (0..n).map(move |t| (s, t)));
    let phi_violation =
        pairs().find(|&(s, t)| (ctx.f(s, t) && a(ctx.mul(s, t))) != (a(s) && a(t) && fi.get(s, t)));
    let psi_violation = pairs().find(|&(s, t)| {
        let survives = a(ctx.mul(s, t));
        (fi.get(s, t) && survives) != (ctx.f(s, t) && survives)
    });
    let phi_kernel = ElemSet::from_members(n, (0..n).filter(|&s| !a(s)));
    let psi_kernel = ElemSet::from_members(n, (0..n).filter(|&s| ideal.contains(s)));
    let section_ok = (0..n).filter(|&s| !ideal.contains(s)).all(a);
    let quotient_dimension = (0..n).filter(|&s| a(s)).count();
    Ok(MorphismReport {
        phi_violation,
        psi_violation,
        phi_kernel_ok: phi_kernel == *ideal.members(),
        psi_kernel_ok: psi_kernel == *ideal.members(),
        section_ok,
        dimension: n,
        quotient_dimension,
        ideal_dimension: ideal.len(),
    })
}

#[derive(Debug, Clone)]
pub struct QuotientTransport {
    /// The ideal `I_1` of `A_f` with `I_1 / I = ψ(P)`.
    pub lifted: MonomialIdeal,
    /// `(f_I)_P = f_{I_1}` as tables.
    pub certified: bool,
    /// `P ∪ I` is already closed in `A_f`, so `I_1 \ I` is exactly `ψ(P)`.
    pub preimage_matches: bool,
}

/// Transports an ideal `P` of `A_{f_I}` back to `A_f`.
pub fn quotient_transport(
    ctx: &AlgebraContext,
    ideal: &MonomialIdeal,
    p: &ElemSet,
) -> Result<QuotientTransport, DecompositionError> {
    let fi = f_sub_i(ctx, ideal)?;
    let quotient_ctx = AlgebraContext::new(fi)?;
    let p_ideal = quotient_ctx
        .ideal(p.clone())
        .map_err(|e| DecompositionError::InvalidIdeal(format!("{p} in the f_I context: {e}")))?;
    let seed = p.union(ideal.members());
    let lifted = ctx.ideal_closure(&seed)?;
    let preimage_matches = *lifted.members() == seed;
    let lhs = f_sub_i(&quotient_ctx, &p_ideal)?;
    let rhs = f_sub_i(ctx, &lifted)?;
    Ok(QuotientTransport {
        lifted,
        certified: lhs == rhs,
        preimage_matches,
    })
}

/// `f_{I_1..I_k} = (f_{I_k})_{P_1..P_k}` with `P_i` the preimage of
/// `I_i / I_k`, which as an index set is `I_i` itself.
pub fn chain_transport(
    ctx: &AlgebraContext,
    chain: &DescendingChain,
) -> Result<bool, DecompositionError> {
    let lhs = cocycle_from_chain(ctx, chain)?;
    let quotient_ctx = AlgebraContext::new(f_sub_i(ctx, chain.last())?)?;
    let lifted = chain
        .ideals()
        .iter()
        .map(|i| quotient_ctx.ideal(i.members().clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| DecompositionError::InvalidIdeal(format!("chain in the f_I context: {e}")))?;
    let rhs = cocycle_from_chain(&quotient_ctx, &quotient_ctx.chain(lifted)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    fn ideal(ctx: &AlgebraContext, xs: &[usize]) -> MonomialIdeal {
        ctx.ideal(ElemSet::from_members(ctx.order(), xs.iter().copied()))
            .unwrap()
    }

    fn printed_ideals(ctx: &AlgebraContext) -> Vec<MonomialIdeal> {
        vec![
            ideal(ctx, &[3, 4, 5, 6, 7, 8]),
            ideal(ctx, &[4, 5, 6, 7, 8]),
            ideal(ctx, &[6, 7]),
            ideal(ctx, &[2, 3, 4, 7, 8]),
            ideal(ctx, &[3, 4, 8]),
        ]
    }

    #[test]
    fn chain_with_square_is_waterhouse() {
        let ctx = worked::z9_context();
        let chain = ctx
            .chain(vec![ctx.radical(), ctx.power(&ctx.radical(), 2)])
            .unwrap();
        assert_eq!(cocycle_from_chain(&ctx, &chain).unwrap(), ctx.waterhouse());
    }

    #[test]
    fn chain_to_zero_is_f() {
        let ctx = worked::d3_context();
        let chain = ctx.chain(vec![ctx.radical(), ctx.zero_ideal()]).unwrap();
        assert_eq!(cocycle_from_chain(&ctx, &chain).unwrap(), *ctx.cocycle());
    }

    #[test]
    fn chain_with_i3() {
        let ctx = worked::z9_context();
        let i3 = ideal(&ctx, &[6, 7]);
        let fi =
            cocycle_from_chain(&ctx, &ctx.chain(vec![ctx.radical(), i3.clone()]).unwrap()).unwrap();
        assert!(!fi.get(1, 5));
        assert!(fi.get(5, 8));
        assert_eq!(fi, f_sub_i(&ctx, &i3).unwrap());
        let fi_ctx = AlgebraContext::new(fi).unwrap();
        assert_eq!(fi_ctx.n1_direct().to_vec(), vec![1, 5, 6, 7, 8]);
    }

    #[test]
    fn f_sub_extremes() {
        let ctx = worked::z9_context();
        assert_eq!(f_sub_i(&ctx, &ctx.zero_ideal()).unwrap(), *ctx.cocycle());
        assert_eq!(f_sub_i(&ctx, &ctx.radical()).unwrap(), ctx.waterhouse());
    }

    #[test]
    fn unique_class_ideals_of_z9() {
        let ctx = worked::z9_context();
        let expect = printed_ideals(&ctx);
        for (rho, want) in [2, 3, 4, 6, 7].into_iter().zip(expect) {
            assert_eq!(unique_class_ideal(&ctx, rho).unwrap(), want, "rho = {rho}");
        }
        assert_eq!(
            unique_class_ideal(&ctx, 1).unwrap_err(),
            DecompositionError::RhoInN1(1)
        );
        assert_eq!(
            unique_class_ideal(&ctx, 0).unwrap_err(),
            DecompositionError::Algebra(AlgebraError::NotInGstar(0))
        );
    }

    #[test]
    fn class_decomposition_of_z9() {
        let ctx = worked::z9_context();
        let ClassDecomposition::Parts(report) = decompose_by_classes(&ctx).unwrap() else {
            panic!("expected parts");
        };
        assert_eq!(report.parts.len(), 5);
        assert!(report.is_sound());
        let text = report.to_string();
        assert!(text.starts_with("rho=2 ideal={3,4,5,6,7,8} strict=true\n"));
        assert!(text.ends_with("recombines=true\n"));
        let f3 = &report.parts[2].cocycle;
        let f5 = &report.parts[4].cocycle;
        assert_eq!(f3.compare(f5).unwrap(), Comparison::Incomparable);
    }

    #[test]
    fn class_decomposition_of_d3_and_f0() {
        let ctx = worked::d3_context();
        assert!(matches!(
            decompose_by_classes(&ctx).unwrap(),
            ClassDecomposition::UniqueClass { representative: 4 }
        ));
        let f0 = AlgebraContext::new(ctx.waterhouse()).unwrap();
        assert_eq!(
            decompose_by_classes(&f0).unwrap_err(),
            DecompositionError::NothingToDecompose
        );
    }

    #[test]
    fn bstar_decomposition() {
        let ctx = worked::z9_lifted_context();
        let d = decompose_by_bstar(&ctx).unwrap();
        assert!(d.recombines);
        let ideals: Vec<Vec<usize>> = d
            .distinct_parts()
            .iter()
            .map(|p| p.ideal.members().to_vec())
            .collect();
        assert_eq!(ideals, vec![vec![4, 5, 8], vec![1, 2, 3, 4]]);

        let d3 = worked::d3_context();
        let d = decompose_by_bstar(&d3).unwrap();
        assert!(d.recombines);
        assert_eq!(d.parts.len(), 2);
        assert!(d.parts.iter().all(|p| p.cocycle == *d3.cocycle()));

        let f0 = AlgebraContext::new(d3.waterhouse()).unwrap();
        let d = decompose_by_bstar(&f0).unwrap();
        assert!(d.parts.is_empty() && d.recombines);
    }

    #[test]
    fn identities_on_z9() {
        let ctx = worked::z9_context();
        let ideals = printed_ideals(&ctx);
        let j = ctx.radical();
        let cap = Identity::CapZero(ideals.clone());
        assert_eq!(check_identity(&ctx, &cap).unwrap(), Ok(()));
        let sp = Identity::SumProduct {
            base: j.clone(),
            parts: vec![ideals[2].clone(), ideals[4].clone()],
        };
        assert_eq!(check_identity(&ctx, &sp).unwrap(), Ok(()));
        let iv = Identity::IntersectionVee {
            base: j.clone(),
            parts: vec![ideals[0].clone(), ideals[3].clone()],
        };
        assert_eq!(check_identity(&ctx, &iv).unwrap(), Ok(()));
        let chain = ctx.chain(vec![j.clone(), ctx.power(&j, 2)]).unwrap();
        assert_eq!(
            check_identity(&ctx, &Identity::WaterhouseIff(chain)).unwrap(),
            Ok(())
        );
        let long = ctx
            .chain(vec![
                j.clone(),
                ideals[0].clone(),
                ideals[1].clone(),
                ctx.zero_ideal(),
            ])
            .unwrap();
        assert_eq!(
            check_identity(&ctx, &Identity::ChainBreak(long.clone())).unwrap(),
            Ok(())
        );
        assert_eq!(check_identity(&ctx, &Identity::LeqF(long)).unwrap(), Ok(()));
        assert_eq!(
            check_identity(&ctx, &Identity::FIEqF(ideals[2].clone())).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn identity_preconditions() {
        let ctx = worked::z9_context();
        let ideals = printed_ideals(&ctx);
        let bad = Identity::SumProduct {
            base: ideals[2].clone(),
            parts: vec![ideals[4].clone()],
        };
        assert!(matches!(
            check_identity(&ctx, &bad),
            Err(DecompositionError::Precondition(_))
        ));
        let not_zero = Identity::CapZero(vec![ideals[0].clone()]);
        assert!(matches!(
            check_identity(&ctx, &not_zero),
            Err(DecompositionError::Precondition(_))
        ));
        let not_trivial = Identity::TrivialAnnihReplace {
            top: ctx.radical(),
            bottom: ideals[2].clone(),
        };
        assert!(matches!(
            check_identity(&ctx, &not_trivial),
            Err(DecompositionError::Precondition(_))
        ));
    }

    #[test]
    fn trivial_annihilators_replace_zero() {
        // f_0 on Z/4: every element of G* is a trivial annihilator
        let g = std::sync::Arc::new(crate::group::Group::cyclic(4).unwrap());
        let ctx =
            AlgebraContext::new(Cocycle::waterhouse(g.clone(), &g.trivial_subgroup())).unwrap();
        let bottom = ideal(&ctx, &[2]);
        let id = Identity::TrivialAnnihReplace {
            top: ctx.radical(),
            bottom: bottom.clone(),
        };
        assert_eq!(check_identity(&ctx, &id).unwrap(), Ok(()));
        assert_eq!(
            check_identity(&ctx, &Identity::FIEqF(bottom)).unwrap(),
            Ok(())
        );
    }

    #[test]
    fn morphisms_on_z9() {
        let ctx = worked::z9_context();
        let report = morphism_check(&ctx, &ideal(&ctx, &[6, 7])).unwrap();
        assert!(report.passes());
        assert_eq!(
            (
                report.dimension,
                report.quotient_dimension,
                report.ideal_dimension
            ),
            (9, 7, 2)
        );
        assert!(morphism_check(&ctx, &ctx.zero_ideal()).unwrap().passes());
    }

    #[test]
    fn quotient_transport_on_z9() {
        let ctx = worked::z9_context();
        let i3 = ideal(&ctx, &[6, 7]);
        let t = quotient_transport(&ctx, &i3, &ElemSet::from_members(9, [4, 5, 8])).unwrap();
        assert_eq!(t.lifted.members().to_vec(), vec![4, 5, 6, 7, 8]);
        assert!(t.certified && t.preimage_matches);
        let t = quotient_transport(&ctx, &i3, i3.members()).unwrap();
        assert_eq!(t.lifted, i3);
        assert!(t.certified);
        let t = quotient_transport(&ctx, &i3, &ElemSet::empty(9)).unwrap();
        assert_eq!(t.lifted, i3);
        assert!(matches!(
            quotient_transport(&ctx, &i3, &ElemSet::from_members(9, [5])),
            Err(DecompositionError::InvalidIdeal(_))
        ));
    }

    #[test]
    fn chain_transport_on_z9() {
        let ctx = worked::z9_context();
        let ideals = printed_ideals(&ctx);
        let chain = ctx
            .chain(vec![ctx.radical(), ideals[0].clone(), ideals[1].clone()])
            .unwrap();
        assert!(chain_transport(&ctx, &chain).unwrap());
    }
}
