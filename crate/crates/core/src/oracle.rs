//! Brute-force ground truth on small groups: cocycle and ideal enumeration,
//! descending chains, random semilinear maps and the property suite that
//! runs every identity over a census.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, MonomialIdeal};
use crate::cocycle::{BinaryTable, Cocycle, Comparison};
use crate::decomposition::{
    chain_transport, check_identity, cocycle_from_chain, decompose_by_bstar, decompose_by_classes,
    f_sub_i, morphism_check, nontrivial_classes, quotient_transport, ClassDecomposition,
    DecompositionError, Identity,
};
use crate::generators::{all_generators, is_ordered_part, principal_via_generators, Word};
use crate::group::{Group, Subgroup};
use crate::semilinear::{pad_chain, AdditiveNaturals, SemilinearMap};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("|G*| = {0} exceeds the ideal enumeration cap of 20")]
    TooLarge(usize),
    #[error("limits must be positive")]
    ZeroLimit,
}

/// What to enumerate and how much of it.
#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub group: Arc<Group>,
    /// Keep only cocycles with exactly this inertial group.
    pub inertial: Option<Subgroup>,
    pub max_cocycles: usize,
    pub max_chains: usize,
}

impl CensusConfig {
    pub fn new(group: Arc<Group>) -> CensusConfig {
        CensusConfig {
            group,
            inertial: None,
            max_cocycles: 1_000_000,
            max_chains: 10_000,
        }
    }

    pub fn check(&self) -> Result<(), OracleError> {
        if self.max_cocycles == 0 || self.max_chains == 0 {
            Err(OracleError::ZeroLimit)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct Census {
    pub group: Arc<Group>,
    /// In increasing order of their row-major bit strings.
    pub cocycles: Vec<Cocycle>,
    /// More cocycles exist than `max_cocycles`; only the least ones are kept.
    pub truncated: bool,
}

/// Row-major bits of the non-identity cells, the part of a table that is
/// not fixed by normalization.
fn free_cells(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|s| (1..n).map(move |t| (s, t))).collect()
}

struct Enumerator<'a> {
    group: &'a Group,
    cells: Vec<(usize, usize)>,
    forced: Vec<Option<bool>>,
    /// Triples `(σ,τ,ρ)` whose four cells are all fixed once position `i` is.
    triggers: Vec<Vec<(usize, usize, usize)>>,
}

impl<'a> Enumerator<'a> {
    fn new(group: &'a Group, cells: Vec<(usize, usize)>, inertial: Option<&Subgroup>) -> Self {
        let n = group.order();
        let mut position = vec![usize::MAX; n * n];
        for (i, &(s, t)) in cells.iter().enumerate() {
            position[s * n + t] = i;
        }
        let pos = |s: usize, t: usize| {
            if s == 0 || t == 0 {
                None
            } else {
                Some(position[s * n + t])
            }
        };
        let mut triggers = vec![Vec::new(); cells.len()];
        for s in 1..n {
            for t in 1..n {
                for r in 1..n {
                    let st = group.mul(s, t);
                    let tr = group.mul(t, r);
                    let last = [pos(s, t), pos(st, r), pos(t, r), pos(s, tr)]
                        .into_iter()
                        .flatten()
                        .max();
                    if let Some(i) = last {
                        triggers[i].push((s, t, r));
                    }
                }
            }
        }
        let forced = cells
            .iter()
            .map(|&(s, t)| {
                inertial.and_then(|h| {
                    if h.contains(s) || h.contains(t) {
                        Some(true)
                    } else if t == group.inv(s) {
                        Some(false)
                    } else {
                        None
                    }
                })
            })
            .collect();
        Enumerator {
            group,
            cells,
            forced,
            triggers,
        }
    }

    fn consistent(&self, bits: &[bool], i: usize) -> bool {
        let n = self.group.order();
        let get = |s: usize, t: usize| s == 0 || t == 0 || bits[s * n + t];
        self.triggers[i].iter().all(|&(s, t, r)| {
            let lhs = get(s, t) && get(self.group.mul(s, t), r);
            let rhs = get(t, r) && get(s, self.group.mul(t, r));
            lhs == rhs
        })
    }

    fn choices(&self, i: usize) -> &'static [bool] {
        match self.forced[i] {
            Some(true) => &[true],
            Some(false) => &[false],
            None => &[false, true],
        }
    }

    /// Consistent assignments of the first `depth` cells.
    fn prefixes(&self, depth: usize) -> Vec<Vec<bool>> {
        let n = self.group.order();
        let mut out = Vec::new();
        let mut bits = vec![true; n * n];
        self.walk(&mut bits, 0, depth, &mut |b| {
            out.push(b.to_vec());
            true
        });
        out
    }

    /// Depth-first over cells `from..stop`, calling `emit` on every
    /// consistent completion; `emit` returns `false` to stop early.
    fn walk(
        &self,
        bits: &mut [bool],
        from: usize,
        stop: usize,
        emit: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        if from == stop {
            return emit(bits);
        }
        let n = self.group.order();
        let (s, t) = self.cells[from];
        for &v in self.choices(from) {
            bits[s * n + t] = v;
            if self.consistent(bits, from) && !self.walk(bits, from + 1, stop, emit) {
                return false;
            }
        }
        bits[s * n + t] = true;
        true
    }
}

fn enumerate_in_order(cfg: &CensusConfig, cells: Vec<(usize, usize)>) -> Census {
    let group = cfg.group.clone();
    let n = group.order();
    let enumerator = Enumerator::new(&group, cells, cfg.inertial.as_ref());
    let split = enumerator.cells.len().min(8);
    let prefixes = enumerator.prefixes(split);
    let cap = cfg.max_cocycles;
    let chunks: Vec<Vec<Vec<bool>>> = prefixes
        .into_par_iter()
        .map(|mut bits| {
            let mut found = Vec::new();
            enumerator.walk(&mut bits, split, enumerator.cells.len(), &mut |b| {
                found.push(b.to_vec());
                found.len() <= cap
            });
            found
        })
        .collect();
    let mut all: Vec<Vec<bool>> = chunks.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    let truncated = all.len() > cap;
    all.truncate(cap);
    let cocycles = all
        .into_iter()
        .map(|bits| {
            let table = BinaryTable::from_fn(group.clone(), |s, t| bits[s * n + t]);
            Cocycle::validate(table).expect("pruned search only completes valid tables")
        })
        .collect();
    Census {
        group,
        cocycles,
        truncated,
    }
}

/// Every idempotent cocycle on the group, by depth-first search over the
/// non-identity cells in row-major order, checking each cocycle triple as
/// soon as its cells are fixed.
pub fn enumerate_cocycles(cfg: &CensusConfig) -> Census {
    enumerate_in_order(cfg, free_cells(cfg.group.order()))
}

/// The same census, filling cells in a random order.
pub fn enumerate_cocycles_shuffled<R: Rng>(cfg: &CensusConfig, rng: &mut R) -> Census {
    let mut cells = free_cells(cfg.group.order());
    cells.shuffle(rng);
    enumerate_in_order(cfg, cells)
}

/// Validates every one of the `2^((n-1)²)` normalized tables. Only usable
/// for very small groups.
pub fn brute_force_cocycles(group: &Arc<Group>) -> Vec<Cocycle> {
    let n = group.order();
    let cells = free_cells(n);
    assert!(
        cells.len() <= 24,
        "brute force over 2^{} tables",
        cells.len()
    );
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let mut table = BinaryTable::ones(group.clone());
        for (i, &(s, t)) in cells.iter().enumerate() {
            // the most significant bit goes to the first cell, so masks run in table order
            table.set(s, t, mask >> (cells.len() - 1 - i) & 1 == 1);
        }
        if let Ok(c) = Cocycle::validate(table) {
            out.push(c);
        }
    }
    out
}

/// All ideals of `A_f` contained in `J`, ordered by size and then by members.
pub fn enumerate_ideals(ctx: &AlgebraContext) -> Result<Vec<MonomialIdeal>, OracleError> {
    let gstar: Vec<usize> = ctx.gstar().to_vec();
    let n = ctx.order();
    let mut ideals: Vec<MonomialIdeal> = if gstar.len() <= 12 {
        (0u32..(1 << gstar.len()))
            .filter_map(|mask| {
                let set = ElemSet::from_members(
                    n,
                    gstar
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &s)| s),
                );
                ctx.ideal(set).ok()
            })
            .collect()
    } else if gstar.len() <= 20 {
        let mut lattice: Vec<MonomialIdeal> = vec![ctx.zero_ideal()];
        for &s in &gstar {
            let p = ctx.principal_ideal(s).expect("s is in G*");
            if !lattice.contains(&p) {
                lattice.push(p);
            }
        }
        let mut frontier = 0;
        while frontier < lattice.len() {
            let a = lattice[frontier].clone();
            let mut fresh = Vec::new();
            for b in &lattice[..=frontier] {
                for c in [ctx.sum(&a, b), ctx.intersection(&a, b)] {
                    if !lattice.contains(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            lattice.extend(fresh);
            frontier += 1;
        }
        lattice
    } else {
        return Err(OracleError::TooLarge(gstar.len()));
    };
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(ideals)
}

/// Descending (not necessarily strict) chains of length `2..=max_len`
/// drawn from `ideals`, as index lists, shortest first. The flag reports
/// whether `cap` cut the list short.
pub fn descending_chains(
    ideals: &[MonomialIdeal],
    max_len: usize,
    cap: usize,
) -> (Vec<Vec<usize>>, bool) {
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); ideals.len()];
    for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate() {
            if b.is_subset(a) {
                below[i].push(j);
            }
        }
    }
    let mut out = Vec::new();
    for len in 2..=max_len {
        let mut stack: Vec<Vec<usize>> = (0..ideals.len()).rev().map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            if chain.len() == len {
                if out.len() == cap {
                    return (out, true);
                }
                out.push(chain);
                continue;
            }
            let last = *chain.last().expect("nonempty");
            for &j in below[last].iter().rev() {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    (out, false)
}

/// A random element of `Sl(G)` over the additive naturals: shortest-path
/// distances from the identity in the right Cayley graph on all elements,
/// with weight `0` on `kernel` and random weights in `1..=max_weight`
/// elsewhere. The neutral fibre is exactly `kernel`.
pub fn random_semilinear_map<R: Rng>(
    group: &Arc<Group>,
    kernel: &Subgroup,
    max_weight: u64,
    rng: &mut R,
) -> SemilinearMap<AdditiveNaturals> {
    let n = group.order();
    let weights: Vec<u64> = (0..n)
        .map(|s| {
            if kernel.contains(s) {
                0
            } else {
                rng.gen_range(1..=max_weight)
            }
        })
        .collect();
    let mut dist = vec![u64::MAX; n];
    let mut done = vec![false; n];
    dist[0] = 0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !done[v])
            .min_by_key(|&v| dist[v])
            .expect("unvisited vertex");
        done[u] = true;
        for (s, w) in weights.iter().enumerate() {
            let v = group.mul(u, s);
            dist[v] = dist[v].min(dist[u] + w);
        }
    }
    SemilinearMap::new(group.clone(), AdditiveNaturals, dist).expect("path metrics are semilinear")
}

/// All subgroups of the group, by closing every subset generated by at
/// most two elements. Enough for the groups of order at most 12 used here.
pub fn small_subgroups(group: &Group) -> Vec<Subgroup> {
    let n = group.order();
    let mut found: Vec<ElemSet> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut set = ElemSet::from_members(n, [0, a, b]);
            loop {
                let members = set.to_vec();
                let mut grew = false;
                for &x in &members {
                    for &y in &members {
                        grew |= set.insert(group.mul(x, y));
                    }
                }
                if !grew {
                    break;
                }
            }
            if !found.contains(&set) {
                found.push(set);
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|s| Subgroup::new(group, s).expect("closed finite subsets are subgroups"))
        .collect()
}

/// A descending chain of length `2..=4` through random ideals.
pub fn random_chain<R: Rng>(
    ctx: &AlgebraContext,
    ideals: &[MonomialIdeal],
    rng: &mut R,
) -> Vec<MonomialIdeal> {
    let len = rng.gen_range(2..=4);
    let mut chain = vec![ideals.choose(rng).expect("J is always present").clone()];
    while chain.len() < len {
        let last = chain.last().expect("nonempty");
        let options: Vec<&MonomialIdeal> = ideals.iter().filter(|i| i.is_subset(last)).collect();
        chain.push(
            (*options
                .choose(rng)
                .expect("the zero ideal is below everything"))
            .clone(),
        );
    }
    debug_assert!(ctx.chain(chain.clone()).is_ok());
    chain
}

/// Results of the lift checks for one `(r, 𝐈)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    /// `(f_r)_𝐈 ≤ f_{r_𝐈} ≤ f_r`.
    pub sandwich: bool,
    /// `(f_r)_𝐏 = f_{r_𝐏}` for the chain padded to run from `J` to `0`.
    pub padded_equality: bool,
    /// `(f_r)_𝐈 = f_{r'}` for the padded lift `r'`.
    pub certified: bool,
}

impl SandwichReport {
    pub fn passes(&self) -> bool {
        self.sandwich && self.padded_equality && self.certified
    }
}

pub fn sandwich_check(
    r: &SemilinearMap<AdditiveNaturals>,
    ctx: &AlgebraContext,
    chain: &[MonomialIdeal],
) -> Result<SandwichReport, crate::semilinear::SemilinearError> {
    let chain = ctx.chain(chain.to_vec())?;
    let fr = r.cocycle();
    let fi = cocycle_from_chain(ctx, &chain)?;
    let lifted = r.chain_lift(ctx, &chain)?.cocycle();
    let sandwich = fi.leq(&lifted) && lifted.leq(&fr);
    let padded = pad_chain(ctx, &chain)?;
    let padded_equality =
        cocycle_from_chain(ctx, &padded)? == r.chain_lift(ctx, &padded)?.cocycle();
    let certified = r.padded_lift(ctx, &chain)?.certified;
    Ok(SandwichReport {
        sandwich,
        padded_equality,
        certified,
    })
}

/// One failed check, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: &'static str,
    pub cocycle: String,
    pub context: String,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] f={}", self.check, self.cocycle)?;
        if !self.context.is_empty() {
            write!(f, " {}", self.context)?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub cocycles: usize,
    pub chains: usize,
    pub checks: BTreeMap<&'static str, Tally>,
    /// The first findings, in census order; `checks` holds exact counts.
    pub findings: Vec<Finding>,
    pub truncated: bool,
}

const KEPT_FINDINGS: usize = 50;

impl SuiteReport {
    pub fn failures(&self) -> u64 {
        self.checks.values().map(|t| t.failed).sum()
    }

    pub fn passes(&self) -> bool {
        self.failures() == 0
    }

    fn merge(&mut self, other: SuiteReport) {
        self.cocycles += other.cocycles;
        self.chains += other.chains;
        for (k, t) in other.checks {
            let e = self.checks.entry(k).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        let room = KEPT_FINDINGS.saturating_sub(self.findings.len());
        self.findings.extend(other.findings.into_iter().take(room));
        self.truncated |= other.truncated;
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cocycles={} chains={} truncated={}",
            self.cocycles, self.chains, self.truncated
        )?;
        for (name, t) in &self.checks {
            writeln!(f, "{name}: passed={} failed={}", t.passed, t.failed)?;
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        writeln!(f, "passes={}", self.passes())
    }
}

/// Rows of a table joined by `/`.
pub fn flat_rows(table: &BinaryTable) -> String {
    table
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

struct Recorder {
    report: SuiteReport,
    cocycle: String,
}

impl Recorder {
    fn new(f: &BinaryTable) -> Self {
        Recorder {
            report: SuiteReport {
                cocycles: 1,
                ..Default::default()
            },
            cocycle: flat_rows(f),
        }
    }

    fn record(
        &mut self,
        check: &'static str,
        context: impl FnOnce() -> String,
        outcome: Result<(), String>,
    ) {
        let tally = self.report.checks.entry(check).or_default();
        match outcome {
            Ok(()) => tally.passed += 1,
            Err(detail) => {
                tally.failed += 1;
                if self.report.findings.len() < KEPT_FINDINGS {
                    self.report.findings.push(Finding {
                        check,
                        cocycle: self.cocycle.clone(),
                        context: context(),
                        detail,
                    });
                }
            }
        }
    }

    fn expect(
        &mut self,
        check: &'static str,
        context: impl FnOnce() -> String,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.record(check, context, if ok { Ok(()) } else { Err(detail()) });
    }
}

fn identity_outcome(
    r: Result<Result<(), crate::decomposition::Counterexample>, DecompositionError>,
) -> Result<(), String> {
    match r {
        Ok(Ok(())) => Ok(()),
        Ok(Err(c)) => Err(c.to_string()),
        Err(e) => Err(format!("error: {e}")),
    }
}

fn show_chain(chain: &[MonomialIdeal]) -> String {
    let parts: Vec<String> = chain.iter().map(ToString::to_string).collect();
    format!("chain=[{}]", parts.join(" "))
}

fn check_generators(rec: &mut Recorder, ctx: &AlgebraContext) {
    let gens = all_generators(ctx);
    let depth = ctx.depth();
    for s in ctx.gstar().iter() {
        let via = principal_via_generators(ctx, &gens, s);
        let bfs = ctx.principal_ideal(s);
        rec.expect(
            "principal_via_generators",
            || format!("sigma={s}"),
            matches!((&via, &bfs), (Ok(a), Ok(b)) if a == b),
            || format!("{via:?} vs {bfs:?}"),
        );
        rec.expect(
            "generators_cover_gstar",
            || format!("sigma={s}"),
            !gens.words_of(s).is_empty(),
            || "no word".into(),
        );
    }
    let ann = ctx.annihilators();
    for s in ann.iter() {
        let class = ctx.group().double_coset(ctx.inertial(), s);
        let ok = ctx
            .principal_ideal(s)
            .map(|p| *p.members() == class)
            .unwrap_or(false);
        rec.expect(
            "annihilator_ideal_is_double_coset",
            || format!("sigma={s}"),
            ok,
            || "I_sigma is not HσH".into(),
        );
    }
    let words: Vec<&Word> = gens.all_words().collect();
    for w in &words {
        let mut ok = w.len() <= depth;
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                let part = Word::new(w.letters()[i..j].to_vec());
                ok &= part
                    .evaluate(ctx)
                    .map(|p| gens.words_of(p).contains(&part))
                    .unwrap_or(false);
            }
        }
        rec.expect(
            "generator_infix_closure",
            || format!("word={w:?}"),
            ok,
            || "an ordered part is not a generator".into(),
        );
        let maximal = !words
            .iter()
            .any(|v| v.len() > w.len() && is_ordered_part(w, v));
        let product = w.evaluate(ctx).expect("stored words evaluate");
        rec.expect(
            "maximal_words_are_annihilators",
            || format!("word={w:?}"),
            maximal == ann.contains(product),
            || format!("maximal={maximal} annihilator={}", ann.contains(product)),
        );
    }
}

fn check_ideal_family(
    rec: &mut Recorder,
    ctx: &AlgebraContext,
    ideals: &[MonomialIdeal],
    budget: usize,
) {
    let n1 = ctx.n1_direct();
    let trivial = ctx.classify_annihilators().trivial;
    for ideal in ideals {
        let at = || format!("I={ideal}");
        let fi = match f_sub_i(ctx, ideal) {
            Ok(fi) => {
                rec.record("f_I_valid", at, Ok(()));
                fi
            }
            Err(e) => {
                rec.record("f_I_valid", at, Err(e.to_string()));
                continue;
            }
        };
        let fi_ctx = AlgebraContext::new(fi).expect("f_I keeps the inertial group");
        let expected = n1.union(ideal.members());
        let got = fi_ctx.n1_direct();
        rec.expect("n1_of_f_I", at, got == expected, || {
            format!("N_1(f_I)={got} expected {expected}")
        });
        let fi_trivial = fi_ctx.classify_annihilators().trivial;
        rec.expect(
            "ideal_is_trivially_annihilating",
            at,
            ideal.members().is_subset(&fi_trivial),
            || format!("trivial annihilators of f_I are {fi_trivial}"),
        );
        rec.record(
            "f_I_eq_f",
            at,
            identity_outcome(check_identity(ctx, &Identity::FIEqF(ideal.clone()))),
        );
        let bottom = ctx
            .ideal(ideal.members().intersection(&trivial))
            .expect("trivial annihilators form an ideal");
        let replace = Identity::TrivialAnnihReplace {
            top: ideal.clone(),
            bottom,
        };
        rec.record(
            "trivial_annihilator_replace",
            at,
            identity_outcome(check_identity(ctx, &replace)),
        );
        let morph = morphism_check(ctx, ideal);
        rec.expect(
            "quotient_morphisms",
            at,
            morph.as_ref().map(|m| m.passes()).unwrap_or(false),
            || format!("{morph:?}"),
        );
        if let Ok(sub_ideals) = enumerate_ideals(&fi_ctx) {
            for p in sub_ideals.iter().take(budget) {
                let t = quotient_transport(ctx, ideal, p.members());
                let ok = t
                    .as_ref()
                    .map(|t| t.certified && t.preimage_matches)
                    .unwrap_or(false);
                rec.expect(
                    "quotient_transport",
                    || format!("I={ideal} P={p}"),
                    ok,
                    || format!("{t:?}"),
                );
            }
        }
    }
    let mut spent = 0;
    'outer: for base in ideals {
        let inside: Vec<&MonomialIdeal> = ideals.iter().filter(|i| i.is_subset(base)).collect();
        for (x, a) in inside.iter().enumerate() {
            for b in &inside[x + 1..] {
                if spent >= budget {
                    break 'outer;
                }
                spent += 1;
                let at = || format!("I={base} I_1={a} I_2={b}");
                let parts = vec![(*a).clone(), (*b).clone()];
                let sp = Identity::SumProduct {
                    base: base.clone(),
                    parts: parts.clone(),
                };
                rec.record(
                    "sum_product",
                    at,
                    identity_outcome(check_identity(ctx, &sp)),
                );
                let iv = Identity::IntersectionVee {
                    base: base.clone(),
                    parts,
                };
                rec.record(
                    "intersection_vee",
                    at,
                    identity_outcome(check_identity(ctx, &iv)),
                );
            }
        }
    }
    let mut spent = 0;
    for (x, a) in ideals.iter().enumerate() {
        for b in &ideals[x..] {
            if spent < budget && ctx.intersection(a, b).is_zero() {
                spent += 1;
                let cap = Identity::CapZero(vec![a.clone(), b.clone()]);
                rec.record(
                    "cap_zero",
                    || format!("I_1={a} I_2={b}"),
                    identity_outcome(check_identity(ctx, &cap)),
                );
            }
        }
    }
}

fn check_chains(rec: &mut Recorder, ctx: &AlgebraContext, ideals: &[MonomialIdeal], cap: usize) {
    let (chains, truncated) = descending_chains(ideals, 4, cap);
    rec.report.chains += chains.len();
    rec.report.truncated |= truncated;
    for idx in chains {
        let list: Vec<MonomialIdeal> = idx.iter().map(|&i| ideals[i].clone()).collect();
        let at = || show_chain(&list);
        let chain = ctx
            .chain(list.clone())
            .expect("chains are drawn descending");
        let fi = cocycle_from_chain(ctx, &chain);
        rec.record(
            "chain_cocycle_valid",
            at,
            fi.as_ref().map(|_| ()).map_err(ToString::to_string),
        );
        let Ok(fi) = fi else { continue };
        let mut monotone = true;
        for s in chain.first().iter() {
            for t in chain.first().iter() {
                if ctx.f(s, t) {
                    let st = chain.level(ctx.mul(s, t)).unwrap_or(0);
                    monotone &=
                        chain.level(s).unwrap_or(0) <= st && chain.level(t).unwrap_or(0) <= st;
                }
            }
        }
        rec.expect("level_monotonicity", at, monotone, || {
            "s(σ) > s(στ) for some product".into()
        });
        rec.expect("chain_cocycle_leq_f", at, fi.leq(ctx.cocycle()), || {
            "f_I is not below f".into()
        });
        rec.record(
            "chain_break",
            at,
            identity_outcome(check_identity(ctx, &Identity::ChainBreak(chain.clone()))),
        );
        rec.record(
            "waterhouse_iff",
            at,
            identity_outcome(check_identity(ctx, &Identity::WaterhouseIff(chain.clone()))),
        );
        let transport = chain_transport(ctx, &chain);
        rec.expect("chain_transport", at, transport == Ok(true), || {
            format!("{transport:?}")
        });
    }
}

fn check_decompositions(rec: &mut Recorder, ctx: &AlgebraContext) {
    let none = String::new;
    if *ctx.cocycle() != ctx.waterhouse() {
        let outcome = match decompose_by_classes(ctx) {
            Ok(ClassDecomposition::UniqueClass { .. }) => {
                if nontrivial_classes(ctx).len() == 1 {
                    Ok(())
                } else {
                    Err("unique-class verdict with several classes".to_string())
                }
            }
            Ok(ClassDecomposition::Parts(report)) => {
                if report.is_sound() {
                    Ok(())
                } else {
                    Err(report.to_string())
                }
            }
            Err(e) => Err(e.to_string()),
        };
        rec.record("class_decomposition", none, outcome);
    }
    let bstar = decompose_by_bstar(ctx);
    rec.expect(
        "bstar_decomposition",
        none,
        bstar.as_ref().map(|d| d.recombines).unwrap_or(false),
        || format!("{bstar:?}"),
    );
    let classes = nontrivial_classes(ctx);
    for &a in &classes {
        for &b in &classes {
            if a != b {
                let ok = ctx
                    .principal_ideal(b)
                    .map(|p| !p.contains(a))
                    .unwrap_or(false);
                rec.expect(
                    "annihilator_classes_separate",
                    || format!("rho={a} sigma={b}"),
                    ok,
                    || format!("{a} lies in the ideal of {b}"),
                );
            }
        }
    }
}

/// Runs every check on one cocycle. Invalid tables and tables whose
/// inertial set is not a subgroup are reported rather than rejected.
pub fn check_one(f: &Cocycle, max_chains: usize) -> SuiteReport {
    let mut rec = Recorder::new(f.table());
    if let Err(e) = f.table().check_cocycle() {
        rec.record("cocycle_valid", String::new, Err(e.to_string()));
        return rec.report;
    }
    rec.record("cocycle_valid", String::new, Ok(()));
    let ctx = match AlgebraContext::new(f.clone()) {
        Ok(ctx) => ctx,
        Err(AlgebraError::NoRadical) => return rec.report,
        Err(e) => {
            rec.record("inertial_subgroup", String::new, Err(e.to_string()));
            return rec.report;
        }
    };
    let ideals = match enumerate_ideals(&ctx) {
        Ok(i) => i,
        Err(e) => {
            rec.record("ideal_enumeration", String::new, Err(e.to_string()));
            return rec.report;
        }
    };
    check_generators(&mut rec, &ctx);
    check_ideal_family(&mut rec, &ctx, &ideals, max_chains);
    check_chains(&mut rec, &ctx, &ideals, max_chains);
    check_decompositions(&mut rec, &ctx);
    rec.report
}

/// Compares a supplied list of cocycles with a fresh enumeration: every
/// entry must be a distinct member and none may be missing.
pub fn census_integrity(cfg: &CensusConfig, supplied: &[Cocycle]) -> Vec<Finding> {
    let fresh = enumerate_cocycles(cfg);
    let mut findings = Vec::new();
    let mut seen: HashMap<Vec<Vec<bool>>, usize> = HashMap::new();
    let known: HashMap<Vec<Vec<bool>>, usize> = fresh
        .cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| (c.rows(), i))
        .collect();
    for (i, c) in supplied.iter().enumerate() {
        let rows = c.rows();
        if let Some(&j) = seen.get(&rows) {
            findings.push(Finding {
                check: "census_distinct",
                cocycle: flat_rows(c.table()),
                context: format!("record={i}"),
                detail: format!("duplicates record {j}"),
            });
        } else {
            seen.insert(rows.clone(), i);
        }
        if !known.contains_key(&rows) && !fresh.truncated {
            findings.push(Finding {
                check: "census_member",
                cocycle: flat_rows(c.table()),
                context: format!("record={i}"),
                detail: "not an idempotent cocycle of this group".into(),
            });
        }
    }
    for c in &fresh.cocycles {
        if !seen.contains_key(&c.rows()) && !fresh.truncated {
            let nearest = supplied
                .iter()
                .enumerate()
                .filter_map(|(i, s)| s.first_difference(c.table()).map(|d| (i, d)))
                .min_by_key(|(i, _)| {
                    let s = &supplied[*i];
                    (0..s.order())
                        .flat_map(|x| (0..s.order()).map(move |y| (x, y)))
                        .filter(|&(x, y)| s.get(x, y) != c.get(x, y))
                        .count()
                });
            let detail = match nearest {
                Some((i, (s, t))) => format!("missing; closest record {i} differs at ({s},{t})"),
                None => "missing".into(),
            };
            findings.push(Finding {
                check: "census_complete",
                cocycle: flat_rows(c.table()),
                context: String::new(),
                detail,
            });
        }
    }
    findings
}

/// `f = f_r`, the provenance check for cocycles built from a map.
pub fn check_realization(f: &BinaryTable, r: &SemilinearMap<AdditiveNaturals>) -> Option<Finding> {
    let fr = r.cocycle_table();
    f.first_difference(&fr).map(|(s, t)| Finding {
        check: "f_equals_f_r",
        cocycle: flat_rows(f),
        context: format!("r={:?}", r.values()),
        detail: format!("differs from f_r at ({s},{t})"),
    })
}

/// Runs [`check_one`] over the given cocycles in parallel, merged in order.
pub fn run_suite(cocycles: &[Cocycle], max_chains: usize) -> SuiteReport {
    let reports: Vec<SuiteReport> = cocycles
        .par_iter()
        .map(|f| check_one(f, max_chains))
        .collect();
    let mut total = SuiteReport::default();
    for r in reports {
        total.merge(r);
    }
    total
}

/// Enumerates the census and runs the whole suite on it.
pub fn property_suite(cfg: &CensusConfig) -> Result<SuiteReport, OracleError> {
    cfg.check()?;
    let census = enumerate_cocycles(cfg);
    let mut report = run_suite(&census.cocycles, cfg.max_chains);
    report.truncated |= census.truncated;
    Ok(report)
}

/// `n=.. rows=.. H={..} t=.. nk=.. ann_classes=..`.
pub fn census_record(f: &Cocycle) -> String {
    let n = f.order();
    let rows = flat_rows(f.table());
    match AlgebraContext::new(f.clone()) {
        Ok(ctx) => {
            let nk: Vec<String> = ctx
                .nk_partition()
                .iter()
                .map(|l| l.len().to_string())
                .collect();
            let ann = ctx.class_representatives(&ctx.annihilators()).len();
            format!(
                "n={n} rows={rows} H={} t={} nk={} ann_classes={ann}",
                ctx.inertial().members(),
                ctx.depth(),
                nk.join(",")
            )
        }
        Err(_) => format!(
            "n={n} rows={rows} H={} t=0 nk= ann_classes=0",
            ElemSet::full(n)
        ),
    }
}

/// Whether the supplied census sits in `Comparison` order-consistent form:
/// reflexive, antisymmetric and transitive `≤` over all pairs and triples.
pub fn partial_order_holds(cocycles: &[Cocycle]) -> bool {
    let cmp = |a: &Cocycle, b: &Cocycle| a.compare(b).expect("same group");
    cocycles.iter().all(|a| cmp(a, a) == Comparison::Equal)
        && cocycles
            .iter()
            .all(|a| cocycles.iter().all(|b| !(a.leq(b) && b.leq(a)) || a == b))
        && cocycles.iter().all(|a| {
            cocycles
                .iter()
                .filter(|b| a.leq(b))
                .all(|b| cocycles.iter().filter(|c| b.leq(c)).all(|c| a.leq(c)))
        })
}
