//! Generator words over `N_1(f)` and the graphs built from them.
//!
//! A word `(σ1, …, σk)` with letters in `N_1` generates `σ` when
//! `x_σ1 ⋯ x_σk = x_σ`, i.e. every running product stays nonzero and the
//! full product is `σ`. "Ordered part" means contiguous infix throughout.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, MonomialIdeal};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("letter {0} is not in N_1")]
    InvalidWord(usize),
    #[error("the word has a zero running product at position {0}")]
    ZeroProduct(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A word over `N_1`. The empty word only appears as the bottom of the
/// generator graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Renders as `(s1,s2,…)` using the given element labels.
    pub fn render(&self, labels: &[String]) -> String {
        let inner: Vec<&str> = self.0.iter().map(|&s| labels[s].as_str()).collect();
        format!("({})", inner.join(","))
    }

    /// Evaluates the word in `A_f`: `Ok(σ)` when the product is `x_σ`.
    pub fn evaluate(&self, ctx: &AlgebraContext) -> Result<usize, GeneratorError> {
        let n1 = ctx.n1_direct();
        let mut letters = self.0.iter();
        let first = *letters.next().ok_or(GeneratorError::ZeroProduct(0))?;
        if !n1.contains(first) {
            return Err(GeneratorError::InvalidWord(first));
        }
        let mut acc = first;
        for (i, &l) in letters.enumerate() {
            if !n1.contains(l) {
                return Err(GeneratorError::InvalidWord(l));
            }
            if !ctx.f(acc, l) {
                return Err(GeneratorError::ZeroProduct(i + 1));
            }
            acc = ctx.mul(acc, l);
        }
        Ok(acc)
    }
}

/// Words are ordered by length, then lexicographically.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// True iff `part` occurs as a contiguous block of `whole`.
pub fn is_ordered_part(part: &Word, whole: &Word) -> bool {
    part.is_empty() || whole.0.windows(part.len()).any(|w| w == part.0.as_slice())
}

/// The catalog of all generator words, grouped by the element they produce.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    by_element: BTreeMap<usize, Vec<Word>>,
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(&self.by_element).finish()
    }
}

impl GeneratorSet {
    /// Words of `σ`, sorted; empty for elements outside the radical.
    pub fn words_of(&self, s: usize) -> &[Word] {
        self.by_element.get(&s).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[Word])> {
        self.by_element.iter().map(|(&s, w)| (s, w.as_slice()))
    }

    pub fn all_words(&self) -> impl Iterator<Item = &Word> {
        self.by_element.values().flatten()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.by_element.values().any(|ws| ws.contains(w))
    }

    /// `σ: {(…),(…)}` lines in ascending element order.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (s, words) in &self.by_element {
            let rendered: Vec<String> = words.iter().map(|w| w.render(labels)).collect();
            let _ = writeln!(out, "{}: {{{}}}", labels[*s], rendered.join(","));
        }
        out
    }
}

/// `N_1(f)`, via the factorization characterization.
pub fn n1_set(ctx: &AlgebraContext) -> ElemSet {
    let direct = ctx.n1_direct();
    assert_eq!(direct, ctx.nk_partition()[0], "N_1 disagrees with J \\ J^2");
    direct
}

/// Every generator word of every radical element, by depth-first search
/// over `N_1` letters, pruning at zero products.
pub fn all_generators(ctx: &AlgebraContext) -> GeneratorSet {
    let n1: Vec<usize> = ctx.n1_direct().to_vec();
    let depth = ctx.depth();
    let mut by_element: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, usize)> = n1.iter().map(|&l| (vec![l], l)).collect();
    while let Some((letters, product)) = stack.pop() {
        assert!(
            letters.len() <= depth,
            "a nonzero word is longer than the radical depth"
        );
        for &l in &n1 {
            if ctx.f(product, l) {
                let mut next = letters.clone();
                next.push(l);
                stack.push((next, ctx.mul(product, l)));
            }
        }
        by_element.entry(product).or_default().push(Word(letters));
    }
    for words in by_element.values_mut() {
        words.sort();
    }
    GeneratorSet { by_element }
}

/// Words of the non-trivial annihilators.
pub fn bstar(ctx: &AlgebraContext, gens: &GeneratorSet) -> Vec<Word> {
    let nontrivial = ctx.classify_annihilators().nontrivial;
    let mut words: Vec<Word> = nontrivial
        .iter()
        .flat_map(|s| gens.words_of(s).iter().cloned())
        .collect();
    words.sort();
    words
}

/// `I_g`, the sum of the principal ideals of the letters of `g`.
pub fn ideal_of_word(ctx: &AlgebraContext, word: &Word) -> Result<MonomialIdeal, GeneratorError> {
    let n1 = ctx.n1_direct();
    if let Some(&bad) = word.letters().iter().find(|&&l| !n1.contains(l)) {
        return Err(GeneratorError::InvalidWord(bad));
    }
    let seed = ElemSet::from_members(ctx.order(), word.letters().iter().copied());
    Ok(ctx.ideal_closure(&seed)?)
}

/// `I_σ` computed from words: `τ` is included when some word of `τ`
/// contains `h1·g_σ·h2` as an ordered part, the `H` factors absorbed into
/// the first and last letters.
pub fn principal_via_generators(
    ctx: &AlgebraContext,
    gens: &GeneratorSet,
    s: usize,
) -> Result<MonomialIdeal, GeneratorError> {
    if !ctx.gstar().contains(s) {
        return Err(AlgebraError::NotInGstar(s).into());
    }
    let h: Vec<usize> = ctx.inertial().iter().collect();
    let mut patterns = BTreeSet::new();
    for word in gens.words_of(s) {
        for &h1 in &h {
            for &h2 in &h {
                let mut letters = word.letters().to_vec();
                letters[0] = ctx.mul(h1, letters[0]);
                let last = letters.len() - 1;
                letters[last] = ctx.mul(letters[last], h2);
                patterns.insert(Word(letters));
            }
        }
    }
    let members = gens
        .iter()
        .filter(|(_, words)| {
            words
                .iter()
                .any(|w| patterns.iter().any(|p| is_ordered_part(p, w)))
        })
        .map(|(t, _)| t);
    let ideal = ctx.ideal(ElemSet::from_members(ctx.order(), members))?;
    Ok(ideal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Elements joined to their one-letter extensions on either side.
    Element,
    /// Hasse diagram of the generator words under "ordered part".
    Generator,
}

/// Undirected edges of the element graph: `{ρ, σρ}` when `f(σ,ρ) = 1` and
/// `{ρ, ρσ}` when `f(ρ,σ) = 1`, for `σ ∈ N_1`. Pairs are `(min, max)`.
pub fn element_edges(ctx: &AlgebraContext) -> BTreeSet<(usize, usize)> {
    let n1 = ctx.n1_direct();
    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    };
    for rho in 0..ctx.order() {
        for s in n1.iter() {
            if ctx.f(s, rho) {
                add(rho, ctx.mul(s, rho));
            }
            if ctx.f(rho, s) {
                add(rho, ctx.mul(rho, s));
            }
        }
    }
    edges
}

/// Covering pairs `(lower, upper)` of the generator words plus the empty word.
pub fn generator_covers(gens: &GeneratorSet) -> Vec<(Word, Word)> {
    let mut vertices: Vec<Word> = gens.all_words().cloned().collect();
    vertices.push(Word::empty());
    vertices.sort();
    let mut covers = Vec::new();
    for upper in &vertices {
        let below: Vec<&Word> = vertices
            .iter()
            .filter(|w| w.len() < upper.len() && is_ordered_part(w, upper))
            .collect();
        for &lower in &below {
            let covered = !below
                .iter()
                .any(|mid| mid.len() > lower.len() && is_ordered_part(lower, mid));
            if covered {
                covers.push((lower.clone(), upper.clone()));
            }
        }
    }
    covers.sort();
    covers
}

/// DOT text for either graph, with deterministic vertex and edge order.
pub fn graph_dot(ctx: &AlgebraContext, kind: GraphKind) -> String {
    let labels = ctx.group().labels();
    let mut out = String::new();
    match kind {
        GraphKind::Element => {
            out.push_str("graph element {\n");
            for label in &labels[..ctx.order()] {
                let _ = writeln!(out, "  \"{label}\";");
            }
            for (a, b) in element_edges(ctx) {
                let _ = writeln!(out, "  \"{}\" -- \"{}\";", labels[a], labels[b]);
            }
        }
        GraphKind::Generator => {
            let gens = all_generators(ctx);
            out.push_str("graph generators {\n");
            let mut vertices: Vec<Word> = gens.all_words().cloned().collect();
            vertices.push(Word::empty());
            vertices.sort();
            for w in &vertices {
                let _ = writeln!(out, "  \"{}\";", w.render(labels));
            }
            for (lo, hi) in generator_covers(&gens) {
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\";",
                    lo.render(labels),
                    hi.render(labels)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked;

    fn w(xs: &[usize]) -> Word {
        Word::new(xs.to_vec())
    }

    #[test]
    fn n1_examples() {
        assert_eq!(n1_set(&worked::z9_context()).to_vec(), vec![1, 5, 8]);
        // a = 1, b = 3
        assert_eq!(n1_set(&worked::d3_context()).to_vec(), vec![1, 3]);
    }

    #[test]
    fn generator_words_of_annihilators() {
        let ctx = worked::z9_context();
        let gens = all_generators(&ctx);
        assert_eq!(
            gens.words_of(4),
            &[w(&[5, 8]), w(&[8, 5]), w(&[1, 1, 1, 1])]
        );

        let d3 = worked::d3_context();
        let gens = all_generators(&d3);
        // ab = 4: (a,b), (b,a,a)
        assert_eq!(gens.words_of(4), &[w(&[1, 3]), w(&[3, 1, 1])]);

        let lifted = worked::z9_lifted_context();
        let gens = all_generators(&lifted);
        assert_eq!(
            gens.words_of(4),
            &[w(&[5, 8]), w(&[8, 5]), w(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn ordered_parts_are_contiguous() {
        assert!(is_ordered_part(&w(&[1]), &w(&[3, 1, 1])));
        assert!(!is_ordered_part(&w(&[1, 3]), &w(&[3, 1, 1])));
        assert!(is_ordered_part(&w(&[3, 1, 1]), &w(&[3, 1, 1])));
        assert!(is_ordered_part(&Word::empty(), &w(&[3])));
    }

    #[test]
    fn bstar_examples() {
        let ctx = worked::z9_context();
        let gens = all_generators(&ctx);
        let b = bstar(&ctx, &gens);
        let expect = vec![
            w(&[5, 8]),
            w(&[8, 5]),
            w(&[1, 1, 5]),
            w(&[1, 5, 1]),
            w(&[5, 1, 1]),
            w(&[1, 1, 1, 1]),
        ];
        assert_eq!(b, expect);

        let d3 = worked::d3_context();
        assert_eq!(
            bstar(&d3, &all_generators(&d3)),
            vec![w(&[1, 3]), w(&[3, 1, 1])]
        );
    }

    #[test]
    fn ideals_of_words() {
        let ctx = worked::z9_lifted_context();
        assert_eq!(
            ideal_of_word(&ctx, &w(&[5, 8])).unwrap().members().to_vec(),
            vec![4, 5, 8]
        );
        assert_eq!(
            ideal_of_word(&ctx, &w(&[1, 1, 1, 1]))
                .unwrap()
                .members()
                .to_vec(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            ideal_of_word(&ctx, &w(&[2])),
            Err(GeneratorError::InvalidWord(2))
        );

        let d3 = worked::d3_context();
        let ia = d3.principal_ideal(1).unwrap();
        let ib = d3.principal_ideal(3).unwrap();
        let sum = d3.sum(&ia, &ib);
        assert_eq!(ideal_of_word(&d3, &w(&[1, 3])).unwrap(), sum);
        assert_eq!(ideal_of_word(&d3, &w(&[3, 1, 1])).unwrap(), sum);
    }

    #[test]
    fn principal_ideal_from_words_matches_closure() {
        let ctx = worked::z9_context();
        let gens = all_generators(&ctx);
        assert_eq!(
            principal_via_generators(&ctx, &gens, 5)
                .unwrap()
                .members()
                .to_vec(),
            vec![4, 5, 6, 7]
        );
        for s in ctx.gstar().iter() {
            assert_eq!(
                principal_via_generators(&ctx, &gens, s).unwrap(),
                ctx.principal_ideal(s).unwrap()
            );
        }
        assert_eq!(
            principal_via_generators(&ctx, &gens, 4)
                .unwrap()
                .members()
                .to_vec(),
            vec![4]
        );
    }

    #[test]
    fn word_evaluation() {
        let ctx = worked::z9_context();
        assert_eq!(w(&[1, 1, 5]).evaluate(&ctx).unwrap(), 7);
        assert_eq!(
            w(&[8, 8]).evaluate(&ctx),
            Err(GeneratorError::ZeroProduct(1))
        );
        assert_eq!(w(&[2]).evaluate(&ctx), Err(GeneratorError::InvalidWord(2)));
    }

    #[test]
    fn element_graph_of_z9_example() {
        let edges = element_edges(&worked::z9_context());
        for e in [(0, 1), (0, 5), (0, 8), (4, 8), (4, 5), (2, 7)] {
            assert!(edges.contains(&e), "missing {e:?}");
        }
        let z9 = worked::z9();
        let f0 = AlgebraContext::new(crate::cocycle::Cocycle::waterhouse(
            z9.clone(),
            &z9.trivial_subgroup(),
        ))
        .unwrap();
        let star: BTreeSet<(usize, usize)> = (1..9).map(|s| (0, s)).collect();
        assert_eq!(element_edges(&f0), star);
    }

    #[test]
    fn d3_element_graph_is_union_of_left_and_right() {
        // right multiplication edges: e-a, e-b, a-a^2, a-ab, b-a^2b, a^2b-ab
        // left multiplication edges add: b-ab, a-a^2b, a^2-ab
        let expect: BTreeSet<(usize, usize)> = [
            (0, 1),
            (0, 3),
            (1, 2),
            (1, 4),
            (3, 5),
            (4, 5),
            (3, 4),
            (1, 5),
            (2, 4),
        ]
        .into_iter()
        .collect();
        assert_eq!(element_edges(&worked::d3_context()), expect);
    }

    #[test]
    fn d3_generator_graph_covers() {
        let gens = all_generators(&worked::d3_context());
        let labels = worked::d3().labels().to_vec();
        let covers: Vec<(String, String)> = generator_covers(&gens)
            .iter()
            .map(|(a, b)| (a.render(&labels), b.render(&labels)))
            .collect();
        let mut expect: Vec<(String, String)> = [
            ("()", "(a)"),
            ("()", "(b)"),
            ("(a)", "(a,a)"),
            ("(a)", "(a,b)"),
            ("(a)", "(b,a)"),
            ("(b)", "(a,b)"),
            ("(b)", "(b,a)"),
            ("(a,a)", "(b,a,a)"),
            ("(b,a)", "(b,a,a)"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        let mut got = covers.clone();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
    }
}
