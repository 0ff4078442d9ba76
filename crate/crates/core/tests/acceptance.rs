//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cocycle_forge::cocycle::{vee, CocycleError};
use cocycle_forge::decomposition::{
    decompose_by_bstar, decompose_by_classes, f_sub_i, morphism_check, nontrivial_classes,
    render_catalog, ClassDecomposition,
};
use cocycle_forge::generators::{all_generators, graph_dot, ideal_of_word, GraphKind};
use cocycle_forge::io::emit_table;
use cocycle_forge::oracle::{
    brute_force_cocycles, check_one, check_realization, enumerate_cocycles, enumerate_ideals,
    property_suite, random_chain, random_semilinear_map, sandwich_check, small_subgroups,
    CensusConfig,
};
use cocycle_forge::semilinear::{search_realization, Realization};
use cocycle_forge::{
    AdditiveNaturals, AlgebraContext, Cocycle, Comparison, ElemSet, Group, MonomialIdeal,
    SemilinearMap,
};

const R: [u64; 9] = [0, 1, 2, 3, 4, 1, 2, 3, 3];
const R_PRIME: [u64; 9] = [0, 9, 18, 27, 36, 9, 17, 24, 27];

const PRINTED_TABLE: [&str; 9] = [
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

const PRINTED_GAMMA: &str =
    "{{(1)},{(1,1)},{(1,1,1)},{(5,8),(8,5),(1,1,1,1)},{(5)},{(1,5),(5,1)},{(1,1,5),(1,5,1),(5,1,1)},{(8)}}";

/// `(ρ_i, I_i)` for the five parts.
const PRINTED_PARTS: [(usize, &[usize]); 5] = [
    (2, &[3, 4, 5, 6, 7, 8]),
    (3, &[4, 5, 6, 7, 8]),
    (4, &[6, 7]),
    (6, &[2, 3, 4, 7, 8]),
    (7, &[3, 4, 8]),
];

/// Rows `σ = 0..8`, columns `r_1 .. r_5`.
const PRINTED_LIFTS: [[&str; 5]; 9] = [
    [
        "(0,0,0,0,0)",
        "(0,0,0,0,0)",
        "(0,0,0,0)",
        "(0,0,0,0,0)",
        "(0,0,0,0)",
    ],
    [
        "(1,1,1,1,0)",
        "(1,1,1,1,0)",
        "(1,1,1,0)",
        "(1,1,1,1,0)",
        "(1,1,1,0)",
    ],
    [
        "(2,2,2,2,0)",
        "(2,2,2,2,0)",
        "(2,2,2,0)",
        "(2,2,2,0,0)",
        "(2,2,2,0)",
    ],
    [
        "(3,3,3,0,0)",
        "(3,3,3,3,0)",
        "(3,3,3,0)",
        "(3,3,3,0,0)",
        "(3,3,0,0)",
    ],
    [
        "(4,4,0,0,0)",
        "(4,4,0,0,0)",
        "(4,4,4,0)",
        "(4,4,0,0,0)",
        "(4,4,0,0)",
    ],
    [
        "(1,1,1,0,0)",
        "(1,1,1,0,0)",
        "(1,1,1,0)",
        "(1,1,1,1,0)",
        "(1,1,1,0)",
    ],
    [
        "(2,2,2,0,0)",
        "(2,2,2,0,0)",
        "(2,2,0,0)",
        "(2,2,2,2,0)",
        "(2,2,2,0)",
    ],
    [
        "(3,3,3,0,0)",
        "(3,3,3,0,0)",
        "(3,3,0,0)",
        "(3,3,3,0,0)",
        "(3,3,3,0)",
    ],
    [
        "(3,3,3,0,0)",
        "(3,3,3,0,0)",
        "(3,3,3,0)",
        "(3,3,3,0,0)",
        "(3,3,0,0)",
    ],
];

const PRINTED_P1: [usize; 3] = [4, 5, 8];
const PRINTED_P2: [usize; 4] = [1, 2, 3, 4];
const PRINTED_GAMMA_P1: &str = "{{(1)},{(1,1)},{(1,1,1)},{(5,8),(8,5)},{(5)},{(6)},{(7)},{(8)}}";
const PRINTED_GAMMA_P2: &str = "{{(1)},{(1,1)},{(1,1,1)},{(1,1,1,1)},{(5)},{(6)},{(7)},{(8)}}";

const PRINTED_D3_TABLE: [&str; 6] = ["111111", "110100", "100000", "111000", "100000", "110000"];
const PRINTED_D3_COVERS: [(&str, &str); 9] = [
    ("()", "(a)"),
    ("()", "(b)"),
    ("(a)", "(a,a)"),
    ("(a)", "(a,b)"),
    ("(a)", "(b,a)"),
    ("(b)", "(a,b)"),
    ("(b)", "(b,a)"),
    ("(a,a)", "(b,a,a)"),
    ("(b,a)", "(b,a,a)"),
];

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn z9() -> Arc<Group> {
    Arc::new(Group::cyclic(9).unwrap())
}

fn map(values: [u64; 9]) -> SemilinearMap<AdditiveNaturals> {
    SemilinearMap::new(z9(), AdditiveNaturals, values.to_vec()).unwrap()
}

fn ideal(ctx: &AlgebraContext, members: &[usize]) -> MonomialIdeal {
    ctx.ideal(ElemSet::from_members(ctx.order(), members.iter().copied()))
        .unwrap()
}

fn d3_context() -> AlgebraContext {
    let g = Arc::new(Group::dihedral(3).unwrap());
    let rows: Vec<Vec<bool>> = PRINTED_D3_TABLE
        .iter()
        .map(|r| r.bytes().map(|b| b == b'1').collect())
        .collect();
    let table = cocycle_forge::BinaryTable::from_rows(g, &rows).unwrap();
    AlgebraContext::new(Cocycle::validate(table).unwrap()).unwrap()
}

fn golden_z9() -> Outcome {
    let r = map(R);
    let emitted = emit_table(&r.cocycle_table());
    let printed = PRINTED_TABLE.join("\n") + "\n";
    ensure(emitted == printed, || {
        format!("emitted table differs:\n{emitted}")
    })?;
    let f = r.cocycle();
    let h = f.inertial_group().map_err(|e| e.to_string())?;
    ensure(h.members().to_vec() == vec![0], || {
        format!("H = {}", h.members())
    })?;
    let ctx = AlgebraContext::new(f).map_err(|e| e.to_string())?;
    let gamma = render_catalog(&all_generators(&ctx), ctx.group().labels());
    ensure(gamma == PRINTED_GAMMA, || format!("Γ_f = {gamma}"))?;
    let reps = nontrivial_classes(&ctx);
    ensure(reps == vec![4, 7], || {
        format!("non-trivial annihilator classes {reps:?}")
    })?;
    Ok("table byte-identical, H={0}, 8 generator sets, reps {4,7}".into())
}

fn class_decomposition() -> Outcome {
    let r = map(R);
    let ctx = AlgebraContext::new(r.cocycle()).map_err(|e| e.to_string())?;
    let report = match decompose_by_classes(&ctx).map_err(|e| e.to_string())? {
        ClassDecomposition::Parts(report) => report,
        other => return Err(format!("unexpected verdict {other}")),
    };
    let got: Vec<(usize, Vec<usize>)> = report
        .parts
        .iter()
        .map(|p| (p.rho, p.ideal.members().to_vec()))
        .collect();
    let want: Vec<(usize, Vec<usize>)> = PRINTED_PARTS
        .iter()
        .map(|(rho, i)| (*rho, i.to_vec()))
        .collect();
    ensure(got == want, || format!("parts {got:?}"))?;
    let f0 = ctx.waterhouse();
    for part in &report.parts {
        ensure(part.unique_class, || {
            format!("part rho={} has several classes", part.rho)
        })?;
        let below = part
            .cocycle
            .compare(ctx.cocycle())
            .map_err(|e| e.to_string())?;
        let above = part.cocycle.compare(&f0).map_err(|e| e.to_string())?;
        ensure(
            below == Comparison::Less && above == Comparison::Greater,
            || format!("part rho={} is not strictly between f_0 and f", part.rho),
        )?;
        let classes = nontrivial_classes(
            &AlgebraContext::new(part.cocycle.clone()).map_err(|e| e.to_string())?,
        );
        ensure(classes.len() == 1, || {
            format!("part rho={} has classes {classes:?}", part.rho)
        })?;
    }
    let joined = vee(report.parts.iter().map(|p| p.cocycle.table())).map_err(|e| e.to_string())?;
    ensure(
        joined == *ctx.cocycle().table() && report.recombines,
        || "join differs from f_r".into(),
    )?;
    Ok("five printed ideals, unique classes, strict bounds, join = f_r".into())
}

fn lift_table() -> Outcome {
    let r = map(R);
    let ctx = AlgebraContext::new(r.cocycle()).map_err(|e| e.to_string())?;
    let ideals: Vec<MonomialIdeal> = PRINTED_PARTS.iter().map(|(_, m)| ideal(&ctx, m)).collect();
    let square = |i: usize| ctx.power(&ideals[i], 2);
    ensure(square(2).is_zero() && square(4).is_zero(), || {
        "I_3² or I_5² is non-zero".into()
    })?;
    for i in [0, 1, 3] {
        ensure(square(i).members().to_vec() == vec![4], || {
            format!("I_{}² = {}", i + 1, square(i))
        })?;
        ensure(ctx.power(&ideals[i], 4).is_zero(), || {
            format!("I_{}⁴ is non-zero", i + 1)
        })?;
    }
    let mut matched = 0;
    for (i, ideal) in ideals.iter().enumerate() {
        let mut list = vec![ctx.radical(), ideal.clone()];
        if !square(i).is_zero() {
            list.push(square(i));
        }
        list.push(ctx.zero_ideal());
        let chain = ctx.chain(list).map_err(|e| e.to_string())?;
        let lifted = r.chain_lift(&ctx, &chain).map_err(|e| e.to_string())?;
        for (s, row) in PRINTED_LIFTS.iter().enumerate() {
            let got = lifted.monoid_render(s);
            ensure(got == row[i], || {
                format!("r_{}({s}) = {got}, printed {}", i + 1, row[i])
            })?;
            matched += 1;
        }
        let fi = f_sub_i(&ctx, ideal).map_err(|e| e.to_string())?;
        ensure(*fi.table() == lifted.cocycle_table(), || {
            format!("f_I{} differs from f_r{}", i + 1, i + 1)
        })?;
    }
    ensure(matched == 45, || format!("{matched} tuples compared"))?;
    Ok("ideal powers, 45 tuples and f_I_i = f_r_i".into())
}

trait RenderValue {
    fn monoid_render(&self, s: usize) -> String;
}

impl<M: cocycle_forge::OrderedMonoid> RenderValue for SemilinearMap<M> {
    fn monoid_render(&self, s: usize) -> String {
        self.monoid().render(self.value(s))
    }
}

fn bstar_example() -> Outcome {
    let r = map(R);
    let ctx = AlgebraContext::new(r.cocycle()).map_err(|e| e.to_string())?;
    let lifted = map(R_PRIME);
    let i3 = ideal(&ctx, PRINTED_PARTS[2].1);
    let fi3 = f_sub_i(&ctx, &i3).map_err(|e| e.to_string())?;
    ensure(*fi3.table() == lifted.cocycle_table(), || {
        "f_I3 differs from f_r'".into()
    })?;
    let lctx = AlgebraContext::new(lifted.cocycle()).map_err(|e| e.to_string())?;
    let d = decompose_by_bstar(&lctx).map_err(|e| e.to_string())?;
    let joined = vee(d.parts.iter().map(|p| p.cocycle.table())).map_err(|e| e.to_string())?;
    ensure(d.recombines && joined == *lctx.cocycle().table(), || {
        "parts do not recombine".into()
    })?;
    let distinct = d.distinct_parts();
    let ideals: Vec<Vec<usize>> = distinct
        .iter()
        .map(|p| p.ideal.members().to_vec())
        .collect();
    ensure(
        ideals == vec![PRINTED_P1.to_vec(), PRINTED_P2.to_vec()],
        || format!("ideals {ideals:?}"),
    )?;
    for (part, printed) in distinct.iter().zip([PRINTED_GAMMA_P1, PRINTED_GAMMA_P2]) {
        let pctx = AlgebraContext::new(part.cocycle.clone()).map_err(|e| e.to_string())?;
        let gamma = render_catalog(&all_generators(&pctx), pctx.group().labels());
        ensure(gamma == printed, || {
            format!("Γ for {} is {gamma}", part.ideal)
        })?;
    }
    Ok(format!(
        "f_I3 = f_r', P1 and P2, {} words, 2 printed catalogs",
        d.parts.len()
    ))
}

fn dihedral_example() -> Outcome {
    let ctx = d3_context();
    let labels = ctx.group().labels().to_vec();
    let ab = labels
        .iter()
        .position(|l| l == "ab")
        .ok_or("no element ab")?;
    let split = ctx.classify_annihilators();
    ensure(split.nontrivial.to_vec() == vec![ab], || {
        format!("non-trivial annihilators {}", split.nontrivial)
    })?;
    let gens = all_generators(&ctx);
    let words: Vec<String> = gens
        .words_of(ab)
        .iter()
        .map(|w| w.render(&labels))
        .collect();
    ensure(words == ["(a,b)", "(b,a,a)"], || {
        format!("words of ab: {words:?}")
    })?;
    let a = labels.iter().position(|l| l == "a").ok_or("no element a")?;
    let b = labels.iter().position(|l| l == "b").ok_or("no element b")?;
    let sum = ctx.sum(
        &ctx.principal_ideal(a).unwrap(),
        &ctx.principal_ideal(b).unwrap(),
    );
    for w in gens.words_of(ab) {
        let i = ideal_of_word(&ctx, w).map_err(|e| e.to_string())?;
        ensure(i == sum, || {
            format!("I_{} = {i}, I_a + I_b = {sum}", w.render(&labels))
        })?;
    }
    let dot = graph_dot(&ctx, GraphKind::Generator);
    let edges: BTreeSet<(String, String)> = dot
        .lines()
        .filter_map(|l| l.trim().trim_end_matches(';').split_once(" -- "))
        .map(|(x, y)| {
            (
                x.trim_matches('"').to_string(),
                y.trim_matches('"').to_string(),
            )
        })
        .collect();
    let printed: BTreeSet<(String, String)> = PRINTED_D3_COVERS
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    ensure(edges == printed, || format!("DOT edges {edges:?}"))?;
    match search_realization(&ctx, 20) {
        Realization::Exhausted { nodes, .. } => Ok(format!(
            "unique annihilator ab, 9 covers, no r up to 20 ({nodes} nodes)"
        )),
        Realization::Witness(r) => Err(format!("unexpected realization {r:?}")),
    }
}

fn census_groups() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("Z/2", Arc::new(Group::cyclic(2).unwrap())),
        ("Z/3", Arc::new(Group::cyclic(3).unwrap())),
        ("Z/4", Arc::new(Group::cyclic(4).unwrap())),
        ("D3", Arc::new(Group::dihedral(3).unwrap())),
    ]
}

fn census_suite() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in census_groups() {
        let mut cfg = CensusConfig::new(g.clone());
        cfg.max_chains = 10_000;
        if g.order() <= 4 {
            let census = enumerate_cocycles(&cfg).cocycles;
            ensure(census == brute_force_cocycles(&g), || {
                format!("{name}: census differs from brute force")
            })?;
        }
        let report = property_suite(&cfg).map_err(|e| e.to_string())?;
        ensure(report.passes(), || format!("{name}: {report}"))?;
        ensure(!report.truncated, || format!("{name}: census truncated"))?;
        let checks: u64 = report.checks.values().map(|t| t.passed).sum();
        summary.push(format!(
            "{name} {} cocycles/{} chains/{checks} checks",
            report.cocycles, report.chains
        ));
    }
    Ok(summary.join(", "))
}

fn morphisms() -> Outcome {
    let mut pairs = 0;
    for (name, g) in census_groups().into_iter().filter(|(_, g)| g.order() >= 4) {
        for f in enumerate_cocycles(&CensusConfig::new(g.clone())).cocycles {
            let Ok(ctx) = AlgebraContext::new(f) else {
                continue;
            };
            for ideal in enumerate_ideals(&ctx).map_err(|e| e.to_string())? {
                let m = morphism_check(&ctx, &ideal).map_err(|e| e.to_string())?;
                ensure(m.passes(), || format!("{name}: I={ideal}: {m}"))?;
                ensure(
                    m.dimension == g.order()
                        && m.dimension == m.quotient_dimension + m.ideal_dimension,
                    || format!("{name}: I={ideal}: dimensions {m}"),
                )?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (f, I) pairs"))
}

fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=9);
        let g = Arc::new(Group::cyclic(n).unwrap());
        let proper: Vec<_> = small_subgroups(&g)
            .into_iter()
            .filter(|h| h.len() < n)
            .collect();
        let kernel = proper
            .choose(&mut rng)
            .expect("the trivial subgroup is proper");
        let r = random_semilinear_map(&g, kernel, 6, &mut rng);
        let ctx = AlgebraContext::new(r.cocycle()).map_err(|e| e.to_string())?;
        let ideals = enumerate_ideals(&ctx).map_err(|e| e.to_string())?;
        let chain = random_chain(&ctx, &ideals, &mut rng);
        let report = sandwich_check(&r, &ctx, &chain).map_err(|e| e.to_string())?;
        ensure(report.passes(), || {
            format!("r={:?} chain={chain:?}: {report:?}", r.values())
        })?;
        done += 1;
    }
    Ok(format!("{done} random (r, chain) pairs"))
}

/// Whether the reported violation reads the cell `(s, t)`.
fn touches(g: &Group, err: &CocycleError, (s, t): (usize, usize)) -> bool {
    match *err {
        CocycleError::NotNormalized(x) => (s, t) == (0, x) || (s, t) == (x, 0),
        CocycleError::IdentityViolated(a, b, c) => {
            [(a, b), (g.mul(a, b), c), (b, c), (a, g.mul(b, c))].contains(&(s, t))
        }
        _ => false,
    }
}

fn negative_control() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut maps = vec![map(R), map(R_PRIME)];
    for n in [4, 5, 6, 8] {
        let g = Arc::new(Group::cyclic(n).unwrap());
        maps.push(random_semilinear_map(
            &g,
            &g.trivial_subgroup(),
            4,
            &mut rng,
        ));
    }
    let (mut invalid, mut provenance) = (0, 0);
    for r in &maps {
        let f = r.cocycle();
        let n = f.order();
        for s in 0..n {
            for t in 0..n {
                let mutated = f.flipped_unchecked(s, t);
                let report = check_one(&mutated, 200);
                if let Some(finding) = report.findings.iter().find(|x| x.check == "cocycle_valid") {
                    let err = mutated
                        .table()
                        .check_cocycle()
                        .expect_err("suite flagged the table");
                    ensure(
                        finding.detail == err.to_string() && touches(r.group(), &err, (s, t)),
                        || format!("flip ({s},{t}) reported as {finding}"),
                    )?;
                    invalid += 1;
                    continue;
                }
                let finding = check_realization(mutated.table(), r)
                    .ok_or_else(|| format!("flip ({s},{t}) went unnoticed"))?;
                ensure(finding.detail.ends_with(&format!("({s},{t})")), || {
                    format!("flip ({s},{t}): {finding}")
                })?;
                provenance += 1;
            }
        }
    }
    Ok(format!(
        "{invalid} flips break validation, {provenance} caught by f = f_r at the flipped cell"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Z/9Z golden reproduction", golden_z9),
        ("class decomposition into five parts", class_decomposition),
        ("lift table r_1..r_5", lift_table),
        ("B* decomposition of f_r'", bstar_example),
        ("D3 example", dihedral_example),
        ("census property suite", census_suite),
        ("morphism checks", morphisms),
        ("sandwich and padded equality", sandwich),
        ("negative control", negative_control),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {} [PRIMARY] {name}: PASS ({detail}; {secs:.2}s)",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {} [PRIMARY] {name}: FAIL ({detail}; {secs:.2}s)",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
