use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use cocycle_forge::algebra::{AlgebraContext, DescendingChain};
use cocycle_forge::decomposition::{
    check_identity, cocycle_from_chain, decompose_by_bstar, decompose_by_classes, morphism_check,
    ClassDecomposition, Identity,
};
use cocycle_forge::generators::{all_generators, graph_dot, GraphKind};
use cocycle_forge::io::{self, AnyMap, Artifacts, IoError};
use cocycle_forge::oracle::{census_record, enumerate_cocycles, run_suite, CensusConfig};
use cocycle_forge::semilinear::{search_realization, OrderedMonoid, Realization, SemilinearMap};
use cocycle_forge::{Cocycle, ElemSet, Group};

#[derive(Parser)]
#[command(
    name = "cocycle-forge",
    version,
    about = "Idempotent 2-cocycles over finite groups"
)]
struct Cli {
    /// Built-in group (cyclicN, dihedralM, zN, dM) or a group file.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Cocycle table file.
    #[arg(long, global = true)]
    cocycle: Option<PathBuf>,
    /// Semilinear map file; its cocycle is used when --cocycle is absent.
    #[arg(long, global = true)]
    r: Option<PathBuf>,
    /// Chain file, one ideal per line.
    #[arg(long, global = true)]
    chain: Option<PathBuf>,
    /// Output file, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Element,
    Generator,
}

#[derive(Clone, Copy, ValueEnum)]
enum By {
    Classes,
    Bstar,
}

#[derive(Subcommand)]
enum Command {
    /// Check the cocycle identity and normalization.
    Validate,
    /// Print H and G*.
    Inertial,
    /// Print J, J², … down to the zero ideal.
    RadicalPowers,
    /// Print the N_k partition of G*.
    Nk,
    /// Print the generator catalog.
    Generators,
    /// Print annihilators, split into trivial and non-trivial.
    Annihilators,
    /// Emit the element or generator graph as DOT.
    Graph {
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Print the table of the chain cocycle of --chain.
    ChainCocycle,
    /// Decompose f into a join of simpler cocycles.
    Decompose {
        #[arg(long, value_enum)]
        by: By,
    },
    /// Check one named identity on the ideals of --chain or --ideals.
    Identity {
        /// chain_break, waterhouse_iff, sum_product, intersection_vee, cap_zero, fI_eq_f,
        /// trivial_annih_replace or leq_f.
        #[arg(long)]
        name: String,
        /// Ideal list file, same format as a chain file.
        #[arg(long)]
        ideals: Option<PathBuf>,
    },
    /// Check the quotient morphisms for one ideal, e.g. `--ideal 6,7`.
    Morphism {
        #[arg(long)]
        ideal: String,
    },
    /// Print the lexicographic lift of --r over --chain.
    LiftR,
    /// Pad --chain to run from J to 0, lift --r over it and certify the result.
    PadLift,
    /// Search for r over the additive naturals with f_r = f.
    SearchR {
        /// Largest value tried on G*.
        #[arg(long)]
        bound: u64,
    },
    /// List every idempotent cocycle of the group, optionally checking all identities.
    Census {
        /// Use the cyclic group of this order, and the dihedral one when it is even.
        #[arg(long)]
        order: Option<usize>,
        /// Run the property suite over every cocycle and its descending chains.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_cocycles: usize,
        /// Chains of length at most 4 checked per cocycle.
        #[arg(long, default_value_t = 10_000)]
        max_chains: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

/// Text plus the exit code it should end with.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn failing(text: String, failed: bool) -> Self {
        Output {
            text,
            code: u8::from(failed),
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    artifacts: Option<Artifacts>,
}

impl Session<'_> {
    fn artifacts(&self) -> Result<&Artifacts, Failure> {
        self.artifacts
            .as_ref()
            .ok_or_else(|| usage("--group is required"))
    }

    fn group(&self) -> Result<&Arc<Group>, Failure> {
        Ok(&self.artifacts()?.group)
    }

    fn cocycle(&self) -> Result<&Cocycle, Failure> {
        self.artifacts()?
            .cocycle
            .as_ref()
            .ok_or_else(|| usage("--cocycle or --r is required"))
    }

    fn context(&self) -> Result<AlgebraContext, Failure> {
        AlgebraContext::new(self.cocycle()?.clone()).map_err(invalid)
    }

    fn chain(&self, ctx: &AlgebraContext) -> Result<DescendingChain, Failure> {
        let path = self
            .cli
            .chain
            .as_ref()
            .ok_or_else(|| usage("--chain is required"))?;
        Ok(io::parse_chain(
            ctx,
            &io::read_file(path)?,
            &path.display().to_string(),
        )?)
    }

    fn r(&self) -> Result<&AnyMap, Failure> {
        self.artifacts()?
            .r
            .as_ref()
            .ok_or_else(|| usage("--r is required"))
    }
}

fn lift_text<M: OrderedMonoid>(
    r: &SemilinearMap<M>,
    ctx: &AlgebraContext,
    chain: &DescendingChain,
    pad: bool,
) -> Result<Output, Failure> {
    if !pad {
        return Ok(Output::ok(
            r.chain_lift(ctx, chain).map_err(invalid)?.render(),
        ));
    }
    let lift = r.padded_lift(ctx, chain).map_err(invalid)?;
    let mut text = String::from("# padded chain\n");
    for ideal in lift.chain.ideals() {
        let _ = writeln!(text, "# {ideal}");
    }
    let _ = writeln!(text, "# certified={}", lift.certified);
    text.push_str(&lift.map.render());
    Ok(Output::failing(text, !lift.certified))
}

fn census(group: Arc<Group>, check: bool, max_cocycles: usize, max_chains: usize) -> Output {
    let mut cfg = CensusConfig::new(group.clone());
    cfg.max_cocycles = max_cocycles;
    cfg.max_chains = max_chains;
    let found = enumerate_cocycles(&cfg);
    let mut text = format!(
        "# group order={} cocycles={} truncated={}\n",
        group.order(),
        found.cocycles.len(),
        found.truncated
    );
    for f in &found.cocycles {
        text.push_str(&census_record(f));
        text.push('\n');
    }
    if !check {
        return Output::ok(text);
    }
    let report = run_suite(&found.cocycles, max_chains);
    text.push_str(&report.to_string());
    Output::failing(text, !report.passes())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let artifacts = match &cli.group {
        Some(g) => Some(io::load_artifacts(
            g,
            cli.cocycle.as_deref(),
            cli.r.as_deref(),
        )?),
        None => None,
    };
    let session = Session { cli, artifacts };
    match &cli.command {
        Command::Validate => {
            let f = session.cocycle()?;
            let h = f.inertial_group().map_err(invalid)?;
            Ok(Output::ok(format!("valid\nH={}\n", h.members())))
        }
        Command::Inertial => {
            let f = session.cocycle()?;
            let h = f.inertial_group().map_err(invalid)?;
            let gstar = ElemSet::full(f.order()).difference(h.members());
            Ok(Output::ok(format!("H={}\nG*={}\n", h.members(), gstar)))
        }
        Command::RadicalPowers => {
            let ctx = session.context()?;
            let mut text = String::new();
            for (i, p) in ctx.radical_powers().iter().enumerate() {
                let _ = writeln!(text, "J^{}={p}", i + 1);
            }
            Ok(Output::ok(text))
        }
        Command::Nk => {
            let ctx = session.context()?;
            let mut text = String::new();
            for (i, layer) in ctx.nk_partition().iter().enumerate() {
                let _ = writeln!(text, "N_{}={layer}", i + 1);
            }
            Ok(Output::ok(text))
        }
        Command::Generators => {
            let ctx = session.context()?;
            Ok(Output::ok(
                all_generators(&ctx).render(ctx.group().labels()),
            ))
        }
        Command::Annihilators => {
            let ctx = session.context()?;
            let split = ctx.classify_annihilators();
            let reps = ctx.class_representatives(&split.nontrivial);
            let reps: Vec<String> = reps.iter().map(ToString::to_string).collect();
            Ok(Output::ok(format!(
                "annihilators={}\ntrivial={}\nnontrivial={}\nnontrivial_classes={}\n",
                ctx.annihilators(),
                split.trivial,
                split.nontrivial,
                reps.join(",")
            )))
        }
        Command::Graph { kind } => {
            let ctx = session.context()?;
            let kind = match kind {
                Kind::Element => GraphKind::Element,
                Kind::Generator => GraphKind::Generator,
            };
            Ok(Output::ok(graph_dot(&ctx, kind)))
        }
        Command::ChainCocycle => {
            let ctx = session.context()?;
            let chain = session.chain(&ctx)?;
            let f = cocycle_from_chain(&ctx, &chain).map_err(invalid)?;
            Ok(Output::ok(io::emit_table(f.table())))
        }
        Command::Decompose { by: By::Classes } => {
            let ctx = session.context()?;
            let d = decompose_by_classes(&ctx).map_err(invalid)?;
            let failed = match &d {
                ClassDecomposition::Parts(r) => !r.is_sound(),
                ClassDecomposition::UniqueClass { .. } => false,
            };
            Ok(Output::failing(d.to_string(), failed))
        }
        Command::Decompose { by: By::Bstar } => {
            let ctx = session.context()?;
            let d = decompose_by_bstar(&ctx).map_err(invalid)?;
            Ok(Output::failing(
                d.render(ctx.group().labels()),
                !d.recombines,
            ))
        }
        Command::Identity { name, ideals } => {
            let ctx = session.context()?;
            let path = ideals
                .as_ref()
                .or(cli.chain.as_ref())
                .ok_or_else(|| usage("--chain or --ideals is required"))?;
            let list = io::parse_ideals(&ctx, &io::read_file(path)?, &path.display().to_string())?;
            if !Identity::NAMES.contains(&name.as_str()) {
                return Err(usage(format!(
                    "unknown identity {name}; expected one of {}",
                    Identity::NAMES.join(", ")
                )));
            }
            let identity = Identity::from_ideals(&ctx, name, list).map_err(invalid)?;
            match check_identity(&ctx, &identity).map_err(invalid)? {
                Ok(()) => Ok(Output::ok(format!("{name}: holds\n"))),
                Err(c) => Ok(Output::failing(format!("{name}: fails {c}\n"), true)),
            }
        }
        Command::Morphism { ideal } => {
            let ctx = session.context()?;
            let set = io::parse_index_set(ideal, ctx.order(), "--ideal", 1)
                .map_err(|e| usage(e.to_string()))?;
            let ideal = ctx.ideal(set).map_err(invalid)?;
            let report = morphism_check(&ctx, &ideal).map_err(invalid)?;
            Ok(Output::failing(report.to_string(), !report.passes()))
        }
        Command::LiftR | Command::PadLift => {
            let pad = matches!(cli.command, Command::PadLift);
            let r = session.r()?;
            let ctx = session.context()?;
            let chain = session.chain(&ctx)?;
            match r {
                AnyMap::Naturals(r) => lift_text(r, &ctx, &chain, pad),
                AnyMap::Lex(r) => lift_text(r, &ctx, &chain, pad),
            }
        }
        Command::SearchR { bound } => {
            let ctx = session.context()?;
            match search_realization(&ctx, *bound) {
                Realization::Witness(r) => Ok(Output::ok(r.render())),
                Realization::Exhausted { bound, nodes } => Ok(Output::failing(
                    format!("exhausted bound={bound} nodes={nodes}\n"),
                    true,
                )),
            }
        }
        Command::Census {
            order,
            check,
            max_cocycles,
            max_chains,
        } => {
            if *max_cocycles == 0 || *max_chains == 0 {
                return Err(usage("limits must be positive"));
            }
            let groups: Vec<Arc<Group>> = match order {
                Some(n) => {
                    let mut groups = vec![Arc::new(
                        Group::cyclic(*n).map_err(|e| usage(e.to_string()))?,
                    )];
                    if n % 2 == 0 && *n >= 4 {
                        groups.push(Arc::new(
                            Group::dihedral(n / 2).map_err(|e| usage(e.to_string()))?,
                        ));
                    }
                    groups
                }
                None => vec![session.group()?.clone()],
            };
            let mut text = String::new();
            let mut code = 0;
            for g in groups {
                let out = census(g, *check, *max_cocycles, *max_chains);
                text.push_str(&out.text);
                code = code.max(out.code);
            }
            Ok(Output { text, code })
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var("COCYCLE_FORGE_THREADS") {
        let n: usize = value.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            usage(format!(
                "COCYCLE_FORGE_THREADS must be a positive integer, found {value:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn write_out(target: &str, text: &str) -> Result<(), Failure> {
    if target == "-" {
        let mut stdout = std::io::stdout().lock();
        match stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
        {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(e.to_string())),
            _ => Ok(()),
        }
    } else {
        std::fs::write(target, text).map_err(|e| usage(format!("cannot write {target}: {e}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads()
        .and_then(|()| run(&cli))
        .and_then(|out| {
            write_out(&cli.out, &out.text)?;
            Ok(out.code)
        });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
