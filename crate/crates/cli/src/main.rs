//! `coc`: command-line front end for kernelization, exact solving, essence tooling,
//! instance generation and kernel verification.
//!
//! Exit codes: 0 success, 1 answer NO with `--exit-code`, 2 usage error, 3 input error.

use anyhow::{bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use coc_kernel::caterpillar::recognize_caterpillar_forest;
use coc_kernel::essence::{essence, synthesize};
use coc_kernel::gen::{
    gen_acoc_to_coc, gen_random, gen_umrss_to_coc, gen_vc_to_dcoc, gen_xsc_to_acoc, parse_umrss, parse_xsc, KPolicy,
    RandomProfile, VcInstance,
};
use coc_kernel::monoid::{compose_sequence, decompose, MonoidFn};
use coc_kernel::packing::solution_tight_packing;
use coc_kernel::pipeline::{kernelize_deg2, kernelize_pw1, KernelReport};
use coc_kernel::rules::{rule1_reduce_components, rule2_replace_spine};
use coc_kernel::solve::{opt_brute_with_limit, opt_poly, solve_vc_branching, BRUTE_LIMIT};
use coc_kernel::{parse_annotated, parse_instance, write_annotated, write_instance, Error, Instance};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coc", version, about = "Component Order Connectivity kernelization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply reduction rules or the full kernelization pipeline.
    Kernelize(KernelizeArgs),
    /// Decide an instance exactly; prints YES or NO.
    Solve(SolveArgs),
    /// Essence monoid and caterpillar tooling.
    #[command(subcommand)]
    Essence(EssenceCommand),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check that a kernel is equivalent to its input; prints YES or NO.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

#[derive(Args)]
struct KernelizeArgs {
    /// Input instance file.
    input: PathBuf,
    /// Output instance file (standard output if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Which rules to apply: Rule 1 with b = 2, Rule 2 to a fixpoint, or the whole pipeline.
    #[arg(long, value_enum, default_value = "all")]
    rule: RuleChoice,
    /// Treat G - M as cycles and caterpillars (pipeline only).
    #[arg(long)]
    deg2: bool,
    /// Write the bound certificate as key: value lines.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the provenance log of every rule application.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exhaustive subset search.
    Brute,
    /// Polynomial algorithm for graphs whose components are caterpillars or cycles.
    Caterpillar,
    /// Branching over colorings of a vertex-cover modulator.
    BranchVc,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "brute")]
    method: Method,
    /// Vertex limit of the exhaustive search (at most 64).
    #[arg(long, default_value_t = BRUTE_LIMIT)]
    max_brute_n: usize,
    /// Exit with status 1 when the answer is NO.
    #[arg(long)]
    exit_code: bool,
}

#[derive(Subcommand)]
enum EssenceCommand {
    /// Factor a monoid element into basic functions.
    Decompose {
        #[arg(long)]
        d: usize,
        /// Comma-separated table f(0),...,f(d+1).
        #[arg(long)]
        table: String,
    },
    /// Essence of one caterpillar component of G - M, relative to its recognized spine.
    Compute {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Caterpillar whose essence is the given table, in the instance format with empty M.
    /// A leading comment names the spine the essence refers to.
    Synth {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        table: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dump the solution-tight packing of G - M.
    Pack { input: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Seeded random instance whose modulator leaves caterpillars (and optional cycles).
    Random(RandomArgs),
    /// Vertex cover instance (graph and k of an instance file) to d-COC.
    Vc2coc {
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// UMRSS instance to COC.
    Umrss2coc {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact set cover instance to annotated COC.
    Xsc2acoc {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Annotated COC instance to COC.
    Acoc2coc {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Modulator size.
    #[arg(long, default_value_t = 2)]
    modulator: usize,
    #[arg(long, default_value_t = 3)]
    caterpillars: usize,
    /// Spine lengths are drawn from 1..=spine-max.
    #[arg(long, default_value_t = 5)]
    spine_max: usize,
    #[arg(long, default_value_t = 0.3)]
    pendant_prob: f64,
    #[arg(long, default_value_t = 2)]
    max_pendants: usize,
    #[arg(long, default_value_t = 0)]
    cycles: usize,
    /// Probability of each modulator-to-forest edge.
    #[arg(long, default_value_t = 0.2)]
    edge_prob: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Brute,
}

#[derive(Args)]
struct VerifyArgs {
    /// Kernel instance file.
    #[arg(long, required_unless_present = "suite")]
    kernel: Option<PathBuf>,
    /// Original instance file.
    #[arg(long, required_unless_present = "suite")]
    against: Option<PathBuf>,
    /// Kernelize every `.coc` file of a directory and verify each result.
    #[arg(long, conflicts_with_all = ["kernel", "against"])]
    suite: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "brute")]
    oracle: Oracle,
    #[arg(long, default_value_t = BRUTE_LIMIT)]
    max_brute_n: usize,
    /// Exit with status 1 when the verdict is NO.
    #[arg(long)]
    exit_code: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("invalid instance {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).exit()
}

fn parse_table(d: usize, table: &str) -> Result<MonoidFn> {
    MonoidFn::parse(d, table).context("invalid table")
}

fn answer(yes: bool) -> &'static str {
    if yes {
        "YES"
    } else {
        "NO"
    }
}

/// Decision verbs return whether the answer was YES.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Kernelize(args) => kernelize(args).map(|()| true),
        Command::Solve(args) => solve(args),
        Command::Essence(cmd) => essence_cmd(cmd).map(|()| true),
        Command::Gen(cmd) => gen_cmd(cmd).map(|()| true),
        Command::Verify(args) => verify(args),
    }
}

fn kernelize(args: KernelizeArgs) -> Result<()> {
    if args.deg2 && args.rule != RuleChoice::All {
        usage_error("--deg2 applies only to --rule all");
    }
    let inst = read_instance(&args.input)?;
    let (out, log, report) = match args.rule {
        RuleChoice::One => {
            let (out, r) = rule1_reduce_components(&inst, 2)?;
            (out, r.log, None)
        }
        RuleChoice::Two => {
            let mut cur = inst;
            let mut log = Vec::new();
            loop {
                match rule2_replace_spine(&cur) {
                    Ok((next, r)) => {
                        log.extend(r.log);
                        cur = next;
                    }
                    Err(Error::NotApplicable) => break,
                    Err(e) => return Err(e.into()),
                }
            }
            (cur, log, None)
        }
        RuleChoice::All => {
            let report: KernelReport = if args.deg2 { kernelize_deg2(&inst)? } else { kernelize_pw1(&inst)? };
            (report.outcome.instance(), report.log.clone(), Some(report))
        }
    };
    if let Some(path) = &args.trace {
        let mut text = log.join("\n");
        text.push('\n');
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(path) = &args.report {
        let Some(report) = &report else { usage_error("--report applies only to --rule all") };
        fs::write(path, report.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(args.output.as_deref(), &write_instance(&out))
}

fn solve(args: SolveArgs) -> Result<bool> {
    let inst = read_instance(&args.input)?;
    let yes = match args.method {
        Method::Brute => {
            let s = opt_brute_with_limit(&inst.graph, inst.d, args.max_brute_n)?;
            let yes = s.size() as i64 <= inst.k;
            println!("{}", answer(yes));
            println!("opt: {}", s.size());
            yes
        }
        Method::Caterpillar => {
            let opt = opt_poly(&inst.graph, inst.d)?;
            let yes = opt as i64 <= inst.k;
            println!("{}", answer(yes));
            println!("opt: {opt}");
            yes
        }
        Method::BranchVc => match solve_vc_branching(&inst)? {
            Some(s) => {
                println!("YES");
                let ids: Vec<String> = s.vertices.iter().map(usize::to_string).collect();
                println!("solution: {}", ids.join(" "));
                true
            }
            None => {
                println!("NO");
                false
            }
        },
    };
    Ok(yes || !args.exit_code)
}

fn essence_cmd(cmd: EssenceCommand) -> Result<()> {
    match cmd {
        EssenceCommand::Decompose { d, table } => {
            let f = parse_table(d, &table)?;
            let seq = decompose(&f);
            let names: Vec<String> = seq.iter().map(ToString::to_string).collect();
            println!("{}", names.join(" "));
            let back = compose_sequence(d, &seq);
            if back != f {
                bail!("composition gives {back}, expected {f}");
            }
            println!("verified: {} factors compose to {f}", seq.len());
        }
        EssenceCommand::Compute { input, component } => {
            let inst = read_instance(&input)?;
            let cs = recognize_caterpillar_forest(&inst.graph, &inst.modulator)?;
            let Some(comp) = cs.components.get(component) else {
                bail!("component {component} out of range ({} components)", cs.components.len());
            };
            let c = comp.caterpillar(0, comp.spine.len() - 1);
            println!("{}", essence(&c, inst.d)?);
        }
        EssenceCommand::Synth { d, table, output } => {
            let gamma = parse_table(d, &table)?;
            let c = synthesize(&gamma);
            let opt = coc_kernel::packing::pack_caterpillar(&c, d).0.len();
            let spine: Vec<usize> = (0..c.spine_len()).collect();
            let text = format!(
                "# essence {gamma} relative to spine {} with extra pendants attached at vertex 0\n{}",
                join(&spine),
                write_instance(&Instance::new(c.graph(), d, opt as i64, []))
            );
            emit(output.as_deref(), &text)?;
        }
        EssenceCommand::Pack { input } => {
            let inst = read_instance(&input)?;
            let cs = recognize_caterpillar_forest(&inst.graph, &inst.modulator)?;
            let packing = solution_tight_packing(&cs, inst.d);
            for (c, p) in packing.components.iter().enumerate() {
                let comp = &cs.components[c];
                for iv in &p.graphs {
                    println!(
                        "{c} graph {}..{} {}",
                        iv.first,
                        iv.last,
                        join(&comp.interval_vertices(iv.first, iv.last))
                    );
                }
                if let Some(iv) = p.tail {
                    println!("{c} tail {}..{} {}", iv.first, iv.last, join(&comp.interval_vertices(iv.first, iv.last)));
                }
            }
            println!("size: {}", packing.len());
        }
    }
    Ok(())
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn gen_cmd(cmd: GenCommand) -> Result<()> {
    match cmd {
        GenCommand::Random(a) => {
            if a.d == 0 || a.caterpillars == 0 || a.spine_max == 0 {
                usage_error("--d, --caterpillars and --spine-max must be positive");
            }
            if !(0.0..=1.0).contains(&a.pendant_prob) || !(0.0..=1.0).contains(&a.edge_prob) {
                usage_error("probabilities must lie in [0, 1]");
            }
            let profile = RandomProfile {
                d: a.d,
                modulator_size: a.modulator,
                caterpillars: a.caterpillars,
                spine_len: (1, a.spine_max),
                pendant_prob: a.pendant_prob,
                max_pendants: a.max_pendants,
                cycles: a.cycles,
                cycle_len: (3, (2 * a.d + 2).max(3)),
                modulator_edge_prob: a.edge_prob,
                k: KPolicy::Fixed(a.k),
            };
            emit(a.output.as_deref(), &write_instance(&gen_random(&profile, a.seed)))
        }
        GenCommand::Vc2coc { input, d, output } => {
            if d == 0 {
                usage_error("--d must be positive");
            }
            let inst = read_instance(&input)?;
            let vc = VcInstance { graph: inst.graph, k: inst.k };
            emit(output.as_deref(), &write_instance(&gen_vc_to_dcoc(&vc, d)))
        }
        GenCommand::Umrss2coc { input, output } => {
            let u = parse_umrss(&read(&input)?).with_context(|| format!("invalid UMRSS file {}", input.display()))?;
            emit(output.as_deref(), &write_instance(&gen_umrss_to_coc(&u)))
        }
        GenCommand::Xsc2acoc { input, output } => {
            let x = parse_xsc(&read(&input)?).with_context(|| format!("invalid XSC file {}", input.display()))?;
            emit(output.as_deref(), &write_annotated(&gen_xsc_to_acoc(&x)))
        }
        GenCommand::Acoc2coc { input, output } => {
            let a = parse_annotated(&read(&input)?)
                .with_context(|| format!("invalid annotated instance {}", input.display()))?;
            emit(output.as_deref(), &write_instance(&gen_acoc_to_coc(&a)))
        }
    }
}

fn brute_answer(inst: &Instance, limit: usize) -> Result<bool> {
    Ok(opt_brute_with_limit(&inst.graph, inst.d, limit)?.size() as i64 <= inst.k)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let Oracle::Brute = args.oracle;
    let ok = if let Some(dir) = &args.suite {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .with_context(|| format!("cannot read directory {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        files.retain(|p| p.extension().is_some_and(|e| e == "coc"));
        files.sort();
        let mut all = true;
        for path in &files {
            let inst = read_instance(path)?;
            let kernel = kernelize_pw1(&inst)?.outcome.instance();
            let (a, b) = (brute_answer(&kernel, args.max_brute_n)?, brute_answer(&inst, args.max_brute_n)?);
            println!("{}: kernel {} input {}", path.display(), answer(a), answer(b));
            all &= a == b;
        }
        all
    } else {
        let kernel = read_instance(args.kernel.as_deref().expect("clap requires --kernel"))?;
        let input = read_instance(args.against.as_deref().expect("clap requires --against"))?;
        let (a, b) = (brute_answer(&kernel, args.max_brute_n)?, brute_answer(&input, args.max_brute_n)?);
        println!("kernel {} input {}", answer(a), answer(b));
        a == b
    };
    println!("{}", answer(ok));
    Ok(ok || !args.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
