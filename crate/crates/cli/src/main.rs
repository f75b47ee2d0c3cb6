mod case;
mod report;
mod scan;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use case::{Case, Config, Descriptor};
use hwtensor::tensor::TensorProduct;
use hwtensor::unitarity::{positivity_check, star_adjointness, StarData};
use hwtensor::{CartanType, Context, HWModule, ModuleKind, RootDatum, RootSum};
use report::{CheckReport, SampleJson, TwistJson, TwistReportJson, UnitarityReport, VermaLiftJson};

const OUT_DIR_ENV: &str = "HWTENSOR_OUT_DIR";

const AFTER_HELP: &str = "\
Module descriptors:
  irr:<pairings>            irreducible quotient
  verma:<pairings>          Verma module
  par:<levi>:<pairings>     parabolic Verma module; <levi> lists simple roots (1-based)
<pairings> are the values (lambda, alpha_i), comma separated, integers or fractions.

Exit status: 0 success / completely reducible, 2 defect or failed check, 1 usage error.
Output goes to --out, else to $HWTENSOR_OUT_DIR/<command>-<case>.<ext>, else to stdout.";

#[derive(Parser)]
#[command(name = "hwtensor", version, about = "Complete reducibility of tensor products of highest-weight U_q(g)-modules", after_help = AFTER_HELP)]
struct Cli {
    /// key=value file supplying defaults for any flag
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file for the report
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CaseArgs {
    /// Root datum: A1, A2, A3, B2, G2
    #[arg(long = "type", value_name = "DATUM")]
    datum: Option<String>,
    /// Left factor V
    #[arg(long, value_name = "DESCRIPTOR", allow_hyphen_values = true)]
    v: Option<String>,
    /// Right factor Z
    #[arg(long, value_name = "DESCRIPTOR", allow_hyphen_values = true)]
    z: Option<String>,
    /// Height cutoff (defaults to the depth of V ⊗ Z for finite-dimensional factors)
    #[arg(long)]
    height: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Singular vectors, canonical form ranks and the reducibility verdict
    Check(CaseArgs),
    /// Twist matrices, pullback check and the Verma-lift cross-check at one drop
    Twist {
        #[command(flatten)]
        case: CaseArgs,
        /// Drop below the top weight, e.g. `0`, `a1`, `2a1+a2`
        #[arg(long)]
        drop: Option<String>,
    },
    /// Verdicts over a grid of factors, written as CSV
    Scan {
        #[command(flatten)]
        case: CaseArgs,
        /// Append-only file of finished rows; reruns skip them
        #[arg(long, value_name = "PATH")]
        journal: Option<PathBuf>,
    },
    /// Positivity of the Hermitian form on a finite-dimensional irreducible
    Unitarity {
        #[arg(long = "type", value_name = "DATUM")]
        datum: Option<String>,
        /// Module, irr:<pairings>
        #[arg(long, value_name = "DESCRIPTOR", allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long)]
        height: Option<u32>,
        /// Comma-separated positive rationals
        #[arg(long, value_name = "LIST")]
        q0: Option<String>,
    },
}

enum Outcome {
    Ok,
    Defect,
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn resolve(flag: Option<PathBuf>, cfg: &Config, default_name: impl FnOnce() -> String) -> Self {
        let path = flag
            .or_else(|| cfg.get("out").map(PathBuf::from))
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| Path::new(&d).join(default_name())));
        Self { path }
    }

    fn write(&self, bytes: &[u8]) -> Result<()> {
        match &self.path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
                }
                std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display()))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(bytes)?;
                Ok(out.flush()?)
            }
        }
    }
}

fn datum_of(flag: Option<String>, cfg: &Config) -> Result<CartanType> {
    let s = cfg.pick(flag, "type").context("missing --type")?;
    Ok(s.parse()?)
}

fn case_of(args: CaseArgs, cfg: &Config) -> Result<Case> {
    let datum = datum_of(args.datum, cfg)?;
    let v: Descriptor = cfg.pick(args.v, "v").context("missing --v")?.parse()?;
    let z: Descriptor = cfg.pick(args.z, "z").context("missing --z")?.parse()?;
    let height = cfg.pick_parsed(args.height, "height")?;
    Case::new(datum, v, z, height)
}

fn build_pair(case: &Case) -> Result<(Context, HWModule, HWModule)> {
    let ctx = case.context()?;
    let v = case.v.build(&ctx, case.height)?;
    let z = case.z.build(&ctx, case.height)?;
    Ok((ctx, v, z))
}

fn cmd_check(args: CaseArgs, cfg: &Config, out: Option<PathBuf>) -> Result<Outcome> {
    let case = case_of(args, cfg)?;
    let (ctx, v, z) = build_pair(&case)?;
    let verdict = TensorProduct::new(&v, &z, case.height)?.verdict(true)?;
    let rep = CheckReport::new(&case, ctx.root(), &verdict);
    Output::resolve(out, cfg, || format!("check-{}.json", case.slug())).write(report::to_json(&rep).as_bytes())?;
    Ok(if verdict.conclusion.is_defect() {
        Outcome::Defect
    } else {
        Outcome::Ok
    })
}

fn cmd_twist(args: CaseArgs, drop: Option<String>, cfg: &Config, out: Option<PathBuf>) -> Result<Outcome> {
    let datum = datum_of(args.datum.clone(), cfg)?;
    let drop_s = cfg.pick(drop, "drop").context("missing --drop")?;
    let d = RootSum::parse(&drop_s, RootDatum::new(datum).rank())?;
    let mut args = args;
    if args.height.is_none() && cfg.get("height").is_none() {
        args.height = Some(d.height());
    }
    let case = case_of(args, cfg)?;
    if d.height() > case.height {
        bail!("drop {d} lies beyond the height cutoff {}", case.height);
    }
    let (ctx, v, z) = build_pair(&case)?;
    let vz = TensorProduct::new(&v, &z, case.height)?;
    let zv = TensorProduct::new(&z, &v, case.height)?;
    let t = vz.theta(&d)?;
    let t_swap = zv.theta(&d)?;
    let m_hat = HWModule::build(&ctx, &case.z.hw, ModuleKind::Verma, d.height())?;
    let lift = vz.theta_via_verma(&m_hat, &d)?;
    let rep = TwistReportJson {
        schema: report::SCHEMA,
        command: "twist",
        case: case.to_string(),
        datum: case.datum.to_string(),
        root: ctx.root(),
        drop: d.to_string(),
        dim_singular: t.dim_singular,
        gram: report::matrix_strings(&t.gram),
        gram_rank: t.gram_rank,
        theta_vz: TwistJson::new(&t.theta),
        theta_zv: TwistJson::new(&t_swap.theta),
        pullback: report::matrix_strings(&t.pullback),
        pullback_ok: t.pullback_ok,
        verma_lift: VermaLiftJson::new(&lift, &t.theta),
    };
    Output::resolve(out, cfg, || {
        format!("twist-{}-{}.json", case.slug(), d.to_string().replace('+', "_"))
    })
    .write(report::to_json(&rep).as_bytes())?;
    Ok(if t.pullback_ok { Outcome::Ok } else { Outcome::Defect })
}

fn cmd_scan(args: CaseArgs, journal: Option<PathBuf>, cfg: &Config, out: Option<PathBuf>) -> Result<Outcome> {
    let datum = datum_of(args.datum, cfg)?;
    let v = cfg.pick(args.v, "v").context("missing --v")?;
    let z = cfg.pick(args.z, "z").context("missing --z")?;
    let height = cfg.pick_parsed(args.height, "height")?.context("missing --height")?;
    let journal = journal.or_else(|| cfg.get("journal").map(PathBuf::from));
    let rows = scan::run(datum, &v, &z, height, journal.as_deref())?;
    let mut buf = Vec::new();
    scan::write_csv(&rows, &mut buf)?;
    Output::resolve(out, cfg, || format!("scan-{datum}-h{height}.csv")).write(&buf)?;
    Ok(Outcome::Ok)
}

fn parse_q0_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|p| {
            let x: BigRational = p.trim().parse().map_err(|_| anyhow::anyhow!("invalid q0 `{p}`"))?;
            if x <= BigRational::from_integer(0.into()) {
                bail!("q0 must be positive, got {x}");
            }
            Ok(x)
        })
        .collect()
}

fn cmd_unitarity(
    datum: Option<String>,
    v: Option<String>,
    height: Option<u32>,
    q0: Option<String>,
    cfg: &Config,
    out: Option<PathBuf>,
) -> Result<Outcome> {
    let datum = datum_of(datum, cfg)?;
    let desc: Descriptor = cfg.pick(v, "v").context("missing --v")?.parse()?;
    let rd = RootDatum::new(datum);
    rd.check_weight(&desc.hw)?;
    let Some(depth) = desc.depth(&rd) else {
        bail!("`{desc}` is not a finite-dimensional irreducible module");
    };
    let height = cfg.pick_parsed(height, "height")?.unwrap_or(depth);
    let q0s = parse_q0_list(&cfg.pick(q0, "q0").unwrap_or_else(|| "11/10,2".to_string()))?;
    let ctx = Context::for_weights(rd, [&desc.hw])?;
    let m = desc.build(&ctx, height)?;
    let star_ok = StarData::new(&ctx).verify(&ctx, 3);
    let mut samples = Vec::new();
    for q in &q0s {
        let r = positivity_check(&m, q)?;
        samples.push(SampleJson::new(&r, star_adjointness(&m, q)?));
    }
    let passed = star_ok && samples.iter().all(|s| s.positive && s.star_adjoint);
    let rep = UnitarityReport {
        schema: report::SCHEMA,
        command: "unitarity",
        datum: datum.to_string(),
        root: ctx.root(),
        module: desc.to_string(),
        cutoff: height,
        star_tables_ok: star_ok,
        samples,
        passed,
    };
    let slug: String = desc
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    Output::resolve(out, cfg, || format!("unitarity-{datum}-{slug}.json")).write(report::to_json(&rep).as_bytes())?;
    Ok(if passed { Outcome::Ok } else { Outcome::Defect })
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(n) = cfg.pick_parsed(cli.jobs, "jobs")? {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure worker pool")?;
    }
    match cli.command {
        Command::Check(args) => cmd_check(args, &cfg, cli.out),
        Command::Twist { case, drop } => cmd_twist(case, drop, &cfg, cli.out),
        Command::Scan { case, journal } => cmd_scan(case, journal, &cfg, cli.out),
        Command::Unitarity { datum, v, height, q0 } => cmd_unitarity(datum, v, height, q0, &cfg, cli.out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Defect) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
