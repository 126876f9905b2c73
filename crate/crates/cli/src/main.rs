//! `hms`: build, validate and cross-check the two sides of the mirror
//! correspondence for toric del Pezzo surfaces.
//!
//! Machine-readable JSON goes to stdout, human summaries to stderr. Exit
//! codes: 0 success, 1 verification failure, 2 usage error. `HMS_THREADS`
//! caps the worker pool (0 or unset picks the hardware default).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use hms_core::catalog::{
    euler_characteristic, load_surface, newton_polytope, normalized_volume, validate_fan, Surface,
};
use hms_core::critical::{find_critical_points, morse_report, MorseTolerances};
use hms_core::defaults::{default_bl3_config, default_coefficients, default_solver_options};
use hms_core::laurent::build_superpotential;
use hms_core::render::{render_torus, render_trajectories, RenderSpec};
use hms_core::torus::TorusConfig;
use hms_core::vanishing::VanishingPath;

mod reports;
use reports::*;

#[derive(Parser)]
#[command(name = "hms", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of the five toric del Pezzo surfaces.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Fan validation.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Mirror superpotential numerics.
    Mirror {
        #[command(subcommand)]
        cmd: MirrorCmd,
    },
    /// The exceptional-collection algebra.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// The directed Fukaya category of a torus configuration.
    Fukaya {
        #[command(subcommand)]
        cmd: FukayaCmd,
    },
    /// Configuration search.
    Solve {
        #[command(subcommand)]
        cmd: SolveCmd,
    },
    /// Mirror-correspondence certificates.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// SVG rendering.
    Render {
        #[command(subcommand)]
        cmd: RenderCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Print every catalog fan.
    List,
}

#[derive(Subcommand)]
enum FanCmd {
    /// Validate a catalog fan and print the report.
    Validate { name: Surface },
}

#[derive(Subcommand)]
enum MirrorCmd {
    /// Find the critical points of the superpotential.
    CriticalPoints(CriticalPointsArgs),
    /// Trace branch points along one straight vanishing path.
    BranchTrace(BranchTraceArgs),
}

#[derive(Args)]
struct CriticalPointsArgs {
    name: Surface,
    /// Coefficients `re,im;re,im;...` in canonical ray order (see `catalog
    /// list`); defaults to the shipped generic vector.
    #[arg(long, value_parser = parse_coeffs)]
    coeffs: Option<CoeffVec>,
    /// Scrambling seed for the quasi-random starts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON only (the default already prints JSON to stdout).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BranchTraceArgs {
    name: Surface,
    /// 1-based index of the target critical value, in canonical order
    /// (sorted by real part, then imaginary part).
    #[arg(long)]
    path: usize,
    /// Write an SVG of the four root trajectories.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Samples along the path before adaptive refinement.
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Construct the blow-up algebra from the composition formulas.
    Build,
    /// Diff the formula algebra against the published tables.
    DiffAppendix,
    /// Exhaustive associativity check of the formula algebra.
    Check,
}

#[derive(Subcommand)]
enum FukayaCmd {
    /// Validate a torus configuration file.
    Validate(ConfigArg),
    /// Build the directed Fukaya category and print its algebra.
    Build {
        #[command(flatten)]
        config: ConfigArg,
        /// Also write the algebra JSON to a file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the triangles of one composition cell.
    Triangles {
        #[command(flatten)]
        config: ConfigArg,
        /// Chain `i,j,k` of 1-based cycle indices.
        #[arg(long, value_parser = parse_triple)]
        triple: Triple,
        /// Index into the intersection basis of (i, j).
        #[arg(long)]
        p1: usize,
        /// Index into the intersection basis of (j, k).
        #[arg(long)]
        p2: usize,
    },
}

#[derive(Args, Clone)]
struct ConfigArg {
    /// Path to a TorusConfig JSON file, or `default` for the shipped
    /// three-point blow-up configuration.
    #[arg(long, default_value = "default")]
    config: String,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Search for a torus configuration matching the blow-up algebra.
    Config {
        #[arg(long, default_value = "Bl3P2")]
        surface: Surface,
        /// Class-entry bound for the homology-class stage.
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// Offset denominator for the offset stage.
        #[arg(long, default_value_t = 12)]
        denominator: u32,
        /// Output file for the found configuration.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Certify the isomorphism between the Fukaya presentation and the
    /// exceptional-collection algebra.
    Hms {
        #[arg(long, default_value = "Bl3P2")]
        surface: Surface,
        #[arg(long, default_value = "default")]
        config: String,
        /// Write the certificate JSON to a file.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Draw a torus configuration in the square fundamental domain.
    Torus {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        svg: PathBuf,
        /// Label intersection points with their certificate labels.
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Clone)]
struct CoeffVec(Vec<Complex64>);

fn parse_coeffs(s: &str) -> Result<CoeffVec, String> {
    let mut out = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (re, im) = match part.split_once(',') {
            Some((re, im)) => (re.trim(), im.trim()),
            None => (part, "0"),
        };
        let re: f64 = re.parse().map_err(|_| format!("bad coefficient `{part}`"))?;
        let im: f64 = im.parse().map_err(|_| format!("bad coefficient `{part}`"))?;
        out.push(Complex64::new(re, im));
    }
    if out.is_empty() {
        return Err("empty coefficient list".into());
    }
    Ok(CoeffVec(out))
}

#[derive(Clone, Copy)]
struct Triple(usize, usize, usize);

fn parse_triple(s: &str) -> Result<Triple, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected `i,j,k`".into());
    }
    let idx: Vec<usize> = parts
        .iter()
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad index `{p}`")))
        .collect::<Result<_, _>>()?;
    if !(idx[0] >= 1 && idx[0] < idx[1] && idx[1] < idx[2]) {
        return Err("indices must be 1-based and strictly increasing".into());
    }
    Ok(Triple(idx[0], idx[1], idx[2]))
}

fn load_config(spec: &str) -> Result<TorusConfig, CliError> {
    if spec == "default" {
        return Ok(default_bl3_config());
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Usage(format!("cannot read config `{spec}`: {e}")))?;
    TorusConfig::from_json_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse config `{spec}`: {e}")))
}

/// Failures that map to exit codes: usage errors exit 2, verification
/// failures exit 1.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failure: {m}"),
        }
    }
}

fn main() -> ExitCode {
    // HMS_THREADS caps parallelism; 0 or unset picks the default.
    if let Ok(threads) = std::env::var("HMS_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Verification(_) => ExitCode::from(1),
                CliError::Usage(_) => ExitCode::from(2),
            }
        }
    }
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Catalog { cmd: CatalogCmd::List } => {
            let fans: Vec<serde_json::Value> = Surface::ALL
                .iter()
                .map(|&s| {
                    let fan = load_surface(s);
                    serde_json::json!({
                        "name": fan.name,
                        "rays": fan.ray_vectors(),
                        "euler_characteristic": euler_characteristic(&fan).ok(),
                        "normalized_volume": newton_polytope(&fan).map(|p| normalized_volume(&p)).ok(),
                    })
                })
                .collect();
            emit(&serde_json::json!({ "surfaces": fans }));
            eprintln!("{} catalog surfaces", Surface::ALL.len());
            Ok(())
        }
        Command::Fan { cmd: FanCmd::Validate { name } } => {
            let report = validate_fan(&load_surface(name));
            emit(&serde_json::to_value(&report).expect("serializable"));
            eprintln!(
                "{name}: {}",
                if report.all_pass() { "all checks pass" } else { "checks failed" }
            );
            Ok(())
        }
        Command::Mirror { cmd } => run_mirror(cmd),
        Command::Algebra { cmd } => run_algebra(cmd),
        Command::Fukaya { cmd } => run_fukaya(cmd),
        Command::Solve { cmd } => run_solve(cmd),
        Command::Verify { cmd } => run_verify(cmd),
        Command::Render { cmd } => run_render(cmd),
    }
}

fn run_mirror(cmd: MirrorCmd) -> Result<(), CliError> {
    match cmd {
        MirrorCmd::CriticalPoints(args) => {
            let fan = load_surface(args.name);
            let coeffs = args
                .coeffs
                .map(|c| c.0)
                .unwrap_or_else(|| default_coefficients(args.name));
            let w = build_superpotential(&fan, &coeffs)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut opts = default_solver_options();
            opts.seed = args.seed;
            let points = find_critical_points(&w, &opts)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            let morse = morse_report(&points, &MorseTolerances::default());
            emit(&critical_points_json(args.name, &coeffs, &points, &morse));
            eprintln!(
                "{}: {} critical points, morse {}",
                args.name,
                points.len(),
                if morse.pass { "pass" } else { "FAIL" }
            );
            Ok(())
        }
        MirrorCmd::BranchTrace(args) => {
            let fan = load_surface(args.name);
            let coeffs = default_coefficients(args.name);
            let w = build_superpotential(&fan, &coeffs)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let points = find_critical_points(&w, &default_solver_options())
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if args.path == 0 || args.path > points.len() {
                return Err(CliError::Usage(format!(
                    "--path must be in 1..={}",
                    points.len()
                )));
            }
            let path = VanishingPath {
                index: args.path,
                target: points[args.path - 1].value,
            };
            let traj = hms_core::branch::trace_branch_points(&w, &path, args.steps)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if let Some(svg_path) = &args.svg {
                let svg = render_trajectories(&traj, &RenderSpec::default());
                std::fs::write(svg_path, svg)
                    .map_err(|e| CliError::Usage(format!("cannot write svg: {e}")))?;
            }
            emit(&branch_trace_json(args.name, args.path, &path, &traj));
            eprintln!(
                "path {}: collision = {}, final min gap {:.3e}",
                args.path, traj.collision, traj.final_min_gap
            );
            Ok(())
        }
    }
}

fn run_algebra(cmd: AlgebraCmd) -> Result<(), CliError> {
    use hms_core::algebra::{check_directed_associativity, diff_algebras};
    use hms_core::exceptional::{appendix_tables, build_blowup_algebra};
    match cmd {
        AlgebraCmd::Build => {
            let alg = build_blowup_algebra();
            emit(&alg.to_json());
            eprintln!("blow-up algebra: total dimension {}", alg.total_dimension());
            Ok(())
        }
        AlgebraCmd::DiffAppendix => {
            let report = diff_algebras(&build_blowup_algebra(), &appendix_tables())
                .map_err(|e| CliError::Verification(e.to_string()))?;
            emit(&serde_json::to_value(&report).expect("serializable"));
            eprintln!("{} mismatching cells", report.mismatches.len());
            Ok(())
        }
        AlgebraCmd::Check => {
            let violations = check_directed_associativity(&build_blowup_algebra());
            emit(&serde_json::json!({ "violations": violations }));
            if violations.is_empty() {
                eprintln!("associativity holds on every composable chain");
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{} associativity violations",
                    violations.len()
                )))
            }
        }
    }
}

fn run_fukaya(cmd: FukayaCmd) -> Result<(), CliError> {
    use hms_core::fukaya::{build_category, check_a_infinity};
    use hms_core::torus::{enumerate_triangles, validate_config};
    match cmd {
        FukayaCmd::Validate(cfg_arg) => {
            let cfg = load_config(&cfg_arg.config)?;
            let report = validate_config(&cfg);
            emit(&serde_json::to_value(&report).expect("serializable"));
            eprintln!(
                "configuration {}",
                if report.pass { "valid" } else { "INVALID" }
            );
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Verification("invalid configuration".into()))
            }
        }
        FukayaCmd::Build { config, json } => {
            let cfg = load_config(&config.config)?;
            let fp = build_category(&cfg).map_err(|e| CliError::Verification(e.to_string()))?;
            let violations = check_a_infinity(&fp);
            if !violations.is_empty() {
                return Err(CliError::Verification(format!(
                    "{} associativity violations",
                    violations.len()
                )));
            }
            let value = fp.algebra.to_json();
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| CliError::Usage(format!("cannot write json: {e}")))?;
            }
            emit(&value);
            eprintln!(
                "fukaya category: total dimension {}",
                fp.algebra.total_dimension()
            );
            Ok(())
        }
        FukayaCmd::Triangles { config, triple, p1, p2 } => {
            let cfg = load_config(&config.config)?;
            let Triple(i, j, k) = triple;
            let groups = enumerate_triangles(&cfg, (i - 1, j - 1, k - 1), p1, p2)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&triangles_json((i, j, k), p1, p2, &groups));
            eprintln!(
                "{} triangles across {} output points",
                groups.by_output.iter().map(Vec::len).sum::<usize>(),
                groups.output_points.len()
            );
            Ok(())
        }
    }
}

fn run_solve(cmd: SolveCmd) -> Result<(), CliError> {
    use hms_core::exceptional::build_blowup_algebra;
    use hms_core::solver::{solve_classes, solve_offsets_dots, SearchSpace};
    match cmd {
        SolveCmd::Config { surface, bound, denominator, out } => {
            if surface != Surface::Bl3P2 {
                return Err(CliError::Usage(
                    "configuration solving is implemented for Bl3P2".into(),
                ));
            }
            let target = build_blowup_algebra();
            let space = SearchSpace {
                class_bound: bound,
                offset_denominator: denominator,
                ..SearchSpace::default()
            };
            let tuples = solve_classes(&target.hom_dimensions(), &space);
            let classes = tuples
                .first()
                .ok_or_else(|| CliError::Verification("no class tuple within bound".into()))?;
            eprintln!("classes: {classes:?}");
            let cfg = solve_offsets_dots(classes, &target, &space)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            let value = cfg.to_json();
            if let Some(path) = &out {
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| CliError::Usage(format!("cannot write config: {e}")))?;
            }
            emit(&value);
            eprintln!("configuration found");
            Ok(())
        }
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<(), CliError> {
    use hms_core::exceptional::build_blowup_algebra;
    use hms_core::fukaya::build_category;
    use hms_core::verify::{find_signed_equivalence, verify_certificate};
    match cmd {
        VerifyCmd::Hms { surface, config, emit_certificate } => {
            if surface != Surface::Bl3P2 {
                return Err(CliError::Usage(
                    "the certificate pipeline is implemented for Bl3P2".into(),
                ));
            }
            let cfg = load_config(&config)?;
            let fp = build_category(&cfg).map_err(|e| CliError::Verification(e.to_string()))?;
            let target = build_blowup_algebra();
            let eq = find_signed_equivalence(&fp.algebra, &target)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            let result = verify_certificate(&fp.algebra, &target, &eq.certificate)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if !result.pass {
                return Err(CliError::Verification(format!(
                    "certificate failed at {:?}",
                    result.first_failure
                )));
            }
            let value = eq.certificate.to_json();
            if let Some(path) = &emit_certificate {
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| CliError::Usage(format!("cannot write certificate: {e}")))?;
            }
            emit(&value);
            eprintln!(
                "certificate verified ({} nodes expanded)",
                eq.stats.nodes_expanded
            );
            Ok(())
        }
    }
}

fn run_render(cmd: RenderCmd) -> Result<(), CliError> {
    match cmd {
        RenderCmd::Torus { config, svg, labels } => {
            let cfg = load_config(&config.config)?;
            let cert = if labels {
                use hms_core::exceptional::build_blowup_algebra;
                use hms_core::fukaya::build_category;
                use hms_core::verify::find_signed_equivalence;
                build_category(&cfg)
                    .ok()
                    .and_then(|fp| find_signed_equivalence(&fp.algebra, &build_blowup_algebra()).ok())
                    .map(|eq| eq.certificate)
            } else {
                None
            };
            let spec = RenderSpec {
                label_points: labels,
                ..RenderSpec::default()
            };
            let doc = render_torus(&cfg, &spec, cert.as_ref());
            std::fs::write(&svg, &doc)
                .map_err(|e| CliError::Usage(format!("cannot write svg: {e}")))?;
            emit(&serde_json::json!({
                "svg": svg.display().to_string(),
                "bytes": doc.len(),
                "cycles": cfg.cycles.len(),
                "punctures": cfg.punctures.len(),
            }));
            eprintln!("wrote {}", svg.display());
            Ok(())
        }
    }
}
