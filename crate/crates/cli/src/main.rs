//! `wallkit`: walls, chambers and dimension checks for classes on P^3.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wallkit::destabilizers::Coverage;
use wallkit::fixtures::FixtureSource;
use wallkit::ledger::{ext_residuals, ledger_checks};
use wallkit::rational::{format_rational, is_integer, parse_rational};
use wallkit::report::{ChamberOptions, ChamberReport, WallReportJson};
use wallkit::{
    classify, euler_char, euler_pairing, expected_dim, tilt_walls, ChernCharacter, Fixtures, PathDirection, Rational,
    Side, TiltWallOptions,
};

const EXIT_RUNTIME: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BOUNDED: u8 = 3;

#[derive(Parser)]
#[command(name = "wallkit", version, about = "Tilt and Bridgeland walls for classes on P^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical tilt walls on one side of the vertical wall.
    Walls(WallsArgs),
    /// Bridgeland walls crossed along a path, and the chambers between them.
    Chambers(ChamberArgs),
    /// Euler characteristic of a class, or the pairing of two classes.
    Chi(ChiArgs),
    /// Name the object a twisted class belongs to.
    Classify(ClassifyArgs),
    /// Recompute the dimension checklist from the fixture tables.
    Ledger(LedgerArgs),
    /// Draw the chamber picture as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Outward,
    Inward,
}

fn chern_arg(text: &str) -> Result<ChernCharacter, String> {
    ChernCharacter::parse(text).map_err(|e| e.to_string())
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Args)]
struct Enumeration {
    /// Four comma separated rationals `ch0,ch1,ch2,ch3`.
    #[arg(long, value_parser = chern_arg, allow_hyphen_values = true)]
    chern: ChernCharacter,
    /// Cap on the rank searched on each ray; output is marked truncated if it bites.
    #[arg(long)]
    rmax: Option<u64>,
    /// Exit 0 even when the list of walls is not certified complete.
    #[arg(long)]
    allow_bounded: bool,
}

#[derive(Args)]
struct WallsArgs {
    #[command(flatten)]
    enumeration: Enumeration,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PathArgs {
    #[command(flatten)]
    enumeration: Enumeration,
    /// Parameter of the central charge, positive.
    #[arg(long, value_parser = rational_arg, default_value = "1/3", allow_hyphen_values = true)]
    s: Rational,
    /// The path is `nu(v) = epsilon`.
    #[arg(long, value_parser = rational_arg, default_value = "1/100", allow_hyphen_values = true)]
    epsilon: Rational,
    #[arg(long, value_enum, default_value = "outward")]
    direction: DirectionArg,
    /// JSON fixture file; defaults to $WALLKIT_FIXTURES, then the built-in copy.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Args)]
struct ChamberArgs {
    #[command(flatten)]
    path: PathArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    path: PathArgs,
    /// Write the SVG here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ChiArgs {
    #[arg(long, value_parser = chern_arg, allow_hyphen_values = true)]
    chern: Option<ChernCharacter>,
    /// `chi(A, B) = sum (-1)^i ext^i(A, B)`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], value_parser = chern_arg, allow_hyphen_values = true)]
    pair: Option<Vec<ChernCharacter>>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// The class twisted by `beta`.
    #[arg(long, value_parser = chern_arg, allow_hyphen_values = true)]
    chern: ChernCharacter,
    /// Integer twist.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct LedgerArgs {
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

/// Errors that are the user's input rather than the computation.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(e: impl std::fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

fn load_fixtures(path: Option<&PathBuf>) -> anyhow::Result<Fixtures> {
    let (fixtures, source) = Fixtures::load(path.map(|p| p.as_path())).map_err(input_error)?;
    if let FixtureSource::Environment(p) = &source {
        eprintln!("using fixtures from {}", p.display());
    }
    Ok(fixtures)
}

fn options(e: &Enumeration, side: Side) -> TiltWallOptions {
    TiltWallOptions {
        side: Some(side),
        r_max: e.rmax,
    }
}

fn bounded_exit(certified: bool, allow: bool) -> ExitCode {
    if certified || allow {
        ExitCode::SUCCESS
    } else {
        eprintln!("wall list is not certified complete; pass --allow-bounded to accept it");
        ExitCode::from(EXIT_BOUNDED)
    }
}

fn coverage_text(c: &Coverage) -> String {
    match c {
        Coverage::NoSplitting => "no walls (Q <= 0)".into(),
        Coverage::IntegerRay { beta0 } => format!("every wall crosses beta = {beta0}"),
        Coverage::BmtDisc => "remaining region inside the BMT disc".into(),
        Coverage::BmtBoundary { ray } => format!("BMT boundary searched at beta = {}", format_rational(ray)),
        Coverage::Incomplete => "incomplete".into(),
    }
}

fn walls_table(r: &WallReportJson) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "v = {}  side = {:?}", r.input.chern, r.input.side);
    if let Some(b) = &r.vertical_wall {
        let _ = writeln!(out, "vertical wall: beta = {}", format_rational(b));
    }
    let _ = writeln!(
        out,
        "certified: {} ({}){}",
        r.certified,
        coverage_text(&r.coverage),
        if r.truncated { ", rank cap reached" } else { "" }
    );
    let _ = writeln!(out, "{:>3}  {:>10}  {:>10}  {:>6}  {:>8}  {:<22} {:<22}", "#", "center", "radius^2", "ray", "alpha^2", "sub", "quotient");
    for (i, w) in r.walls.iter().enumerate() {
        let center = w.wall.center().map_or("-".into(), format_rational);
        let radius = w.wall.radius_sq().map_or("-".into(), format_rational);
        for (j, c) in w.candidates.iter().enumerate() {
            let (idx, ce, ra) = if j == 0 {
                ((i + 1).to_string(), center.clone(), radius.clone())
            } else {
                (String::new(), String::new(), String::new())
            };
            let _ = writeln!(
                out,
                "{idx:>3}  {ce:>10}  {ra:>10}  {:>6}  {:>8}  {:<22} {:<22}{}",
                format_rational(&c.ray),
                format_rational(&c.alpha_sq),
                c.sub.to_string(),
                c.quotient.to_string(),
                if c.flipped { "  (of -v)" } else { "" }
            );
        }
        for p in &w.pairs {
            let _ = writeln!(out, "{:>44}e = {:<6} {} -> E -> {}", "", format_rational(&p.e), p.sub_name, p.quotient_name);
        }
    }
    out
}

fn chambers_table(r: &ChamberReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "v = {}  s = {}  path nu(v) = {} ({:?})",
        r.v,
        format_rational(&r.s),
        format_rational(&r.epsilon),
        r.direction
    );
    let _ = writeln!(out, "certified: {}", r.certified);
    for (i, chamber) in r.chambers.iter().enumerate() {
        let _ = writeln!(out, "chamber {}: {}", chamber.index, chamber.model_label);
        if let Some(w) = r.walls.get(i) {
            let _ = writeln!(
                out,
                "  wall ({}) at alpha = {:.9}, beta = {:.9}, tilt wall center {}",
                w.index,
                w.crossing.alpha,
                w.crossing.beta,
                w.tilt_wall.center().map_or("-".into(), format_rational)
            );
            for p in &w.pairs {
                let _ = writeln!(out, "    {} -> E -> {}", p.sub_name, p.quotient_name);
            }
        }
    }
    for p in &r.never_crossed {
        let _ = writeln!(out, "never crossed: {} -> E -> {}", p.sub_name, p.quotient_name);
    }
    out
}

fn chamber_report(args: &PathArgs) -> anyhow::Result<(ChamberReport, wallkit::TiltWalls)> {
    let fixtures = load_fixtures(args.fixtures.as_ref())?;
    let options = ChamberOptions {
        s: args.s.clone(),
        epsilon: args.epsilon.clone(),
        direction: match args.direction {
            DirectionArg::Outward => PathDirection::Outward,
            DirectionArg::Inward => PathDirection::Inward,
        },
        r_max: args.enumeration.rmax,
    };
    let (report, tw, _) =
        ChamberReport::compute(&args.enumeration.chern, &options, &fixtures).map_err(input_error)?;
    Ok((report, tw))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Walls(args) => {
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let e = &args.enumeration;
            let tw = tilt_walls(&e.chern, &options(e, side)).map_err(input_error)?;
            let report = WallReportJson::from_tilt_walls(&tw, e.rmax);
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Table => print!("{}", walls_table(&report)),
                Format::Svg => print!("{}", wallkit::svg::walls_svg(&tw)),
            }
            Ok(bounded_exit(report.certified, e.allow_bounded))
        }
        Command::Chambers(args) => {
            let (report, tw) = chamber_report(&args.path)?;
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Table => print!("{}", chambers_table(&report)),
                Format::Svg => print!("{}", wallkit::svg::chamber_svg(&report, &tw)),
            }
            Ok(bounded_exit(report.certified, args.path.enumeration.allow_bounded))
        }
        Command::Plot(args) => {
            let (report, tw) = chamber_report(&args.path)?;
            let svg = wallkit::svg::chamber_svg(&report, &tw);
            match &args.output {
                Some(path) => std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{svg}"),
            }
            Ok(bounded_exit(report.certified, args.path.enumeration.allow_bounded))
        }
        Command::Chi(args) => {
            let value = match (&args.chern, &args.pair) {
                (Some(v), _) => {
                    println!("chi = {}", format_rational(&euler_char(v)));
                    println!("expected dimension = {}", format_rational(&expected_dim(v)));
                    return Ok(ExitCode::SUCCESS);
                }
                (None, Some(pair)) => euler_pairing(&pair[0], &pair[1]),
                (None, None) => bail!(InputError("pass --chern or --pair".into())),
            };
            println!("{}", format_rational(&value));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify(args) => {
            if !is_integer(&args.beta) {
                return Err(input_error(format!("--beta must be an integer, got {}", format_rational(&args.beta))));
            }
            let beta: i64 = args
                .beta
                .to_integer()
                .try_into()
                .map_err(|_| input_error("--beta out of range"))?;
            let label = classify(&args.chern, beta);
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&label)?),
                _ => println!("{}", label.name(false)),
            }
            Ok(if label.is_classified() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_RUNTIME) })
        }
        Command::Ledger(args) => {
            let fixtures = load_fixtures(args.fixtures.as_ref())?;
            let checks = ledger_checks(&fixtures);
            let residuals = ext_residuals(&fixtures);
            let ok = checks.iter().all(|c| c.passed());
            match args.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "checks": checks,
                        "passed": ok,
                        "residuals": residuals,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                _ => {
                    for c in &checks {
                        let got = c.computed.map_or("missing".into(), |x| x.to_string());
                        let mark = if c.passed() { "ok  " } else { "FAIL" };
                        println!("{mark} {:<72} expected {:>3}, got {got}", c.name, c.expected);
                    }
                    println!();
                    println!("residual chi(F,G) + ext^1(F,G) = hom + ext^2 - ext^3 per fixture row (reported, not checked):");
                    for r in &residuals {
                        let cond = r.condition.as_deref().map(|c| format!(" [{c}]")).unwrap_or_default();
                        println!(
                            "  ({}, {}){cond}: chi = {}, ext^1 = {}, residual = {}",
                            r.pair.0,
                            r.pair.1,
                            format_rational(&r.chi),
                            r.ext1,
                            format_rational(&r.residual)
                        );
                    }
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_RUNTIME) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::from(EXIT_RUNTIME)
            }
        }
    }
}
