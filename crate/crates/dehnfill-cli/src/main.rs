//! Command-line front end for the `dehnfill` library.
//!
//! Subcommands: `classify`, `canopy`, `phenomena`, `line`, `survey`.
//! Exit codes: 0 on success, 2 on invalid input, 3 for a knot failing the
//! admissibility conditions when `--force` was not given.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use dehnfill::canopy::{self, CanopyOptions};
use dehnfill::phenomena::{self, FlipsOld, Identifications};
use dehnfill::{Int, Slope, TorusKnot};

#[derive(Parser)]
#[command(
    name = "dehnfill",
    version,
    about = "Dehn filling classification and Heegaard canopies for torus knot exteriors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the manifold obtained by filling one slope
    Classify(KnotSlopeArgs),
    /// Build the canopy of the oriented Heegaard tree of a filled manifold
    Canopy(CanopyArgs),
    /// Report the Heegaard phenomena occurring at one filling slope
    Phenomena(KnotSlopeArgs),
    /// Enumerate the line of slopes meeting a given slope once
    Line(LineArgs),
    /// Classify every slope in a bounded range and tabulate the cases
    Survey(SurveyArgs),
}

#[derive(Args)]
struct KnotArgs {
    /// First torus knot parameter
    #[arg(short)]
    p: String,
    /// Second torus knot parameter
    #[arg(short)]
    q: String,
    /// Proceed even if the knot fails the admissibility conditions
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct KnotSlopeArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Filling slope, written r/s (for example 64/1, -1/1, 1/0)
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
    /// Emit JSON instead of the human-readable report
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CanopyArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Filling slope, written r/s
    #[arg(long, allow_hyphen_values = true)]
    slope: String,
    /// Emit the canopy as JSON on stdout
    #[arg(long)]
    json: bool,
    /// Write the canopy as a DOT graph to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<String>,
    /// Materialize the stabilization chain instead of eliding it
    #[arg(long)]
    expand_chain: bool,
}

#[derive(Args)]
struct LineArgs {
    /// Base slope of the line, written r/s
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Bound on max(|r|, s) for the enumerated slopes
    #[arg(long)]
    height: String,
    /// Emit a JSON array instead of one slope per line
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Bound on |r|
    #[arg(long)]
    rmax: String,
    /// Bound on s
    #[arg(long)]
    smax: String,
    /// Write the table as CSV to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    csv: Option<String>,
    /// Emit JSON lines plus a histogram object instead of CSV text
    #[arg(long)]
    json: bool,
}

enum CliError {
    /// Exit 2: malformed or out-of-domain input, or an unwritable path.
    Invalid(String),
    /// Exit 3: the knot fails admissibility and --force was not given.
    Inadmissible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Inadmissible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Inadmissible(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dehnfill: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify(args) => classify(args),
        Command::Canopy(args) => canopy_cmd(args),
        Command::Phenomena(args) => phenomena_cmd(args),
        Command::Line(args) => line_cmd(args),
        Command::Survey(args) => survey_cmd(args),
    }
}

fn parse_int(text: &str, what: &str) -> Result<Int, CliError> {
    Int::from_str(text).map_err(|_| CliError::Invalid(format!("{what} is not an integer: {text:?}")))
}

fn parse_knot(args: &KnotArgs) -> Result<TorusKnot, CliError> {
    let p = parse_int(&args.p, "-p")?;
    let q = parse_int(&args.q, "-q")?;
    TorusKnot::new(p, q).map_err(|e| CliError::Invalid(e.to_string()))
}

fn parse_slope(text: &str) -> Result<Slope, CliError> {
    Slope::from_str(text).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Gate on the admissibility conditions unless forcing was requested.
fn check_admissible(knot: &TorusKnot, force: bool) -> Result<(), CliError> {
    if force || knot.is_admissible() {
        return Ok(());
    }
    let err = canopy::filling_case(knot, &Slope::infinity())
        .expect_err("inadmissible knots fail the gate");
    Err(CliError::Inadmissible(format!("{err} (use --force to proceed)")))
}

fn write_file(path: &str, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Invalid(format!("cannot write {path}: {e}")))
}

fn classify(args: KnotSlopeArgs) -> Result<(), CliError> {
    let knot = parse_knot(&args.knot)?;
    let alpha = parse_slope(&args.slope)?;
    check_admissible(&knot, args.knot.force)?;
    let filled = knot.moser_classify(&alpha);
    if args.json {
        println!("{}", filled.to_json());
    } else {
        println!("{filled}");
        println!("a = {}", filled.a());
        println!("b = {}", filled.b_raw());
        match filled.b_normalized() {
            Some(b) => println!("b mod |a| = {b}"),
            None => println!("b mod |a| = undefined (a = 0)"),
        }
        println!("longitude = {}", filled.longitude());
    }
    Ok(())
}

fn canopy_cmd(args: CanopyArgs) -> Result<(), CliError> {
    let knot = parse_knot(&args.knot)?;
    let alpha = parse_slope(&args.slope)?;
    check_admissible(&knot, args.knot.force)?;
    let options = CanopyOptions { force: args.knot.force, expand_chain: args.expand_chain };
    let graph = canopy::build_canopy_with(&knot, &alpha, &options)
        .map_err(|e| CliError::Inadmissible(e.to_string()))?;
    if let Some(path) = &args.dot {
        write_file(path, &graph.to_dot())?;
    }
    if args.json {
        println!("{}", graph.to_json());
    } else {
        let case = graph.case().map(|c| c.name()).unwrap_or("exterior");
        println!("case: {case}");
        println!(
            "certainty: {}",
            match graph.certainty() {
                canopy::Certainty::Proven => "proven",
                canopy::Certainty::Conjectured => "conjectured",
            }
        );
        println!(
            "vertices: {}, edges: {}, components: {}",
            graph.vertex_count(),
            graph.edge_count(),
            graph.component_count()
        );
        println!("min leaf genus: {}", graph.min_leaf_genus());
        let leaves: Vec<String> = graph.leaves().iter().map(|l| l.dot_label()).collect();
        println!("leaves: {}", leaves.join(", "));
        if let Some((lo, hi)) = graph.chain_span() {
            println!("stabilization chain elided: g={lo}..{hi}");
        }
    }
    Ok(())
}

fn phenomena_cmd(args: KnotSlopeArgs) -> Result<(), CliError> {
    let knot = parse_knot(&args.knot)?;
    let alpha = parse_slope(&args.slope)?;
    check_admissible(&knot, args.knot.force)?;
    let report = phenomena::report_forced(&knot, &alpha);
    if args.json {
        println!("{}", report.to_json());
        return Ok(());
    }
    println!("slope: {}", report.slope);
    println!("case: {}", report.case.name());
    println!("genus: {} -> {}", report.genus_before, report.genus_after);
    let names = report.new_surface_names();
    println!(
        "new surfaces: {}",
        if names.is_empty() { "(none)".to_string() } else { names.join(", ") }
    );
    let destab: Vec<String> = report.destabilized_old.iter().cloned().collect();
    println!(
        "destabilized: {}",
        if destab.is_empty() { "(none)".to_string() } else { destab.join(", ") }
    );
    match &report.identifications {
        Identifications::Unknown => println!("identifications: unknown"),
        Identifications::Classes(cs) => {
            let rendered: Vec<String> = cs
                .iter()
                .map(|c| format!("{{{}}}", c.iter().cloned().collect::<Vec<_>>().join(",")))
                .collect();
            println!("identifications: {}", rendered.join(" "));
        }
    }
    match &report.flips_old {
        FlipsOld::Unknown => println!("flips: unknown"),
        FlipsOld::Known(map) => {
            let rendered: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}: {}", if *v { "yes" } else { "no" }))
                .collect();
            println!("flips: {}", rendered.join(", "));
        }
    }
    println!("trichotomy: {}", report.trichotomy);
    println!(
        "in N_X: {}, in H_X: {}",
        if report.in_nx { "yes" } else { "no" },
        if report.in_hx { "yes" } else { "no" }
    );
    Ok(())
}

fn line_cmd(args: LineArgs) -> Result<(), CliError> {
    let alpha = parse_slope(&args.alpha)?;
    let height = parse_int(&args.height, "--height")?;
    let line = alpha
        .enumerate_line(&height)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    if args.json {
        let rendered: Vec<String> = line.iter().map(|b| format!("\"{b}\"")).collect();
        println!("[{}]", rendered.join(","));
    } else {
        for beta in line {
            println!("{beta}");
        }
    }
    Ok(())
}

fn survey_cmd(args: SurveyArgs) -> Result<(), CliError> {
    let knot = parse_knot(&args.knot)?;
    let rmax = parse_int(&args.rmax, "--rmax")?;
    let smax = parse_int(&args.smax, "--smax")?;
    check_admissible(&knot, args.knot.force)?;
    let survey = phenomena::survey_forced(&knot, &rmax, &smax)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    if args.json {
        print!("{}", survey.to_json_lines());
        let entries: Vec<String> = dehnfill::FillingCase::ALL
            .iter()
            .map(|c| {
                format!("\"{}\":{}", c.name(), survey.histogram().get(c).copied().unwrap_or(0))
            })
            .collect();
        println!("{{\"histogram\":{{{}}}}}", entries.join(","));
        return Ok(());
    }
    if let Some(path) = &args.csv {
        write_file(path, &survey.to_csv())?;
    } else {
        print!("{}", survey.to_csv());
        println!();
    }
    print!("{}", survey.histogram_lines());
    Ok(())
}
