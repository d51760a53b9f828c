//! Command-line front end: dimension queries, parameter-grid tables,
//! oracle verification and class printing, with human, JSON and CSV
//! output.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 value computed but
//! the vanishing hypothesis does not hold (so no dimension is claimed).

use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Map, Value};

use vortexdim::{
    canonical_class, grid_points, kahler_class, quantum_line_class, table_rows, tangent_chern,
    verify_reduced_ring, vortex_dimension_via, DimensionReport, Method, ModuliParams, TableRow,
    DEFAULT_GRID_CAP,
};

#[derive(Parser)]
#[command(
    name = "vortexdim",
    version,
    about = "Exact Hilbert-space dimensions for quantized vortex moduli spaces on Riemann surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the quantum Hilbert space for one (genus, vortices, area) triple
    Dimension(DimensionArgs),
    /// Evaluate both computation routes over an integer parameter grid
    Table(TableArgs),
    /// Cross-check the reduced ring against the brute-force tensor-ring oracle
    Verify(VerifyArgs),
    /// Print the Kahler, line-bundle, tangent and canonical classes
    Classes(ClassesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Characteristic-class evaluation in the reduced cohomology ring
    HrrRing,
    /// Closed-form binomial C(k, N)
    ClosedForm,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::HrrRing => Method::HrrRing,
            MethodArg::ClosedForm => Method::ClosedForm,
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("area_input").required(true).args(["area_quanta", "area"])))]
struct DimensionArgs {
    /// Genus of the surface
    #[arg(short = 'g', long)]
    genus: u32,
    /// Number of vortices
    #[arg(short = 'n', long)]
    vortices: u32,
    /// Area quanta k = A/4pi, as an integer or a rational like 7/2
    #[arg(short = 'k', long)]
    area_quanta: Option<String>,
    /// Surface area as a multiple of 4pi, written like 4pi*5
    #[arg(long)]
    area: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Force a single computation route instead of cross-checking both
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
}

#[derive(Args)]
struct TableArgs {
    /// Genus range, inclusive: `0..2` or a single value
    #[arg(short = 'g', long, value_parser = parse_range)]
    genus: (u64, u64),
    /// Vortex-number range, inclusive
    #[arg(short = 'n', long, value_parser = parse_range)]
    vortices: (u64, u64),
    /// Area-quanta range (integers), inclusive
    #[arg(short = 'k', long, value_parser = parse_range)]
    area_quanta: (u64, u64),
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Maximum number of grid points
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    max_grid: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short = 'g', long)]
    genus: u32,
    #[arg(short = 'n', long)]
    vortices: u32,
}

#[derive(Args)]
#[command(group(ArgGroup::new("area_input").required(true).args(["area_quanta", "area"])))]
struct ClassesArgs {
    #[arg(short = 'g', long)]
    genus: u32,
    #[arg(short = 'n', long)]
    vortices: u32,
    #[arg(short = 'k', long)]
    area_quanta: Option<String>,
    #[arg(long)]
    area: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn main() -> ExitCode {
    // behave like a normal unix tool when the read end of a pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Dimension(args) => cmd_dimension(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Classes(args) => cmd_classes(args),
    }
}

// -- argument parsing ---------------------------------------------------

/// Inclusive integer range: `a..b`, `a..=b` or a single `a`.
fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse_one(a)?, parse_one(b)?))
        }
        None => {
            let v = parse_one(s)?;
            Ok((v, v))
        }
    }
}

/// Resolves k from `--area-quanta` (canonical) or `--area 4pi*k`.
fn resolve_area_quanta(quanta: Option<&str>, area: Option<&str>) -> Result<BigRational, String> {
    let text = match (quanta, area) {
        (Some(q), None) => q.to_string(),
        (None, Some(a)) => a
            .strip_prefix("4pi*")
            .ok_or_else(|| format!("`{a}`: the area must be a multiple of 4pi written like 4pi*5"))?
            .to_string(),
        _ => return Err("exactly one of --area-quanta or --area is required".into()),
    };
    let k = BigRational::from_str(text.trim())
        .map_err(|_| format!("`{text}` is not a rational number (use p or p/q)"))?;
    if !k.is_positive() {
        return Err(format!("area quanta must be positive, got {k}"));
    }
    Ok(k)
}

fn moduli_params(genus: u32, vortices: u32, k: BigRational) -> Result<ModuliParams, String> {
    if vortices == 0 {
        return Err("the number of vortices must be at least 1".into());
    }
    ModuliParams::new(genus, vortices, k).map_err(|e| e.to_string())
}

// -- dimension ----------------------------------------------------------

fn cmd_dimension(args: DimensionArgs) -> Result<ExitCode, String> {
    let k = resolve_area_quanta(args.area_quanta.as_deref(), args.area.as_deref())?;
    let params = moduli_params(args.genus, args.vortices, k)?;
    if !params.is_integral() {
        return Err(format!(
            "area quanta k = {} is not a positive integer; the Kahler class is integral \
             (and a quantum line bundle exists) only for A = 4*pi*k with k a positive integer",
            params.area_quanta()
        ));
    }
    let report =
        vortex_dimension_via(&params, args.method.map(Method::from)).map_err(|e| e.to_string())?;

    match args.format {
        Format::Human => print_report_human(&report),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&report_to_json(&report)).expect("report serializes")
        ),
        Format::Csv => print_report_csv(&report),
    }

    if report.vanishing_guaranteed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "warning: vanishing is not guaranteed for k = {} (needs k > max(N, g-1)); \
             the Euler characteristic above is not claimed as a dimension",
            report.params.area_quanta()
        );
        Ok(ExitCode::from(2))
    }
}

fn print_report_human(report: &DimensionReport) {
    let p = &report.params;
    let sum = kahler_class(p)
        .add(&tangent_chern(p))
        .expect("classes share the genus");
    println!("genus:                  {}", p.genus());
    println!("vortices:               {}", p.vortices());
    println!("area quanta (A/4pi):    {}", p.area_quanta());
    println!("kahler class [w]/4pi:   {}", kahler_class(p));
    println!("line bundle c_1(L):     {}", quantum_line_class(p));
    println!("tangent c_1(TX):        {}", tangent_chern(p));
    println!("kahler + tangent:       {}  (the (k-g+1)*eta identity)", sum);
    println!("euler characteristic:   {}", report.euler_characteristic);
    println!(
        "vanishing guaranteed:   {}",
        if report.vanishing_guaranteed { "yes" } else { "no" }
    );
    match &report.dimension {
        Some(dim) => println!("hilbert dimension:      {dim}"),
        None => println!("hilbert dimension:      (not claimed)"),
    }
    println!("method:                 {}", report.method);
    for note in &report.notes {
        println!("note: {note}");
    }
}

/// JSON object with the stable key order; big integers are decimal
/// strings so consumers never lose precision.
fn report_to_json(report: &DimensionReport) -> Value {
    let p = &report.params;
    let mut map = Map::new();
    map.insert("genus".into(), json!(p.genus()));
    map.insert("vortices".into(), json!(p.vortices()));
    map.insert("area_quanta".into(), json!(p.area_quanta().to_string()));
    map.insert(
        "euler_characteristic".into(),
        json!(report.euler_characteristic.to_string()),
    );
    if let Some(dim) = &report.dimension {
        map.insert("dimension".into(), json!(dim.to_string()));
    }
    map.insert(
        "vanishing_guaranteed".into(),
        json!(report.vanishing_guaranteed),
    );
    map.insert("method".into(), json!(report.method.to_string()));
    map.insert("kahler_class".into(), json!(kahler_class(p).to_string()));
    map.insert(
        "line_bundle_class".into(),
        json!(quantum_line_class(p).to_string()),
    );
    map.insert("tangent_class".into(), json!(tangent_chern(p).to_string()));
    map.insert("notes".into(), json!(report.notes));
    Value::Object(map)
}

const REPORT_CSV_HEADER: &str = "genus,vortices,area_quanta,euler_characteristic,dimension,\
                                 vanishing_guaranteed,method,kahler_class,line_bundle_class,\
                                 tangent_class,notes";

fn print_report_csv(report: &DimensionReport) {
    let p = &report.params;
    println!("{REPORT_CSV_HEADER}");
    let fields = [
        p.genus().to_string(),
        p.vortices().to_string(),
        p.area_quanta().to_string(),
        report.euler_characteristic.to_string(),
        report
            .dimension
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default(),
        report.vanishing_guaranteed.to_string(),
        report.method.to_string(),
        kahler_class(p).to_string(),
        quantum_line_class(p).to_string(),
        tangent_chern(p).to_string(),
        report.notes.join("; "),
    ];
    println!("{}", fields.map(|f| csv_escape(&f)).join(","));
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

// -- table --------------------------------------------------------------

fn cmd_table(args: TableArgs) -> Result<ExitCode, String> {
    let (g0, g1) = args.genus;
    let (n0, n1) = args.vortices;
    let (k0, k1) = args.area_quanta;
    if n0 == 0 {
        return Err("the vortex range must start at 1 or above".into());
    }
    if k0 == 0 {
        return Err("the area-quanta range must start at 1 or above".into());
    }
    let to_u32 = |v: u64, what: &str| {
        u32::try_from(v).map_err(|_| format!("{what} value {v} is out of range"))
    };
    let genus = to_u32(g0, "genus")?..=to_u32(g1, "genus")?;
    let vortices = to_u32(n0, "vortices")?..=to_u32(n1, "vortices")?;

    let points =
        grid_points(genus, vortices, k0..=k1, args.max_grid).map_err(|e| e.to_string())?;
    let rows = table_rows(&points).map_err(|e| e.to_string())?;

    match args.format {
        Format::Human => print_table_human(&rows),
        Format::Json => {
            let values: Vec<Value> = rows.iter().map(row_to_json).collect();
            println!("{}", serde_json::to_string(&values).expect("rows serialize"));
        }
        Format::Csv => print_table_csv(&rows),
    }
    Ok(ExitCode::SUCCESS)
}

fn row_to_json(row: &TableRow) -> Value {
    let mut map = Map::new();
    map.insert("genus".into(), json!(row.genus));
    map.insert("vortices".into(), json!(row.vortices));
    map.insert("area_quanta".into(), json!(row.area_quanta.to_string()));
    map.insert(
        "euler_characteristic".into(),
        json!(row.euler_characteristic.to_string()),
    );
    map.insert("closed_form".into(), json!(row.closed_form.to_string()));
    map.insert("agree".into(), json!(row.agree));
    map.insert(
        "vanishing_guaranteed".into(),
        json!(row.vanishing_guaranteed),
    );
    if let Some(dim) = &row.dimension {
        map.insert("dimension".into(), json!(dim.to_string()));
    }
    Value::Object(map)
}

const TABLE_CSV_HEADER: &str =
    "genus,vortices,area_quanta,euler_characteristic,closed_form,agree,vanishing_guaranteed,dimension";

fn print_table_csv(rows: &[TableRow]) {
    println!("{TABLE_CSV_HEADER}");
    for row in rows {
        let fields = [
            row.genus.to_string(),
            row.vortices.to_string(),
            row.area_quanta.to_string(),
            row.euler_characteristic.to_string(),
            row.closed_form.to_string(),
            row.agree.to_string(),
            row.vanishing_guaranteed.to_string(),
            row.dimension
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
        ];
        println!("{}", fields.map(|f| csv_escape(&f)).join(","));
    }
}

fn print_table_human(rows: &[TableRow]) {
    println!(
        "{:>5} {:>5} {:>5} {:>16} {:>16} {:>6} {:>9} {:>16}",
        "g", "N", "k", "euler(ring)", "closed_form", "agree", "vanishes", "dimension"
    );
    for row in rows {
        println!(
            "{:>5} {:>5} {:>5} {:>16} {:>16} {:>6} {:>9} {:>16}",
            row.genus,
            row.vortices,
            row.area_quanta,
            row.euler_characteristic.to_string(),
            row.closed_form.to_string(),
            row.agree,
            row.vanishing_guaranteed,
            row.dimension
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_else(|| "-".into()),
        );
    }
}

// -- verify -------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let report =
        verify_reduced_ring(args.genus, args.vortices).map_err(|e| e.to_string())?;
    println!(
        "checked {} monomial pairs at genus {} with {} vortices: {} discrepancies",
        report.pairs_checked,
        report.genus,
        report.points,
        report.discrepancies.len()
    );
    for d in &report.discrepancies {
        println!("  {d}");
    }
    if report.is_clean() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

// -- classes ------------------------------------------------------------

fn cmd_classes(args: ClassesArgs) -> Result<ExitCode, String> {
    let k = resolve_area_quanta(args.area_quanta.as_deref(), args.area.as_deref())?;
    let params = moduli_params(args.genus, args.vortices, k)?;
    let sum = kahler_class(&params)
        .add(&tangent_chern(&params))
        .expect("classes share the genus");
    let entries = [
        ("kahler", kahler_class(&params).to_string()),
        ("line_bundle", quantum_line_class(&params).to_string()),
        ("tangent", tangent_chern(&params).to_string()),
        ("canonical", canonical_class(&params).to_string()),
        ("kahler_plus_tangent", sum.to_string()),
    ];
    match args.format {
        Format::Human => {
            println!(
                "classes for genus {}, {} vortices, area quanta {}:",
                params.genus(),
                params.vortices(),
                params.area_quanta()
            );
            for (name, value) in &entries {
                println!("  {name:<20} {value}");
            }
            println!(
                "  {:<20} {}",
                "integral",
                if params.is_integral() { "yes" } else { "no" }
            );
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("genus".into(), json!(params.genus()));
            map.insert("vortices".into(), json!(params.vortices()));
            map.insert("area_quanta".into(), json!(params.area_quanta().to_string()));
            for (name, value) in &entries {
                map.insert(format!("{name}_class"), json!(value));
            }
            map.insert("integral".into(), json!(params.is_integral()));
            println!("{}", serde_json::to_string(&Value::Object(map)).expect("serializes"));
        }
        Format::Csv => {
            println!("class,expression");
            for (name, value) in &entries {
                println!("{},{}", name, csv_escape(value));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
