use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use golod::criteria::Criterion;
use golod::io::{
    emit_report, error_exit_code, format_ideal_file, parse_field, parse_order, parse_syntax, run_check, Format,
    Overrides, RunFlags,
};
use golod::poly::{Field, MonomialOrder};

#[derive(Parser)]
#[command(name = "golod", version, about = "Decide, certify or refute Golodness of homogeneous ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the criteria on an ideal file. Exit status: 0 proven Golod,
    /// 1 refuted, 2 inconclusive, 3 or more on errors.
    Check(CheckArgs),
    /// Parse an ideal file and print it back in normalized form.
    Parse(InputArgs),
}

#[derive(clap::Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    file: PathBuf,
    /// Coefficient field override, e.g. Q or F5.
    #[arg(long, value_parser = field_arg)]
    field: Option<Field>,
    /// Monomial order override: degrevlex, deglex, lex or elimK.
    #[arg(long, value_parser = order_arg)]
    order: Option<MonomialOrder>,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    criterion: Option<CriterionArg>,
    /// Poincaré series truncation order.
    #[arg(long)]
    truncation: Option<usize>,
    /// Largest power used when estimating the Koszul Artin-Rees number.
    #[arg(long = "rho-mmax")]
    rho_mmax: Option<usize>,
    #[arg(long = "budget-seconds")]
    budget_seconds: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportArg,
    /// Name of the ideal to check (default: `a`, else the last declared).
    #[arg(long)]
    target: Option<String>,
    /// Run the refutation engines even after a proof and fail if they disagree.
    #[arg(long = "cross-check")]
    cross_check: bool,
    /// Include the Poincaré series, Golod bound and defect in the report.
    #[arg(long)]
    series: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Auto,
    StronglyGolod,
    PropCycle,
    Sandwich,
    Product,
    Lofwall,
    RefuteOnly,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Criterion {
        match c {
            CriterionArg::Auto => Criterion::Auto,
            CriterionArg::StronglyGolod => Criterion::StronglyGolod,
            CriterionArg::PropCycle => Criterion::PropCycle,
            CriterionArg::Sandwich => Criterion::Sandwich,
            CriterionArg::Product => Criterion::Product,
            CriterionArg::Lofwall => Criterion::Lofwall,
            CriterionArg::RefuteOnly => Criterion::RefuteOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Json,
    Text,
}

fn field_arg(s: &str) -> std::result::Result<Field, String> {
    parse_field(s).ok_or_else(|| format!("unknown field '{}'", s))
}

fn order_arg(s: &str) -> std::result::Result<MonomialOrder, String> {
    parse_order(s).ok_or_else(|| format!("unknown monomial order '{}'", s))
}

fn read_input(path: &PathBuf) -> std::result::Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
    }
}

fn load(args: &InputArgs) -> std::result::Result<golod::io::ParsedInput, (i32, String)> {
    let text = read_input(&args.file).map_err(|e| (3, e))?;
    let built = parse_syntax(&text).and_then(|f| {
        f.build(Overrides {
            field: args.field,
            order: args.order,
        })
    });
    built.map_err(|e| (error_exit_code(&e), e.to_string()))
}

fn check(args: &CheckArgs) -> std::result::Result<(String, i32), (i32, String)> {
    let input = load(&args.input)?;
    let flags = RunFlags {
        criterion: args.criterion.map(Criterion::from),
        truncation: args.truncation,
        rho_m_max: args.rho_mmax,
        budget_seconds: args.budget_seconds,
        target: args.target.clone(),
        cross_check: args.cross_check,
        series: args.series,
    };
    let report = run_check(&input, &flags).map_err(|e| (error_exit_code(&e), e.to_string()))?;
    let format = match args.report {
        ReportArg::Json => Format::Json,
        ReportArg::Text => Format::Text,
    };
    Ok((emit_report(&report, format), report.exit_code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) => check(args),
        Command::Parse(args) => load(args).map(|p| {
            let named: Vec<(&str, &golod::ideal::Ideal)> = p.ideals.iter().map(|(n, i)| (n.as_str(), i)).collect();
            (format_ideal_file(&p.ring, &named), 0)
        }),
    };
    match outcome {
        Ok((text, code)) => {
            print!("{}", text);
            ExitCode::from(code as u8)
        }
        Err((code, message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(code as u8)
        }
    }
}
