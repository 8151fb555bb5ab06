//! Running a parsed input file and rendering the result.
//!
//! Reports are versioned by [`REPORT_SCHEMA`] and carry no timing, so the
//! same input and flags always serialize to the same bytes.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use super::parse::{ParsedInput, TaskEntry};
use crate::budget::Budget;
use crate::criteria::{golod_verdict_traced, Criterion, GolodConfig, GolodVerdict, TraceEntry};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poincare::{golod_defect_with, DefectReport};

pub const REPORT_SCHEMA: &str = "golod-report/1";

/// Command-line settings; each one overrides the file's task block.
#[derive(Clone, Debug, Default)]
pub struct RunFlags {
    pub criterion: Option<Criterion>,
    pub truncation: Option<usize>,
    pub rho_m_max: Option<usize>,
    pub budget_seconds: Option<u64>,
    pub target: Option<String>,
    pub cross_check: bool,
    pub series: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub ring: String,
    pub order: String,
    pub target: String,
    pub ideals: Vec<NamedIdeal>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedIdeal {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub criterion: Criterion,
    pub truncation: usize,
    pub rho_m_max: usize,
    pub product_hint: Option<[String; 2]>,
    pub sandwich_hint: Option<(String, usize)>,
    pub cross_check: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetEcho {
    pub limit_seconds: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub config: ConfigEcho,
    pub budget: BudgetEcho,
    pub verdict: GolodVerdict,
    pub trace: Vec<TraceEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<DefectReport>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.status.exit_code()
    }
}

/// Exit codes for failures: 3 bad input, 4 budget, 5 unmet hypothesis,
/// 6 internal inconsistency.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Inhomogeneous(_) | Error::InvalidRing(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        Error::CharacteristicGate(..)
        | Error::UnitIdeal(_)
        | Error::Precondition(_)
        | Error::ContainmentFailure { .. } => 5,
        _ => 6,
    }
}

fn task_error(t: &TaskEntry, message: impl Into<String>) -> Error {
    Error::Parse {
        line: t.pos.line,
        column: t.pos.column,
        message: message.into(),
    }
}

fn single<'a>(t: &'a TaskEntry) -> Result<&'a str> {
    match t.values.as_slice() {
        [v] => Ok(v),
        _ => Err(task_error(t, format!("task '{}' takes one value", t.key))),
    }
}

fn number(t: &TaskEntry, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| task_error(t, format!("task '{}' expects a non-negative integer, found '{}'", t.key, v)))
}

fn flag(t: &TaskEntry) -> Result<bool> {
    match single(t)? {
        "true" | "on" | "yes" => Ok(true),
        "false" | "off" | "no" => Ok(false),
        v => Err(task_error(t, format!("task '{}' expects true or false, found '{}'", t.key, v))),
    }
}

fn lookup<'a>(input: &'a ParsedInput, t: &TaskEntry, name: &str) -> Result<&'a Ideal> {
    input
        .ideal(name)
        .ok_or_else(|| task_error(t, format!("unknown ideal '{}'", name)))
}

struct Settings<'a> {
    config: GolodConfig,
    echo: ConfigEcho,
    target: &'a str,
    budget_seconds: Option<u64>,
    series: bool,
}

fn settings<'a>(input: &'a ParsedInput, flags: &'a RunFlags) -> Result<Settings<'a>> {
    let mut config = GolodConfig::default();
    let mut target: Option<&str> = None;
    let mut budget_seconds = None;
    let mut series = false;
    let mut product_names = None;
    let mut sandwich_names = None;
    for t in &input.task {
        match t.key.as_str() {
            "criterion" => {
                let v = single(t)?;
                config.criterion =
                    Criterion::parse(v).ok_or_else(|| task_error(t, format!("unknown criterion '{}'", v)))?;
            }
            "truncation" => config.truncation = number(t, single(t)?)?,
            "rho_mmax" => config.rho_m_max = number(t, single(t)?)?,
            "budget_seconds" => budget_seconds = Some(number(t, single(t)?)? as u64),
            "target" => {
                let v = single(t)?;
                lookup(input, t, v)?;
                target = Some(v);
            }
            "cross_check" => config.cross_check = flag(t)?,
            "series" => series = flag(t)?,
            "product" => match t.values.as_slice() {
                [p, q] => {
                    config.product_hint = Some((lookup(input, t, p)?.clone(), lookup(input, t, q)?.clone()));
                    product_names = Some([p.clone(), q.clone()]);
                }
                _ => return Err(task_error(t, "task 'product' takes two ideal names")),
            },
            "sandwich" => match t.values.as_slice() {
                [c, m] => {
                    let m = number(t, m)?;
                    config.sandwich_hint = Some((lookup(input, t, c)?.clone(), m));
                    sandwich_names = Some((c.clone(), m));
                }
                _ => return Err(task_error(t, "task 'sandwich' takes an ideal name and an exponent")),
            },
            other => return Err(task_error(t, format!("unknown task key '{}'", other))),
        }
    }
    if let Some(c) = flags.criterion {
        config.criterion = c;
    }
    if let Some(n) = flags.truncation {
        config.truncation = n;
    }
    if let Some(m) = flags.rho_m_max {
        config.rho_m_max = m;
    }
    if flags.budget_seconds.is_some() {
        budget_seconds = flags.budget_seconds;
    }
    config.cross_check |= flags.cross_check;
    series |= flags.series;
    if let Some(name) = &flags.target {
        if input.ideal(name).is_none() {
            return Err(Error::Precondition(format!("unknown ideal '{}'", name)));
        }
        target = Some(name);
    }
    // default target: the ideal named `a`, else the last one declared
    let target = target
        .or_else(|| input.ideal("a").map(|_| "a"))
        .unwrap_or_else(|| input.ideals.last().map(|(n, _)| n.as_str()).expect("at least one ideal"));
    if let Some(s) = budget_seconds {
        config.budget = Budget::with_timeout(Duration::from_secs(s));
    }
    let echo = ConfigEcho {
        criterion: config.criterion,
        truncation: config.truncation,
        rho_m_max: config.rho_m_max,
        product_hint: product_names,
        sandwich_hint: sandwich_names,
        cross_check: config.cross_check,
    };
    Ok(Settings {
        config,
        echo,
        target,
        budget_seconds,
        series,
    })
}

/// Runs the configured criterion on the target ideal.
pub fn run_check(input: &ParsedInput, flags: &RunFlags) -> Result<Report> {
    let s = settings(input, flags)?;
    let a = input.ideal(s.target).expect("target resolved");
    let run = golod_verdict_traced(a, &s.config)?;
    let series = if s.series {
        Some(golod_defect_with(a, s.config.truncation, &s.config.budget)?)
    } else {
        None
    };
    let ring = &input.ring;
    Ok(Report {
        schema: REPORT_SCHEMA,
        tool: ToolInfo {
            name: "golod",
            version: env!("CARGO_PKG_VERSION"),
        },
        input: InputEcho {
            ring: format!("{}[{}]", ring.field(), ring.variables().join(",")),
            order: ring.order().name(),
            target: s.target.to_string(),
            ideals: input
                .ideals
                .iter()
                .map(|(name, i)| NamedIdeal {
                    name: name.clone(),
                    generators: i.generators().iter().map(|g| g.to_string()).collect(),
                })
                .collect(),
        },
        config: s.echo,
        budget: BudgetEcho {
            limit_seconds: s.budget_seconds,
        },
        verdict: run.verdict,
        trace: run.trace,
        series,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.tool.name, r.tool.version);
    let _ = writeln!(out, "ring     {} ({})", r.input.ring, r.input.order);
    for i in &r.input.ideals {
        let mark = if i.name == r.input.target { "*" } else { " " };
        let _ = writeln!(out, "ideal{}   {} = ({})", mark, i.name, i.generators.join(", "));
    }
    let v = &r.verdict;
    let _ = writeln!(
        out,
        "verdict  {}{}",
        v.status.name(),
        v.certificate.as_deref().map(|c| format!(" [{}]", c)).unwrap_or_default()
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness  {}", w);
    }
    let _ = writeln!(out);
    let width = r.trace.iter().map(|t| t.criterion.len()).max().unwrap_or(0).max("criterion".len());
    let _ = writeln!(out, "{:<width$}  {:<13} certificate", "criterion", "status");
    for t in &r.trace {
        let _ = writeln!(
            out,
            "{:<width$}  {:<13} {}",
            t.criterion,
            t.status.name(),
            t.certificate.as_deref().unwrap_or("-")
        );
    }
    if let Some(s) = &r.series {
        let join = |v: &[String]| v.join(" ");
        let _ = writeln!(out);
        let _ = writeln!(out, "poincare {}", join(&s.actual_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
        let _ = writeln!(out, "bound    {}", join(&s.bound_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
        let _ = writeln!(out, "defect   {}", join(&s.defect.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::GolodStatus;
    use crate::io::parse_ideal_file;

    fn run(text: &str, flags: &RunFlags) -> Result<Report> {
        run_check(&parse_ideal_file(text)?, flags)
    }

    #[test]
    fn exit_codes_cover_each_status() {
        let proven = run("ring Q[x,y]; ideal a = x^2, x*y, y^2;", &RunFlags::default()).unwrap();
        assert_eq!((proven.exit_code(), proven.verdict.certificate.as_deref()), (0, Some("lofwall")));
        let refuted = run("ring Q[x,y]; ideal a = x^2, y^2;", &RunFlags::default()).unwrap();
        assert_eq!(refuted.exit_code(), 1);
        let flags = RunFlags {
            criterion: Some(Criterion::StronglyGolod),
            ..RunFlags::default()
        };
        let open = run("ring Q[x,y]; ideal a = x^3 + y^3;", &flags).unwrap();
        assert_eq!(open.verdict.status, GolodStatus::Inconclusive);
        assert_eq!(open.exit_code(), 2);
        let e = run("ring Q[x,y]; ideal a = x + 1;", &RunFlags::default()).unwrap_err();
        assert_eq!(error_exit_code(&e), 3);
        let e = run("ring F5[x,y]; ideal a = x^2; task criterion = strongly-golod;", &RunFlags::default());
        assert_eq!(e.unwrap().exit_code(), 2);
        let e = run("ring Q[x,y]; ideal a = x^2; task criterion = product;", &RunFlags::default()).unwrap_err();
        assert_eq!(error_exit_code(&e), 5);
        assert_eq!(error_exit_code(&Error::EngineInconsistency(String::new())), 6);
        assert_eq!(
            error_exit_code(&Error::BudgetExceeded {
                stage: String::new(),
                last_completed: 0
            }),
            4
        );
    }

    #[test]
    fn json_is_deterministic_and_carries_witnesses() {
        let text = "ring Q[x,y]; ideal a = x^2, y^2; task series = on;";
        let a = emit_report(&run(text, &RunFlags::default()).unwrap(), Format::Json);
        let b = emit_report(&run(text, &RunFlags::default()).unwrap(), Format::Json);
        assert_eq!(a, b);
        assert!(a.contains("\"witness\""));
        assert!(a.contains("\"schema\": \"golod-report/1\""));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["series"]["first_nonzero"], 3);
        let proven = emit_report(
            &run("ring Q[x,y]; ideal a = x^2, x*y, y^2;", &RunFlags::default()).unwrap(),
            Format::Json,
        );
        assert!(proven.contains("\"certificate\": \"lofwall\""));
    }

    #[test]
    fn task_block_and_flags() {
        let text = "ring Q[x,y]; ideal n = x, y; ideal a = x^2, x*y, y^2; task product = n, n; task criterion = product;";
        let r = run(text, &RunFlags::default()).unwrap();
        assert_eq!(r.verdict.certificate.as_deref(), Some("product-thm"));
        let flags = RunFlags {
            criterion: Some(Criterion::Lofwall),
            ..RunFlags::default()
        };
        assert_eq!(run(text, &flags).unwrap().verdict.certificate.as_deref(), Some("lofwall"));
        assert!(run("ring Q[x]; ideal a = x^2; task bogus = 1;", &RunFlags::default()).is_err());
        assert!(run("ring Q[x]; ideal a = x^2; task product = a, b;", &RunFlags::default()).is_err());
        let text = render_text(&run("ring Q[x,y]; ideal a = x^2, y^2;", &RunFlags::default()).unwrap());
        assert!(text.contains("verdict  REFUTED [homology-product]"), "{}", text);
        assert!(text.contains("criterion"));
    }
}
