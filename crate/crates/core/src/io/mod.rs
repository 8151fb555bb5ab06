//! Input files, check runs and reports.

mod parse;
mod report;

pub use parse::{
    format_ideal_file, parse_field, parse_ideal_file, parse_order, parse_syntax, Expr, IdealDecl, IdealFile, Overrides,
    ParsedInput, Pos, TaskEntry,
};
pub use report::{
    emit_report, error_exit_code, run_check, BudgetEcho, ConfigEcho, Format, InputEcho, NamedIdeal, Report, RunFlags,
    ToolInfo, REPORT_SCHEMA,
};
