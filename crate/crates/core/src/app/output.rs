use std::fmt::Write;

use super::{RunReport, StudyTable};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;

/// Process exit status for a failed run.
pub fn exit_code(error: &Error) -> i32 {
    match error.root() {
        Error::Singularity(_) | Error::EmptyMesh | Error::UndefinedMetric(_) => EXIT_SINGULAR,
        Error::SeriesNotConverged { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(Self::Human),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown output format {other:?} (human, json, csv)"))),
        }
    }
}

/// Column order of single-run CSV output.
pub const REPORT_COLUMNS: &str =
    "n_elements,n_charges,total_area,iterations,converged,final_relative_residual,energy,e_phi,analytic_energy,t_rhs,t_solve,t_energy";

/// Column order of study CSV output.
pub const STUDY_COLUMNS: &str = "level,n_elements,energy,e_phi,order,iterations,converged,seconds";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn emit_report(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        OutputFormat::Csv => format!(
            "{REPORT_COLUMNS}\n{},{},{},{},{},{},{},{},{},{},{},{}\n",
            report.n_elements,
            report.n_charges,
            report.total_area,
            report.iterations,
            report.converged,
            report.final_relative_residual,
            report.energy,
            opt(report.e_phi),
            opt(report.analytic_energy),
            report.timings.rhs,
            report.timings.solve,
            report.timings.energy,
        ),
        OutputFormat::Human => {
            let mut s = String::new();
            let p = &report.params;
            let _ = writeln!(s, "elements         {}", report.n_elements);
            let _ = writeln!(s, "charges          {}", report.n_charges);
            let _ = writeln!(s, "area             {:.4} A^2", report.total_area);
            let _ = writeln!(s, "eps1 eps2 kappa  {} {} {:.6}", p.eps1, p.eps2, p.kappa);
            let _ = writeln!(
                s,
                "gmres            {} iterations, {} restarts, residual {:.3e}{}",
                report.iterations,
                report.restarts,
                report.final_relative_residual,
                if report.converged { "" } else { " (NOT CONVERGED)" }
            );
            let _ = writeln!(s, "E_sol            {:.4} kcal/mol", report.energy);
            if let Some(e) = report.analytic_energy {
                let _ = writeln!(s, "E_exact          {:.4} kcal/mol", e);
            }
            if let Some(e) = report.e_phi {
                let _ = writeln!(s, "e_phi            {:.3e}", e);
            }
            let t = &report.timings;
            let _ = writeln!(
                s,
                "time (s)         setup {:.3}  rhs {:.3}  solve {:.3}  energy {:.3}  oracle {:.3}  [{} workers]",
                t.setup, t.rhs, t.solve, t.energy, t.oracle, report.workers
            );
            for w in &report.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    }
}

pub fn emit_study(table: &StudyTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(table).expect("table serializes") + "\n",
        OutputFormat::Csv => {
            let mut s = format!("{STUDY_COLUMNS}\n");
            for r in &table.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.level,
                    r.n_elements,
                    r.energy,
                    r.e_phi,
                    opt(r.order),
                    r.iterations,
                    r.converged,
                    r.seconds
                );
            }
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let _ =
                writeln!(s, "{:>5} {:>8} {:>12} {:>10} {:>6} {:>5}", "level", "N", "E_sol", "e_phi", "order", "iter");
            for r in &table.rows {
                let order = r.order.map_or_else(|| "-".to_string(), |o| format!("{o:.2}"));
                let _ = writeln!(
                    s,
                    "{:>5} {:>8} {:>12.4} {:>10.2e} {:>6} {:>5}",
                    r.level, r.n_elements, r.energy, r.e_phi, order, r.iterations
                );
            }
            let _ = writeln!(s, "exact E_sol       {:.4} kcal/mol", table.analytic_energy);
            if let Some(e) = table.extrapolated_energy {
                let _ = writeln!(s, "extrapolated      {:.4} kcal/mol", e);
            }
            s
        }
    }
}
