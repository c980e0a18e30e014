use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::{merge_reports, parse_checks, parse_types, render, run, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::ncengine::CACHE_ENV;
use crate::qfusion::DEFAULT_SEED;
use crate::refl::{find_group, group_catalog, verify_group_orders, DEFAULT_MAX_COSETS};
use crate::report::Report;
use crate::rh::{parse_leg_params, verify_phi, MonodromyOptions};
use crate::rootdata::{build_nodal_data, build_root_data};

#[derive(Parser, Debug)]
#[command(name = "centext", version, about = "Exact and numerical checks for centrally extended preprojective algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root data, nodal data and closed-form dimensions.
    Roots {
        #[arg(long = "type", default_value = "all")]
        types: String,
    },
    /// Run verification checks and print a report.
    Verify(VerifyArgs),
    /// The reflection group catalog; lists it unless `--verify` is given.
    Groups {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        verify: bool,
        /// Comma-separated group names; default is the whole catalog.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Monodromy of the Fuchsian system on B(lambda).
    Monodromy {
        #[arg(long = "type")]
        type_label: String,
        /// `zero` or leg parameters, legs separated by `;`, e.g. `0,1/20;0,0;0,0`.
        #[arg(long, default_value = "zero")]
        lambda: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        integrator_tol: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Include the monodromy matrices in the output.
        #[arg(long)]
        matrices: bool,
    },
    /// Re-render or merge saved JSON reports.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "markdown")]
        format: String,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Type labels, `all` (one per family) or `standard`; default per check.
    #[arg(long = "type")]
    pub types: Option<String>,
    #[arg(long, default_value = "all")]
    pub checks: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub slow: bool,
    #[arg(long, default_value = "json")]
    pub format: String,
    #[arg(long, default_value_t = 6)]
    pub truncation: usize,
    /// Monodromy residual threshold.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn config(&self) -> Result<RunConfig> {
        Ok(RunConfig {
            checks: parse_checks(&self.checks)?,
            types: self.types.as_deref().map(parse_types).transpose()?,
            seed: self.seed,
            truncation: self.truncation,
            monodromy_tol: self.tol,
            slow: self.slow,
            cache_dir: self.cache_dir.clone(),
            format: self.format.parse()?,
            max_cosets: DEFAULT_MAX_COSETS,
        })
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())?;
    if !s.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn roots(types: &str, out: &mut dyn Write) -> Result<i32> {
    let mut v = Vec::new();
    for t in parse_types(types)? {
        let rd = build_root_data(t);
        let (h, r) = (rd.h(), rd.rank());
        let nodal = build_nodal_data(&rd).ok().map(|nd| {
            json!({
                "node": nd.node,
                "legs": nd.legs,
                "leg_orders": nd.leg_orders,
                "q1": nd.q1,
                "q2": nd.q2,
                "group_order": nd.group_order(),
            })
        });
        v.push(json!({
            "type": t.to_string(),
            "rank": r,
            "coxeter_number": h,
            "num_positive_roots": rd.positive_roots.len(),
            "dim_pi0": h * (h + 1) * r / 6,
            "dim_pi0mu": h * h * (h + 1) * r / 12,
            "root_data": rd,
            "nodal": nodal,
        }));
    }
    emit(out, &serde_json::to_string_pretty(&v)?)?;
    Ok(0)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let config = a.config()?;
    let (report, plan) = run(&config)?;
    for s in &plan.skipped {
        writeln!(err, "skipped {s}")?;
    }
    let text = render(&report, config.format);
    match &a.output {
        Some(p) => std::fs::write(p, &text)?,
        None => emit(out, &text)?,
    }
    writeln!(err, "{} checks, {} passed, {} failed", report.summary.total, report.summary.passed, report.summary.failed)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn groups(verify: bool, name: Option<&str>, max_cosets: usize, out: &mut dyn Write) -> Result<i32> {
    let selected = match name {
        Some(n) => n
            .split(',')
            .map(|g| find_group(g).ok_or_else(|| Error::Config(format!("unknown group `{g}`"))))
            .collect::<Result<Vec<_>>>()?,
        None => group_catalog(),
    };
    if verify {
        let (rec, rows) = verify_group_orders(&selected, max_cosets);
        emit(out, &serde_json::to_string_pretty(&json!({ "record": rec, "rows": rows }))?)?;
        return Ok(if rec.pass { 0 } else { 1 });
    }
    for g in &selected {
        writeln!(out, "{:<4} {:<12} order {:>5}  {}", g.name, format!("{:?}", g.family), g.expected_order, g.display.join(", "))?;
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn monodromy(
    type_label: &str,
    lambda: &str,
    tol: Option<f64>,
    integrator_tol: Option<f64>,
    delta: Option<f64>,
    matrices: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let t = type_label.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
    let rd = build_root_data(t);
    if rd.nodal_vertex().is_none() {
        return Err(Error::Config(format!("{t} has no nodal vertex")));
    }
    let params = parse_leg_params(lambda)?;
    let mut opts = MonodromyOptions::new(tol.unwrap_or_else(|| super::default_monodromy_tol(t)));
    opts.integrator_tol = integrator_tol;
    opts.delta = delta;
    let (rec, rep) = verify_phi(&rd, params, &opts);
    let mut rep_json = serde_json::to_value(&rep)?;
    if !matrices {
        if let Some(o) = rep_json.as_object_mut() {
            o.remove("y");
        }
    }
    emit(out, &serde_json::to_string_pretty(&json!({ "record": rec, "report": rep_json }))?)?;
    Ok(if rec.pass { 0 } else { 1 })
}

fn report(inputs: &[PathBuf], format: &str, out: &mut dyn Write) -> Result<i32> {
    let format: OutputFormat = format.parse()?;
    let mut reports = Vec::new();
    for p in inputs {
        let text = std::fs::read_to_string(p)?;
        let r: Report = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
        reports.push(r);
    }
    let merged = merge_reports(reports)?;
    emit(out, &render(&merged, format))?;
    Ok(if merged.all_pass() { 0 } else { 1 })
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = match &cli.command {
        Command::Roots { types } => roots(types, out),
        Command::Verify(a) => verify(a, out, err),
        Command::Groups {
            verify,
            name,
            max_cosets,
        ..
        } => groups(*verify, name.as_deref(), *max_cosets, out),
        Command::Monodromy {
            type_label,
            lambda,
            tol,
            integrator_tol,
            delta,
            matrices,
        } => monodromy(type_label, lambda, *tol, *integrator_tol, *delta, *matrices, out),
        Command::Report { inputs, format } => report(inputs, format, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
