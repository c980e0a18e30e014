//! Run configuration, check dispatch, and the command-line front end.

pub mod args;
pub mod registry;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncengine::CACHE_ENV;
use crate::preproj::{
    cross_check_corner, orientation_invariance, rho, sample_lambdas, sample_regular_mu, verify_b,
    verify_block_decomposition, verify_flatness, verify_ideal_powers, verify_pi0, verify_pi0mu, verify_pi_truncated,
    verify_weyl_denominator,
};
use crate::preproj::closed::hilbert_identities;
use crate::qfusion::{verify_a_selfduality, verify_heisenberg, verify_prop_func_and_pir, verify_verlinde, DEFAULT_SEED};
use crate::refl::{group_catalog, verify_group_orders, verify_hstar, Family as GroupFamily, DEFAULT_MAX_COSETS};
use crate::report::{CheckRecord, RecordBuilder, Report};
use crate::rh::{verify_phi, MonodromyOptions};
use crate::rootdata::{build_root_data, Family, RootData, TypeLabel};

pub use registry::{family_representatives, parse_checks, parse_types, CheckKind, Scope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub checks: Vec<CheckKind>,
    /// `None` means each check's default types.
    pub types: Option<Vec<TypeLabel>>,
    pub seed: u64,
    pub truncation: usize,
    /// Overrides the per-type monodromy tolerance.
    pub monodromy_tol: Option<f64>,
    pub slow: bool,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub max_cosets: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            checks: CheckKind::ALL.to_vec(),
            types: None,
            seed: DEFAULT_SEED,
            truncation: 6,
            monodromy_tol: None,
            slow: false,
            cache_dir: None,
            format: OutputFormat::Json,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

/// Residual threshold for the monodromy relations of each type.
pub fn default_monodromy_tol(t: TypeLabel) -> f64 {
    match (t.family, t.rank) {
        (Family::A, _) => 1e-8,
        (Family::D, 4) => 1e-6,
        _ => 1e-5,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Type(TypeLabel),
    Group(GroupFamily),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub kind: CheckKind,
    pub target: Target,
}

#[derive(Clone, Debug, Default)]
pub struct Plan {
    pub tasks: Vec<Task>,
    /// Human-readable reasons for excluded instances.
    pub skipped: Vec<String>,
}

fn has_nodal_vertex(t: TypeLabel) -> bool {
    build_root_data(t).nodal_vertex().is_some()
}

/// Expands a configuration into concrete tasks.
pub fn plan(config: &RunConfig) -> Plan {
    let mut p = Plan::default();
    for &kind in &config.checks {
        match kind.scope() {
            Scope::Global => p.tasks.push(Task { kind, target: Target::None }),
            Scope::PerFamily => {
                for fam in GroupFamily::ALL {
                    if fam == GroupFamily::Icosahedral && !config.slow {
                        p.skipped.push(format!("{}/{fam:?} needs --slow", kind.id()));
                        continue;
                    }
                    p.tasks.push(Task { kind, target: Target::Group(fam) });
                }
            }
            Scope::PerType | Scope::PerNodalType => {
                let types = config.types.clone().unwrap_or_else(|| kind.default_types());
                for t in types {
                    if kind.scope() == Scope::PerNodalType && !has_nodal_vertex(t) {
                        p.skipped.push(format!("{}/{t}: no nodal vertex", kind.id()));
                        continue;
                    }
                    if kind.is_slow(Some(t)) && !config.slow {
                        p.skipped.push(format!("{}/{t} needs --slow", kind.id()));
                        continue;
                    }
                    p.tasks.push(Task { kind, target: Target::Type(t) });
                }
            }
        }
    }
    p
}

fn failed(id: String, err: Error) -> CheckRecord {
    let mut b = RecordBuilder::new(id, "check could not be run", "run");
    b.error("run", err);
    b.finish()
}

fn small(rd: &RootData) -> bool {
    rd.label.family != Family::E && rd.rank() <= 5
}

/// Runs one task.
pub fn run_task(task: &Task, config: &RunConfig) -> CheckRecord {
    let seed = config.seed;
    let rd = match task.target {
        Target::Type(t) => Some(build_root_data(t)),
        _ => None,
    };
    let id = |rd: &RootData| format!("{}/{}", task.kind.id(), rd.label);
    match (task.kind, &task.target, rd.as_ref()) {
        (CheckKind::Pi0, _, Some(rd)) => verify_pi0(rd, small(rd)),
        (CheckKind::Pi0Mu, _, Some(rd)) => match sample_regular_mu(rd, seed) {
            Ok(mu) => verify_pi0mu(rd, &mu, Some(seed)),
            Err(e) => failed(id(rd), e),
        },
        (CheckKind::Flatness, _, Some(rd)) => {
            let mu = rho(rd);
            match sample_lambdas(rd, &mu, 3, seed) {
                Ok(ls) => verify_flatness(rd, &mu, &ls, Some(seed)),
                Err(e) => failed(id(rd), e),
            }
        }
        (CheckKind::Blocks, _, Some(rd)) => {
            let r = sample_lambdas(rd, &rho(rd), 1, seed).and_then(|ls| verify_block_decomposition(rd, &ls[0], Some(seed)));
            r.unwrap_or_else(|e| failed(id(rd), e))
        }
        (CheckKind::PiTruncated, _, Some(rd)) => verify_pi_truncated(rd, config.truncation),
        (CheckKind::WeylDenominator, _, Some(rd)) => verify_weyl_denominator(rd),
        (CheckKind::IdealPowers, _, Some(rd)) => verify_ideal_powers(rd),
        (CheckKind::Spherical, _, Some(rd)) => verify_b(rd, 3, seed),
        (CheckKind::Corner, _, Some(rd)) => cross_check_corner(rd, &rho(rd)),
        (CheckKind::Orientation, _, Some(rd)) => orientation_invariance(rd),
        (CheckKind::HilbertIdentity, _, Some(rd)) => hilbert_identities(rd),
        (CheckKind::FusionFunctor, _, Some(rd)) => verify_prop_func_and_pir(rd, small(rd) && rd.rank() <= 4),
        (CheckKind::ASelfDuality, _, Some(rd)) => {
            let mut r = verify_a_selfduality(rd.h());
            r.check_id = id(rd);
            r
        }
        (CheckKind::Monodromy, _, Some(rd)) => {
            let tol = config.monodromy_tol.unwrap_or_else(|| default_monodromy_tol(rd.label));
            verify_phi(rd, None, &MonodromyOptions::new(tol)).0
        }
        (CheckKind::Heisenberg, _, _) => verify_heisenberg(seed),
        (CheckKind::Verlinde, _, _) => verify_verlinde(8),
        (CheckKind::GroupOrders, _, _) => verify_group_orders(&group_catalog(), config.max_cosets).0,
        (CheckKind::HStar, Target::Group(f), _) => verify_hstar(*f),
        (kind, target, _) => failed(kind.id().to_string(), Error::Config(format!("{kind:?} cannot run on {target:?}"))),
    }
}

/// Executes every planned task; records come back sorted by id.
pub fn run(config: &RunConfig) -> Result<(Report, Plan)> {
    if let Some(dir) = &config.cache_dir {
        std::fs::create_dir_all(dir)?;
        std::env::set_var(CACHE_ENV, dir);
    }
    let p = plan(config);
    let records: Vec<CheckRecord> = p.tasks.par_iter().map(|t| run_task(t, config)).collect();
    Ok((Report::new(config.seed, records), p))
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Markdown => report.to_markdown(),
    }
}

/// Combines saved reports; later records with the same id replace earlier ones.
pub fn merge_reports(reports: Vec<Report>) -> Result<Report> {
    let seed = reports.first().map(|r| r.seed).ok_or_else(|| Error::Config("no reports given".into()))?;
    let mut by_id = std::collections::BTreeMap::new();
    for r in reports {
        for rec in r.records {
            by_id.insert(rec.check_id.clone(), rec);
        }
    }
    Ok(Report::new(seed, by_id.into_values().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(checks: &str, types: Option<&str>) -> RunConfig {
        RunConfig {
            checks: parse_checks(checks).unwrap(),
            types: types.map(|t| parse_types(t).unwrap()),
            ..RunConfig::default()
        }
    }

    #[test]
    fn plan_respects_slow_and_nodal() {
        let p = plan(&config("spherical", Some("A2,A3,E6")));
        assert_eq!(p.tasks.len(), 1);
        assert_eq!(p.skipped.len(), 2);
        let p = plan(&config("hstar", None));
        assert_eq!(p.tasks.len(), 2);
        let p = plan(&config("hilbert-identity", Some("all")));
        assert_eq!(p.tasks.len(), 5);
    }

    #[test]
    fn small_run_is_deterministic() {
        let c = config("pi0,pi0mu", Some("A2"));
        let (a, _) = run(&c).unwrap();
        let (b, _) = run(&c).unwrap();
        assert_eq!(a.records.len(), 2);
        assert!(a.all_pass());
        assert_eq!(a.without_timings().to_json(), b.without_timings().to_json());
    }

    #[test]
    fn merge_keeps_last() {
        let (a, _) = run(&config("verlinde", None)).unwrap();
        let m = merge_reports(vec![a.clone(), a]).unwrap();
        assert_eq!(m.records.len(), 1);
    }
}
