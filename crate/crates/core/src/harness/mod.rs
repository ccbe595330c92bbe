//! Convergence-study driver: named experiment plans, CSV output and order tables.

mod table;

pub use table::render_order_table;

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::analysis::{eoc, ErrorReport};
use crate::error::{Error, Result};
use crate::mesh::ElemKind;
use crate::problem::ProblemData;
use crate::schemes::{run_simulation, SchemeConfig, SchemeKind, StartMode, TauRule};

pub const CSV_HEADER: [&str; 15] = [
    "scheme",
    "elem",
    "M",
    "h",
    "tau",
    "N",
    "err_u_l2",
    "err_u_h1",
    "superclose_u_h1",
    "superconv_u_h1",
    "err_phi_l2",
    "err_phi_h1",
    "superclose_phi_h1",
    "superconv_phi_h1",
    "combined_l2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    SpatialSweep,
    FixedTauSweep,
    TemporalSweep,
    Bdf3Temporal,
    GaoTable,
    Ext1Table,
    Single,
}

impl Study {
    /// Temporal studies refine τ on a fixed mesh; the others refine the mesh.
    pub fn refines_time(self) -> bool {
        matches!(self, Study::TemporalSweep | Study::Bdf3Temporal)
    }
}

pub const PRESETS: [&str; 7] = [
    "fig-u",
    "fig-phi",
    "fig-fixed-tau",
    "fig-temporal",
    "fig-bdf3",
    "table-gao",
    "table-ext1",
];

/// Halving sequence 0.1, 0.05, ..., 0.0015625.
pub fn temporal_taus() -> Vec<f64> {
    (0..7).map(|k| 0.1 / f64::from(1 << k)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub name: String,
    pub study: Study,
    pub scheme: SchemeKind,
    pub elem: ElemKind,
    pub ms: Vec<usize>,
    pub taus: Vec<TauRule>,
    pub t_final: f64,
    /// Overrides the scheme's default start-up.
    pub start: Option<StartMode>,
    pub out: Option<PathBuf>,
}

impl ExperimentPlan {
    pub fn single(config: &SchemeConfig) -> Self {
        ExperimentPlan {
            name: "single".into(),
            study: Study::Single,
            scheme: config.scheme,
            elem: config.elem,
            ms: vec![config.m],
            taus: vec![config.tau_rule],
            t_final: config.t_final,
            start: Some(config.start),
            out: None,
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        let spatial = vec![8, 16, 32, 64];
        let fixed = |v: Vec<f64>| v.into_iter().map(TauRule::Fixed).collect::<Vec<_>>();
        let (study, scheme, ms, taus) = match name {
            "fig-u" | "fig-phi" => (Study::SpatialSweep, SchemeKind::Bdf2, spatial, vec![TauRule::SqrtH]),
            "fig-fixed-tau" => (
                Study::FixedTauSweep,
                SchemeKind::Bdf2,
                vec![8, 16, 32, 64, 128, 256],
                fixed(vec![0.1, 0.05, 0.025, 0.0125]),
            ),
            "fig-temporal" => (Study::TemporalSweep, SchemeKind::Bdf2, vec![16, 32, 64, 128, 256], fixed(temporal_taus())),
            "fig-bdf3" => (Study::Bdf3Temporal, SchemeKind::Bdf3, vec![16, 32, 64, 128, 256], fixed(temporal_taus())),
            "table-gao" => (Study::GaoTable, SchemeKind::Gao, spatial, vec![TauRule::SqrtH]),
            "table-ext1" => (Study::Ext1Table, SchemeKind::Ext1, spatial, vec![TauRule::SqrtH]),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown preset '{other}' (expected one of {})",
                    PRESETS.join(", ")
                )))
            }
        };
        Ok(ExperimentPlan {
            name: name.into(),
            study,
            scheme,
            elem: ElemKind::Quad,
            ms,
            taus,
            t_final: 1.0,
            start: None,
            out: None,
        })
    }

    pub fn with_out(mut self, path: impl Into<PathBuf>) -> Self {
        self.out = Some(path.into());
        self
    }

    pub fn with_meshes(mut self, ms: Vec<usize>) -> Self {
        self.ms = ms;
        self
    }

    pub fn with_taus(mut self, taus: Vec<TauRule>) -> Self {
        self.taus = taus;
        self
    }

    /// Run configurations grouped into refinement sequences, in plan order.
    pub fn groups(&self) -> Vec<Vec<SchemeConfig>> {
        let cfg = |m: usize, tau: TauRule| {
            let mut c = SchemeConfig::new(self.scheme, m, self.elem, tau).with_final_time(self.t_final);
            if let Some(s) = self.start {
                c = c.with_start(s);
            }
            c
        };
        if self.study.refines_time() {
            self.ms.iter().map(|&m| self.taus.iter().map(|&t| cfg(m, t)).collect()).collect()
        } else {
            self.taus.iter().map(|&t| self.ms.iter().map(|&m| cfg(m, t)).collect()).collect()
        }
    }

    pub fn configs(&self) -> Vec<SchemeConfig> {
        self.groups().into_iter().flatten().collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.ms.is_empty() || self.taus.is_empty() {
            return Err(Error::InvalidConfig(format!("plan '{}' has no runs", self.name)));
        }
        self.configs().iter().try_for_each(SchemeConfig::validate)
    }
}

/// Outcome of one run of a plan.
#[derive(Debug)]
pub struct RunOutcome {
    pub config: SchemeConfig,
    pub result: Result<ErrorReport>,
}

#[derive(Debug)]
pub struct PlanResult {
    pub plan: ExperimentPlan,
    /// One entry per group of [`ExperimentPlan::groups`].
    pub groups: Vec<Vec<RunOutcome>>,
}

impl PlanResult {
    pub fn reports(&self) -> impl Iterator<Item = &ErrorReport> {
        self.groups.iter().flatten().filter_map(|o| o.result.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RunOutcome> {
        self.groups.iter().flatten().filter(|o| o.result.is_err())
    }

    /// Successful reports of each group.
    pub fn group_reports(&self) -> Vec<Vec<ErrorReport>> {
        self.groups
            .iter()
            .map(|g| g.iter().filter_map(|o| o.result.as_ref().ok().cloned()).collect())
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_csv(self, out)
    }
}

/// Runs every configuration of `plan` in order; failures are recorded and the
/// remaining runs continue. Writes the CSV if `plan.out` is set.
pub fn run_plan(plan: &ExperimentPlan, problem: &dyn ProblemData) -> Result<PlanResult> {
    plan.validate()?;
    let groups = plan
        .groups()
        .into_iter()
        .map(|g| {
            g.into_iter()
                .map(|config| {
                    let result = run_simulation(&config, problem).map(|sim| ErrorReport::from_simulation(&sim, problem));
                    if let Err(e) = &result {
                        eprintln!(
                            "run {} M={} tau={} failed: {e}",
                            config.scheme.tag(),
                            config.m,
                            config.tau_rule.tag()
                        );
                    }
                    RunOutcome { config, result }
                })
                .collect()
        })
        .collect();
    let result = PlanResult {
        plan: plan.clone(),
        groups,
    };
    if let Some(path) = &plan.out {
        write_csv_file(&result, path)?;
    }
    Ok(result)
}

fn write_csv_file(result: &PlanResult, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    write_csv(result, std::io::BufWriter::new(file))
}

fn refinement_variable(study: Study, r: &ErrorReport) -> f64 {
    if study.refines_time() {
        r.tau
    } else {
        r.h
    }
}

/// Empirical orders of every error column along a group of reports.
pub fn group_orders(study: Study, reports: &[ErrorReport]) -> Vec<[Option<f64>; 9]> {
    if reports.len() < 2 {
        return Vec::new();
    }
    let mut rows = vec![[None; 9]; reports.len() - 1];
    for col in 0..9 {
        let pts: Vec<(f64, f64)> = reports
            .iter()
            .map(|r| (refinement_variable(study, r), r.numeric_fields()[col]))
            .collect();
        for (k, w) in pts.windows(2).enumerate() {
            rows[k][col] = eoc(w).ok().map(|o| o[0]);
        }
    }
    rows
}

fn write_csv<W: Write>(result: &PlanResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for group in &result.groups {
        for o in group {
            let c = &o.config;
            let (steps, tau) = c.time_grid();
            let mut rec = vec![
                c.scheme.tag().to_string(),
                c.elem.tag().to_string(),
                c.m.to_string(),
                c.h().to_string(),
                tau.to_string(),
                steps.to_string(),
            ];
            match &o.result {
                Ok(r) => rec.extend(r.numeric_fields().iter().map(|v| v.to_string())),
                Err(_) => rec.extend(std::iter::repeat(String::new()).take(9)),
            }
            w.write_record(&rec)?;
        }
    }
    for reports in result.group_reports() {
        let orders = group_orders(result.plan.study, &reports);
        for (r, row) in reports.iter().skip(1).zip(orders) {
            let mut rec = vec![
                format!("{}-eoc", r.scheme),
                r.elem.clone(),
                r.m.to_string(),
                r.h.to_string(),
                r.tau.to_string(),
                r.steps.to_string(),
            ];
            rec.extend(row.iter().map(|o| o.map_or(String::new(), |v| v.to_string())));
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}
