use std::fmt::Write as _;

use serde::Serialize;

use super::Format;
use crate::ideals::Status;
use crate::pn_convergence::{ConvergenceReport, LimitScan};
use crate::pn_space::Point;
use crate::points_cauchy::PointSetEstimate;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum ScenarioReport {
    Convergence(ConvergenceReport),
    Scan { scan: LimitScan, overall: Status },
    Points {
        limit_points: PointSetEstimate,
        cluster_points: PointSetEstimate,
        overall: Status,
    },
}

impl ScenarioReport {
    /// Holds when some candidate is accepted, fails when every candidate is
    /// rejected at some grid point, inconclusive otherwise.
    pub(crate) fn scan(scan: LimitScan) -> Self {
        let overall = if !scan.accepted.is_empty() {
            Status::Holds
        } else if scan.reports.iter().all(|r| r.overall == Status::Fails) {
            Status::Fails
        } else {
            Status::Inconclusive
        };
        Self::Scan { scan, overall }
    }

    /// Judged on the cluster points, with the same rule as [`Self::scan`].
    pub(crate) fn points(limit_points: PointSetEstimate, cluster_points: PointSetEstimate) -> Self {
        let overall = if !cluster_points.accepted.is_empty() {
            Status::Holds
        } else if cluster_points
            .evidence
            .iter()
            .all(|e| e.points.iter().any(|p| p.status == Status::Fails))
        {
            Status::Fails
        } else {
            Status::Inconclusive
        };
        Self::Points {
            limit_points,
            cluster_points,
            overall,
        }
    }

    pub fn overall(&self) -> Status {
        match self {
            Self::Convergence(r) => r.overall,
            Self::Scan { overall, .. } | Self::Points { overall, .. } => *overall,
        }
    }
}

/// Twelve significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn point(p: &Point) -> String {
    p.0.iter().map(|&c| num(c)).collect::<Vec<_>>().join(";")
}

const HEADER: &str = "eps,alpha,block_r,block_average,offending,oracle_status,overall";

fn convergence_rows(out: &mut String, rep: &ConvergenceReport, prefix: &str) {
    for p in &rep.points {
        let head = format!("{prefix}{},{}", num(p.eps), num(p.alpha));
        let status = p.status();
        if p.block_averages.is_empty() {
            let _ = writeln!(out, "{head},,,{},{status},{}", !p.offending.is_empty(), rep.overall);
            continue;
        }
        for (i, &avg) in p.block_averages.iter().enumerate() {
            let r = i + 1;
            let off = p.offending.binary_search(&r).is_ok();
            let _ = writeln!(out, "{head},{r},{},{off},{status},{}", num(avg), rep.overall);
        }
    }
}

pub fn render_csv(report: &ScenarioReport) -> String {
    let mut out = String::new();
    match report {
        ScenarioReport::Convergence(rep) => {
            let _ = writeln!(out, "{HEADER}");
            convergence_rows(&mut out, rep, "");
        }
        ScenarioReport::Scan { scan, .. } => {
            let _ = writeln!(out, "candidate,{HEADER}");
            for rep in &scan.reports {
                let c = rep.target.as_ref().map(point).unwrap_or_default();
                convergence_rows(&mut out, rep, &format!("{c},"));
            }
        }
        ScenarioReport::Points {
            limit_points,
            cluster_points,
            ..
        } => {
            let _ = writeln!(out, "scan,candidate,eps,alpha,status,oracle_status,accepted");
            for (name, est) in [("limit", limit_points), ("cluster", cluster_points)] {
                for e in &est.evidence {
                    for p in &e.points {
                        let _ = writeln!(
                            out,
                            "{name},{},{},{},{},{},{}",
                            point(&e.candidate),
                            num(p.eps),
                            num(p.alpha),
                            p.status,
                            p.oracle.status,
                            e.accepted
                        );
                    }
                }
            }
        }
    }
    out
}

pub fn render_json(report: &ScenarioReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
    s.push('\n');
    s
}

pub fn render(report: &ScenarioReport, format: Format) -> String {
    match format {
        Format::Csv => render_csv(report),
        Format::Json => render_json(report),
    }
}
