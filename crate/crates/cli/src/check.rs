use std::fmt;
use std::str::FromStr;

use phasewall::freepart::{run_free_suite, FreeCheck, ORACLE_TOL};
use phasewall::residual::{run_suite, ResidualError, ResidualReport, Suite};

use crate::fmt17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteSel {
    All,
    Pde,
    Hrhetc,
    Showeqn,
    Ops,
    Free,
    Star,
}

impl SuiteSel {
    fn residual_suites(self) -> Vec<Suite> {
        match self {
            SuiteSel::All => Suite::ALL.to_vec(),
            SuiteSel::Pde => vec![Suite::Pde],
            SuiteSel::Hrhetc => vec![Suite::Hrhetc],
            SuiteSel::Showeqn => vec![Suite::Showeqn],
            SuiteSel::Ops => vec![Suite::Ops],
            SuiteSel::Star => vec![Suite::Star],
            SuiteSel::Free => vec![],
        }
    }

    fn runs_free(self) -> bool {
        matches!(self, SuiteSel::All | SuiteSel::Free)
    }
}

impl FromStr for SuiteSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <SuiteSel as clap::ValueEnum>::from_str(s, true)
            .map_err(|_| format!("unknown suite `{s}`; expected all, pde, hrhetc, showeqn, ops, free or star"))
    }
}

impl fmt::Display for SuiteSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = clap::ValueEnum::to_possible_value(self).expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    /// override applied to every report, if any
    pub tolerance: Option<f64>,
    pub reports: Vec<ResidualReport>,
    pub free: Vec<FreeCheck>,
    pub failures: usize,
    pub pass: bool,
}

pub fn run_check(sel: SuiteSel, tolerance: Option<f64>) -> Result<CheckOutcome, ResidualError> {
    let mut reports = Vec::new();
    for s in sel.residual_suites() {
        reports.extend(run_suite(s)?);
    }
    if let Some(t) = tolerance {
        reports = reports.into_iter().map(|r| r.with_tolerance(t)).collect();
    }
    let free = if sel.runs_free() {
        run_free_suite(tolerance.unwrap_or(ORACLE_TOL))
    } else {
        Vec::new()
    };
    let failures = reports.iter().filter(|r| !r.pass).count() + free.iter().filter(|c| !c.pass).count();
    Ok(CheckOutcome {
        suite: sel.to_string(),
        tolerance,
        reports,
        free,
        failures,
        pass: failures == 0,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn report_line(r: &ResidualReport) -> String {
    let eq = serde_json::to_value(r.equation).expect("equation serializes");
    format!(
        "{} {} {} ratio={} max_residual={} normalization={}",
        verdict(r.pass),
        eq.as_str().unwrap_or_default(),
        r.case,
        fmt17(r.ratio),
        fmt17(r.max_residual),
        fmt17(r.normalization)
    )
}

pub fn free_line(c: &FreeCheck) -> String {
    format!("{} free {}: {}", verdict(c.pass), c.name, c.detail)
}

impl CheckOutcome {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&report_line(r));
            out.push('\n');
        }
        for c in &self.free {
            out.push_str(&free_line(c));
            out.push('\n');
        }
        out.push_str(&format!("{} failure(s)\n", self.failures));
        out
    }

    /// One line per failing case.
    pub fn failure_lines(&self) -> Vec<String> {
        self.reports
            .iter()
            .filter(|r| !r.pass)
            .map(report_line)
            .chain(self.free.iter().filter(|c| !c.pass).map(free_line))
            .collect()
    }
}
