use serde::Serialize;
use serde_json::Value;

use crate::config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ProbabilisticPass,
    Vacuous,
    Timeout,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ProbabilisticPass => "probabilistic-pass",
            Status::Vacuous => "vacuous",
            Status::Timeout => "timeout",
            Status::Fail => "fail",
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Status::Pass | Status::ProbabilisticPass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub name: String,
    pub status: Status,
    pub evidence: Value,
    /// Seconds; omitted for reproducible reports.
    pub wall_time: Option<f64>,
    pub paper_ref: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub probabilistic_pass: usize,
    pub vacuous: usize,
    pub timeout: usize,
    pub fail: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: Config,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

impl Report {
    pub fn new(config: Config, tasks: Vec<TaskReport>) -> Self {
        let count = |s: Status| tasks.iter().filter(|t| t.status == s).count();
        let exit_code = if count(Status::Fail) > 0 {
            EXIT_FAIL
        } else if count(Status::Timeout) > 0 {
            EXIT_TIMEOUT
        } else {
            0
        };
        let summary = Summary {
            total: tasks.len(),
            pass: count(Status::Pass),
            probabilistic_pass: count(Status::ProbabilisticPass),
            vacuous: count(Status::Vacuous),
            timeout: count(Status::Timeout),
            fail: count(Status::Fail),
            exit_code,
        };
        Report { config, tasks, summary }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn task(&self, name: &str) -> Option<&TaskReport> {
        self.tasks.iter().find(|t| t.name == name)
    }
}
