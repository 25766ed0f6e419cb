use std::collections::VecDeque;
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use serde_json::json;
use thiserror::Error;

use crate::config::Config;
use crate::report::{Report, Status, TaskReport};
use crate::tasks::{self, Ctx, TaskSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("unknown task `{0}` (try --list)")]
    UnknownTask(String),
    #[error("no tasks given")]
    NoTasks,
}

/// Expand `all` and check every name against the registry.
pub fn resolve_tasks(names: &[String]) -> Result<Vec<&'static TaskSpec>, RunError> {
    if names.is_empty() {
        return Err(RunError::NoTasks);
    }
    let mut out: Vec<&'static TaskSpec> = Vec::new();
    for n in names {
        let add: Vec<&'static TaskSpec> = if n == "all" {
            tasks::REGISTRY.iter().collect()
        } else {
            vec![tasks::find(n).ok_or_else(|| RunError::UnknownTask(n.clone()))?]
        };
        for t in add {
            if !out.iter().any(|o| o.name == t.name) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// Run the tasks on `config.jobs` workers; entries come back in request order.
pub fn run_suite(names: &[String], config: &Config, timings: bool) -> Result<Report, RunError> {
    let specs = resolve_tasks(names)?;
    let global_deadline = Instant::now() + Duration::from_secs(config.global_timeout);
    let queue: Arc<Mutex<VecDeque<(usize, &'static TaskSpec)>>> = Arc::new(Mutex::new(specs.iter().copied().enumerate().collect()));
    let (tx, rx) = mpsc::channel();
    let workers: Vec<_> = (0..config.jobs.min(specs.len()))
        .map(|_| {
            let queue = queue.clone();
            let tx = tx.clone();
            let config = config.clone();
            thread::spawn(move || loop {
                let next = queue.lock().expect("queue lock").pop_front();
                let Some((idx, spec)) = next else { break };
                let report = run_one(spec, &config, global_deadline, timings);
                if tx.send((idx, report)).is_err() {
                    break;
                }
            })
        })
        .collect();
    drop(tx);
    let mut slots: Vec<Option<TaskReport>> = vec![None; specs.len()];
    for (idx, r) in rx {
        slots[idx] = Some(r);
    }
    for w in workers {
        let _ = w.join();
    }
    let tasks = slots.into_iter().map(|r| r.expect("every task reports")).collect();
    Ok(Report::new(config.clone(), tasks))
}

/// Run one task in its own thread so a runaway computation cannot hold the worker past its budget.
pub fn run_one(spec: &'static TaskSpec, config: &Config, global_deadline: Instant, timings: bool) -> TaskReport {
    let start = Instant::now();
    let budget = Duration::from_secs(config.timeout);
    let deadline = (start + budget).min(global_deadline);
    let finish = |status: Status, evidence: serde_json::Value| TaskReport {
        name: spec.name.to_string(),
        status,
        evidence,
        wall_time: timings.then(|| start.elapsed().as_secs_f64()),
        paper_ref: spec.claim.to_string(),
    };
    if deadline <= start {
        return finish(Status::Timeout, json!({ "reason": "global budget exhausted before start" }));
    }
    let ctx = Ctx::new(config, spec.name, deadline);
    let (tx, rx) = mpsc::channel();
    let run = spec.run;
    thread::spawn(move || {
        let _ = tx.send(tasks::execute(run, &ctx));
    });
    // the task watches its own deadline; the grace period covers work between checks
    let grace = Duration::from_secs(5);
    match rx.recv_timeout(deadline.saturating_duration_since(Instant::now()) + grace) {
        Ok(outcome) => finish(outcome.status, outcome.evidence),
        Err(mpsc::RecvTimeoutError::Timeout) => finish(Status::Timeout, json!({ "reason": "budget exhausted", "budget_seconds": budget.as_secs() })),
        Err(mpsc::RecvTimeoutError::Disconnected) => finish(Status::Fail, json!({ "certificate": "task panicked" })),
    }
}
