//! Property-verification harness over a seeded zoo of small instances.

pub mod checks;
pub mod report;
pub mod zoo;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, Once};

pub use report::{CheckReport, SkipReason, SuiteConfig, SuiteReport, Tally, Verdict};
pub use zoo::{digest_json, generate_zoo, Budgets, IdealKind, ZooInstance};

use crate::mutation::with_mutant;

thread_local! {
    static QUIET: Cell<bool> = const { Cell::new(false) };
}

/// Panics inside checks become verdicts; keep them off stderr.
fn install_quiet_hook() {
    static HOOK: Once = Once::new();
    HOOK.call_once(|| {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(move |info| {
            if !QUIET.with(|q| q.get()) {
                prev(info);
            }
        }));
    });
}

enum Job<'a> {
    Instance { z: &'a ZooInstance, ring_checks: bool },
    Global,
}

fn run_job(job: &Job, config: &SuiteConfig) -> Vec<CheckReport> {
    match job {
        Job::Instance { z, ring_checks } => {
            let mut out = checks::zoo_checks(z);
            if *ring_checks {
                out.extend(checks::ring_checks(z));
            }
            out
        }
        Job::Global => checks::global_checks(&config.budgets, config.seed),
    }
}

/// Run every check on the zoo for `config`, in parallel; the report is in
/// instance order and does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    install_quiet_hook();
    let zoo = generate_zoo(config.seed, config.count, &config.budgets);
    let mut seen = BTreeSet::new();
    let mut jobs: Vec<Job> = zoo
        .iter()
        .map(|z| Job::Instance { z, ring_checks: seen.insert(checks::ring_key(z).to_string()) })
        .collect();
    if !zoo.is_empty() {
        jobs.push(Job::Global);
    }
    let results: Vec<Mutex<Vec<CheckReport>>> = jobs.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                QUIET.with(|q| q.set(true));
                with_mutant(config.mutant, || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(job) = jobs.get(i) else { break };
                    let r = run_job(job, config);
                    *results[i].lock().expect("no poisoned results") = r;
                })
            });
        }
    });
    let checks = results.into_iter().flat_map(|m| m.into_inner().expect("no poisoned results")).collect();
    SuiteReport { config: config.clone(), checks }
}

/// Exit status for a finished suite: `0`, or `1` when anything failed.
pub fn exit_code(report: &SuiteReport) -> i32 {
    i32::from(report.has_failures())
}

/// Exit status for I/O trouble (reading inputs, writing reports).
pub const EXIT_IO: i32 = 3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_zoo() {
        let r = run_suite(&SuiteConfig::new(0, 0));
        assert!(r.checks.is_empty());
        assert_eq!(exit_code(&r), 0);
    }

    #[test]
    fn small_suite_is_clean_and_deterministic() {
        let cfg = SuiteConfig::new(0, 6);
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        assert_eq!(a.to_json_string(), b.to_json_string());
        for c in &a.checks {
            assert!(!c.verdict.is_fail(), "{} [{}]: {}", c.check, c.instance, c.detail);
        }
    }
}
