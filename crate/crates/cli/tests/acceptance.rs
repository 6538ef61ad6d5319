use std::time::{Duration, Instant};

use tensorhom_cli::suites::{self, SuiteReport};
use tensorhom_core::Error;

const SEED: u64 = 20240611;

type Suite = Box<dyn FnOnce() -> Result<SuiteReport, Error>>;

struct Line {
    criterion: usize,
    pass: bool,
    text: String,
}

fn timed(
    criterion: usize,
    limit: Option<Duration>,
    f: impl FnOnce() -> Result<SuiteReport, Error>,
) -> (Line, Option<SuiteReport>) {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let limit_text = limit.map_or_else(|| "none".to_string(), |l| format!("{}s", l.as_secs()));
    match result {
        Ok(r) => {
            let pass = r.pass && in_time;
            let text = format!(
                "{} criterion {criterion} [{}] instances={} elapsed={:.2}s limit={limit_text}",
                if pass { "PASS" } else { "FAIL" },
                r.claim,
                r.instances,
                elapsed.as_secs_f64(),
            );
            (Line { criterion, pass, text }, Some(r))
        }
        Err(e) => {
            let text = format!("FAIL criterion {criterion} error={e} elapsed={:.2}s", elapsed.as_secs_f64());
            (Line { criterion, pass: false, text }, None)
        }
    }
}

fn main() {
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    let runs: Vec<(usize, Option<Duration>, Suite)> = vec![
        (1, min(2), Box::new(|| suites::oracle_identity(SEED, 200))),
        (2, min(2), Box::new(|| suites::dg_lie(SEED, 100))),
        (3, min(2), Box::new(|| suites::bidifferential(SEED, 200))),
        (4, min(1), Box::new(|| suites::classical_oracles(SEED))),
        (5, min(1), Box::new(suites::unital_vanishing)),
        (6, min(5), Box::new(suites::exterior_blocks)),
        (7, min(5), Box::new(suites::clifford_table)),
        (8, min(1), Box::new(|| suites::toolkit(SEED))),
    ];
    for (c, limit, f) in runs {
        let (line, report) = timed(c, limit, f);
        println!("{}", line.text);
        if !line.pass {
            if let Some(r) = &report {
                println!("  detail: {}", serde_json::to_string(&r.detail).unwrap());
            }
        }
        lines.push(line);
        reports.extend(report);
    }

    let start = Instant::now();
    let first = serde_json::to_string_pretty(&reports).unwrap();
    let second = suites::full_suite(SEED).map(|r| serde_json::to_string_pretty(&r).unwrap());
    let identical = second.as_ref().is_ok_and(|s| *s == first);
    let text = format!(
        "{} criterion 9 [determinism] bytes={} identical={identical} elapsed={:.2}s limit=none",
        if identical { "PASS" } else { "FAIL" },
        first.len(),
        start.elapsed().as_secs_f64(),
    );
    println!("{text}");
    lines.push(Line { criterion: 9, pass: identical, text });

    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.criterion).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
