//! Acceptance criteria 1-10: one PASS/FAIL line each, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qwreath::checks::{run_suite, Budget, Status};
use qwreath::Params;

const MATRIX: &[(u64, u64, u64)] = &[(5, 1, 0), (5, 2, 0), (5, 2, 2), (7, 3, 0)];
const SEED: u64 = 20240601;

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    ds: &'static [usize],
    ns: &'static [usize],
    matrix: &'static [(u64, u64, u64)],
    limit: Duration,
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { number: 1, title: "splitting lemma", checks: &["splitting"], ds: &[2, 3], ns: &[1], matrix: MATRIX, limit: secs(5) },
        Criterion {
            number: 2,
            title: "PBW conditions",
            checks: &["pbw_p4", "pbw_p6", "pbw_p7"],
            ds: &[3],
            ns: &[1],
            matrix: MATRIX,
            limit: secs(60),
        },
        Criterion { number: 3, title: "associativity fuzz", checks: &["associativity_fuzz"], ds: &[3], ns: &[1], matrix: MATRIX, limit: secs(60) },
        Criterion {
            number: 4,
            title: "worked Schur example",
            checks: &["yA_example"],
            ds: &[4],
            ns: &[2],
            matrix: &[(5, 1, 0)],
            limit: secs(30),
        },
        Criterion {
            number: 5,
            title: "module relations on tensor space",
            checks: &["braid_on_module", "quadratic_on_module", "wreath_on_module", "action_compat"],
            ds: &[3],
            ns: &[1, 2],
            matrix: MATRIX,
            limit: secs(120),
        },
        Criterion {
            number: 6,
            title: "Gelfand-Graev dictionary",
            checks: &["vgg_dictionary", "gauss_independence"],
            ds: &[2],
            ns: &[1],
            matrix: &[(5, 1, 0), (5, 2, 0), (7, 3, 0)],
            limit: secs(10),
        },
        Criterion {
            number: 7,
            title: "corner algebra",
            checks: &["upsilon_hom", "idemlem_b"],
            ds: &[2],
            ns: &[1],
            matrix: MATRIX,
            limit: secs(20),
        },
        Criterion { number: 8, title: "Iwahori descent", checks: &["kms_iwahori"], ds: &[2], ns: &[1, 2], matrix: MATRIX, limit: secs(20) },
        Criterion { number: 9, title: "Bernstein residual", checks: &["bernstein"], ds: &[2], ns: &[1], matrix: MATRIX, limit: secs(10) },
        Criterion {
            number: 10,
            title: "Schur round trip",
            checks: &["schur_roundtrip"],
            ds: &[2, 3],
            ns: &[1, 2],
            matrix: MATRIX,
            limit: secs(60),
        },
    ]
}

fn main() -> ExitCode {
    let budget = Budget::default();
    let mut all_ok = true;
    for c in criteria() {
        let mut jobs = Vec::new();
        for &name in c.checks {
            for &(q, n, k) in c.matrix {
                for &d in c.ds {
                    for &big_n in c.ns {
                        jobs.push((name.to_string(), Params::new(q, n, k, d, big_n).expect("legal parameters")));
                    }
                }
            }
        }
        let start = Instant::now();
        let reports = run_suite(&jobs, &budget, SEED);
        let elapsed = start.elapsed();
        let mut cases = 0;
        let mut problems = Vec::new();
        let mut notes = Vec::new();
        for (job, r) in jobs.iter().zip(&reports) {
            match r {
                Ok(r) => {
                    cases += r.cases;
                    if r.status == Status::Fail {
                        problems.push(format!("{} at {:?}: {}", r.name, job.1, r.witness.clone().unwrap_or_default()));
                    }
                    notes.extend(r.notes.iter().cloned());
                }
                Err(e) => problems.push(format!("{} at {:?}: {e}", job.0, job.1)),
            }
        }
        if elapsed > c.limit {
            problems.push(format!("runtime {:.1}s exceeds {}s", elapsed.as_secs_f64(), c.limit.as_secs()));
        }
        let ok = problems.is_empty();
        all_ok &= ok;
        println!(
            "criterion {:>2}: {}  {} ({} jobs, {} cases, {:.2}s of {}s)",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            jobs.len(),
            cases,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for p in &problems {
            let short: String = p.chars().take(600).collect();
            println!("    failure: {short}");
        }
        for n in &notes {
            let short: String = n.chars().take(240).collect();
            println!("    note: {short}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
