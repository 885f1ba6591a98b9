//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! appear in `cargo test` output; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use heckeprod::suites::{run, PropertyResult, Report, Suite, SuiteConfig};
use heckeprod::Mutation;

struct Outcome {
    ok: bool,
    summary: String,
}

/// Properties of `report` named in `ids`, each required to exist and to run
/// at least its paired number of cases. Restricted to `components` when
/// that is nonempty.
fn select<'a>(
    report: &'a Report,
    ids: &[(&str, usize)],
    components: &[&str],
) -> Result<Vec<&'a PropertyResult>, String> {
    let mut chosen = Vec::new();
    for &(id, min_cases) in ids {
        let matching: Vec<&PropertyResult> = report
            .properties
            .iter()
            .filter(|p| p.id == id)
            .filter(|p| components.is_empty() || components.contains(&p.component.as_str()))
            .collect();
        if matching.is_empty() {
            return Err(format!("property {id} missing from the {} report", report.suite));
        }
        if let Some(p) = matching.iter().find(|p| p.cases < min_cases) {
            return Err(format!("{id} [{}] ran {} cases, need {min_cases}", p.component, p.cases));
        }
        chosen.extend(matching);
    }
    Ok(chosen)
}

fn judge(
    report: &Report,
    ids: &[(&str, usize)],
    components: &[&str],
    elapsed: Duration,
    limit: Option<Duration>,
) -> Outcome {
    let chosen = match select(report, ids, components) {
        Ok(c) => c,
        Err(summary) => return Outcome { ok: false, summary },
    };
    let failing: Vec<String> = chosen
        .iter()
        .filter(|p| p.failed > 0)
        .map(|p| {
            let detail = p.first_counterexample.as_ref().map_or("", |c| c.detail.as_str());
            format!("{} [{}]: {detail}", p.id, p.component)
        })
        .collect();
    let cases: usize = chosen.iter().map(|p| p.cases).sum();
    let slow = limit.is_some_and(|l| elapsed > l);
    let mut summary = format!(
        "{} properties, {cases} cases, {:.1}s",
        chosen.len(),
        elapsed.as_secs_f64()
    );
    if let Some(l) = limit {
        summary.push_str(&format!(" (limit {}s)", l.as_secs()));
    }
    if let Some(f) = failing.first() {
        summary.push_str(&format!("; first failure {f}"));
    }
    Outcome {
        ok: failing.is_empty() && !slow,
        summary,
    }
}

fn timed(suite: Suite, config: &SuiteConfig) -> (Report, Duration) {
    let start = Instant::now();
    let report = run(suite, config).expect("valid configuration");
    (report, start.elapsed())
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_heckeprod"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn determinism_and_mutations() -> Outcome {
    let args = [
        "verify", "--suite", "all", "--seed", "42", "--cases", "5", "--format", "json",
    ];
    let (code_a, first) = cli(&args);
    let (code_b, second) = cli(&args);
    let parsed: Option<serde_json::Value> = serde_json::from_slice(&first).ok();
    let has_properties = parsed
        .as_ref()
        .and_then(|v| v.get("properties"))
        .and_then(|p| p.as_array())
        .is_some_and(|a| !a.is_empty());
    let mut problems = Vec::new();
    if code_a != Some(0) || code_b != Some(0) {
        problems.push(format!("unmutated runs exited {code_a:?}/{code_b:?}"));
    }
    if first != second {
        problems.push("identical configs gave different reports".to_string());
    }
    if !has_properties {
        problems.push("report is not JSON with properties".to_string());
    }
    let mut caught = Vec::new();
    for m in Mutation::ALL {
        let catchers: Vec<&str> = ["nilhecke", "gmodels", "l1l1"]
            .into_iter()
            .filter(|suite| {
                let (code, _) = cli(&[
                    "verify", "--suite", suite, "--seed", "7", "--cases", "10",
                    "--debug-mutation", m.name(),
                ]);
                code == Some(1)
            })
            .collect();
        if catchers.is_empty() {
            problems.push(format!("{} not caught", m.name()));
        }
        caught.push(format!("{} by {}", m.name(), catchers.join("+")));
    }
    Outcome {
        ok: problems.is_empty(),
        summary: format!(
            "{} report bytes stable; caught {}{}",
            first.len(),
            caught.join(", "),
            if problems.is_empty() {
                String::new()
            } else {
                format!("; {}", problems.join("; "))
            }
        ),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let nilhecke_config = SuiteConfig {
        seed: 42,
        cases: 200,
        max_degree: 8,
        ..SuiteConfig::default()
    };
    let (nh, nh_time) = timed(Suite::NilHecke, &nilhecke_config);
    let gm_config = SuiteConfig {
        seed: 42,
        cases: 100,
        ..SuiteConfig::default()
    };
    let (gm, gm_time) = timed(Suite::GModels, &gm_config);
    let l1_config = SuiteConfig {
        seed: 42,
        degree_bound: 12,
        ..SuiteConfig::default()
    };
    let (l1, l1_time) = timed(Suite::L1L1, &l1_config);

    // Suites run once; every criterion drawn from a suite is held to its
    // limit against that suite's whole runtime.
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "1 nil-Hecke relations and action morphism",
            judge(
                &nh,
                &[
                    ("defining-relations", 4),
                    ("special-elements", 4),
                    ("straighten-closed-form", 200),
                    ("act-morphism", 200),
                    ("faithfulness-on-source", 200),
                ],
                &[],
                nh_time,
                Some(secs(60)),
            ),
        ),
        (
            "2 kernel divisibility both ways",
            judge(
                &nh,
                &[("kernel-divisible-implies-vanishing", 100), ("kernel-vanishing-implies-divisible", 100)],
                &["n=1", "n=2", "n=3", "n=4"],
                nh_time,
                Some(secs(30)),
            ),
        ),
        (
            "3 K/L condition equivalence and unique witnesses",
            judge(&gm, &[("k-conditions", 100), ("l-conditions", 100)], &[], gm_time, Some(secs(60))),
        ),
        (
            "4 closure under crossings and generator actions",
            judge(
                &gm,
                &[
                    ("g4-membership", 100),
                    ("closure-xtilde", 100),
                    ("closure-tautilde", 100),
                    ("closure-tau1-tau2", 100),
                    ("closure-generator", 100),
                ],
                &[],
                gm_time,
                Some(secs(120)),
            ),
        ),
        (
            "5 Hecke relations and vanishing square",
            judge(
                &gm,
                &[("hecke-ex-tau", 100), ("hecke-tau-ex", 100), ("tau-squared-zero", 100)],
                &[],
                gm_time, None),
        ),
        (
            "6 braid relation on cube components",
            judge(&gm, &[("braid", 100)], &["21", "22"], gm_time, Some(secs(180))),
        ),
        (
            "7 crossing equivariance per generator family",
            judge(&gm, &[("equivariance", 100)], &[], gm_time, None),
        ),
        (
            "8 comparison with the Soergel model at degree 12",
            judge(
                &l1,
                &[
                    ("structures-and-tensor-dimensions", 1),
                    ("canonical-isomorphisms", 1),
                    ("phi-isomorphism", 1),
                    ("x-intertwining", 1),
                    ("tau-intertwining", 1),
                    ("hecke-relation-q2", 1),
                    ("tensor-products", 1),
                ],
                &[],
                l1_time,
                Some(secs(120)),
            ),
        ),
        (
            "9 weights, grading and nilpotence",
            judge(
                &l1,
                &[("weight-idempotents", 1), ("weight-blocks", 1), ("grading", 1), ("nilpotence", 1)],
                &[],
                l1_time,
                Some(secs(30)),
            ),
        ),
        ("10 CLI determinism and mutation sensitivity", determinism_and_mutations()),
    ];

    let mut all = true;
    for (name, outcome) in &criteria {
        all &= outcome.ok;
        let mark = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{mark} criterion {name}: {}", outcome.summary);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
