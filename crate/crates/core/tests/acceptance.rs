//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use graftkl::cli::{parse_graft, run_command, Command, GraftDocument, Options};
use graftkl::oracle::suite::{self, Instance};
use graftkl::oracle::{find_proper_refinement_witness, instance_stream, StreamParams};
use graftkl::structure::{refinement_report, relation_matrix};
use graftkl::{CheckItem, Graft};
use rayon::prelude::*;

const RANDOM_GRAFTS: usize = 10_000;
const RANDOM_MAX_N: usize = 10;
const SEED: u64 = 20_240_601;
const CIRCUIT_MAX_EDGES: usize = 10;

struct Outcome {
    passed: bool,
    summary: String,
}

fn exhaustive() -> Vec<Graft> {
    instance_stream(&StreamParams::exhaustive(6)).unwrap().collect()
}

fn random() -> Vec<Graft> {
    instance_stream(&StreamParams::random(RANDOM_GRAFTS, RANDOM_MAX_N, SEED)).unwrap().collect()
}

/// Runs the named checks over `grafts`, counting instances and failures.
fn sweep(grafts: &[Graft], checks: &[&str]) -> Outcome {
    let failures = AtomicUsize::new(0);
    let first = std::sync::Mutex::new(None::<String>);
    grafts.par_iter().for_each(|g| {
        let inst = match Instance::new(g) {
            Ok(i) => i,
            Err(e) => {
                failures.fetch_add(1, Ordering::Relaxed);
                first.lock().unwrap().get_or_insert_with(|| e.to_string());
                return;
            }
        };
        for name in checks {
            let item: CheckItem = inst.run(name).unwrap();
            if !item.passed {
                failures.fetch_add(1, Ordering::Relaxed);
                first
                    .lock()
                    .unwrap()
                    .get_or_insert_with(|| format!("{}: {}\n{}", item.name, item.detail, graftkl::cli::serialize_graft(g)));
            }
        }
    });
    let f = failures.into_inner();
    let mut summary = format!("{} instances, {} failing checks", grafts.len(), f);
    if let Some(msg) = first.into_inner().unwrap() {
        summary.push_str(&format!("; first: {msg}"));
    }
    Outcome { passed: f == 0, summary }
}

fn transitive(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    (0..n).all(|u| (0..n).all(|v| !rel[u][v] || (0..n).all(|w| !rel[v][w] || rel[u][w])))
}

fn transitivity(exhaustive: &[Graft], random: &[Graft]) -> Outcome {
    let from_suite = sweep(exhaustive, &[suite::TRANSITIVITY]);
    let bad = random.par_iter().filter(|g| !transitive(&relation_matrix(g))).count();
    Outcome {
        passed: from_suite.passed && bad == 0,
        summary: format!(
            "exhaustive: {}; random (n <= {RANDOM_MAX_N}, seed {SEED}): {} grafts, {bad} counterexamples",
            from_suite.summary,
            random.len()
        ),
    }
}

fn matching_reduction(exhaustive: &[Graft]) -> Outcome {
    let full: Vec<Graft> = exhaustive
        .iter()
        .filter(|g| g.terminals().len() == g.graph().vertex_count() && graftkl::oracle::is_factorizable(g.graph()))
        .cloned()
        .collect();
    let mut out = sweep(&full, &[suite::MATCHING_REDUCTION]);
    out.passed &= !full.is_empty();
    out.summary = format!("factorizable with T = V: {}", out.summary);
    out
}

fn refinement(exhaustive: &[Graft], random: &[Graft]) -> Outcome {
    let base = sweep(exhaustive, &[suite::REFINEMENT]);
    let bad_random = random
        .par_iter()
        .filter(|g| !refinement_report(g).map(|r| r.iter().all(|e| e.refines)).unwrap_or(false))
        .count();
    let witness = match find_proper_refinement_witness(exhaustive.iter().cloned()) {
        Ok(Some((g, h))) => format!(
            "proper refinement witness on {} vertices, component {}",
            g.graph().vertex_count(),
            g.graph().describe(&h)
        ),
        Ok(None) => "no proper refinement among graphs with at most 6 vertices".to_string(),
        Err(e) => format!("witness search error: {e}"),
    };
    Outcome {
        passed: base.passed && bad_random == 0,
        summary: format!("{}; random: {bad_random} failures; {witness}", base.summary),
    }
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "graft"))
        .collect();
    files.sort();
    files
}

fn cli_round_trip() -> Outcome {
    let files = corpus();
    let mut problems = Vec::new();
    for path in &files {
        let text = std::fs::read_to_string(path).unwrap();
        let doc = match GraftDocument::parse(&text) {
            Ok(d) => d,
            Err(e) => {
                problems.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        if doc.serialize() != text || GraftDocument::parse(&doc.serialize()).as_ref() != Ok(&doc) {
            problems.push(format!("{}: not a serialization fixed point", path.display()));
        }
        let graft = parse_graft(&text).unwrap();
        if GraftDocument::from_graft(&graft).to_graft().as_ref() != Ok(&graft) {
            problems.push(format!("{}: graft changed through a document", path.display()));
        }
        for c in Command::ALL {
            let root = graft.graph().names().first().cloned();
            let opts = Options { root, ..Default::default() };
            let run = |_| run_command(c, Some(&graft), &opts).map(|o| o.render()).unwrap_or_else(|e| e.to_string());
            if c != Command::Verify && run(0) != run(1) {
                problems.push(format!("{}: `{}` output differs between runs", path.display(), c.name()));
            }
        }
    }
    let exe = env!("CARGO_BIN_EXE_graftkl");
    let seeded = || {
        Process::new(exe)
            .args(["verify", "--max-n", "4", "--count", "200", "--seed", "17"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (seeded(), seeded());
    if a.stdout != b.stdout || !a.status.success() {
        problems.push(format!("seeded verify: identical {}, status {}", a.stdout == b.stdout, a.status));
    }
    Outcome {
        passed: files.len() == 20 && problems.is_empty(),
        summary: match problems.first() {
            None => format!("{} corpus files, all commands deterministic, seeded verify reproducible", files.len()),
            Some(p) => format!("{} corpus files, {} problems; first: {p}", files.len(), problems.len()),
        },
    }
}

fn main() {
    // `cargo test` passes harness flags; a name filter skips the suite
    // unless it mentions it.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let start = Instant::now();
    let ex = exhaustive();
    let rnd = random();
    let circuit_set: Vec<Graft> = ex
        .iter()
        .chain(rnd.iter().take(2_000))
        .filter(|g| g.graph().edge_count() <= CIRCUIT_MAX_EDGES)
        .cloned()
        .collect();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("oracle equivalence on all grafts up to 6 vertices", Box::new(|| sweep(&ex, &[suite::ORACLE_EQUIVALENCE]))),
        ("distance independent of the minimum join", Box::new(|| sweep(&ex, &[suite::JOIN_INDEPENDENCE]))),
        ("circuit criterion for minimum joins", Box::new(|| sweep(&circuit_set, &[suite::CIRCUIT_CRITERION]))),
        ("transitivity of the class relation", Box::new(|| transitivity(&ex, &rnd))),
        ("distance decomposition for every join and root", Box::new(|| sweep(&ex, &[suite::DISTANCE_DECOMPOSITION]))),
        ("reduction to the perfect matching partition", Box::new(|| matching_reduction(&ex))),
        ("refinement inside factor-components", Box::new(|| refinement(&ex, &rnd))),
        (
            "structural property suites",
            Box::new(|| {
                sweep(
                    &ex,
                    &[
                        suite::COMB_EQUIVALENCE,
                        suite::COMB_PATH_TEETH,
                        suite::FACTOR_CONNECTED_DISTANCE,
                        suite::SPINE_TOOTH_DISTANCE,
                        suite::COMPONENT_IMAGE,
                        suite::PATH_LIFTING,
                    ],
                )
            }),
        ),
        ("command line round trip and determinism", Box::new(cli_round_trip)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        failed += usize::from(!out.passed);
        println!(
            "{} [{}] {name} ({:.1}s): {}",
            if out.passed { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64(),
            out.summary
        );
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
