//! Command line front end: commands over a parsed graft, producing a JSON
//! result tree and optionally a Graphviz drawing.
//!
//! Every result has the shape `{"format": "graftkl/1", "command": ...,
//! "result": ...}`. Vertices are written by name and edges as name pairs.

pub mod document;
pub mod drawing;

use serde_json::{json, Value};

use crate::distance::{dist_with, distance_table_with};
use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::join::{is_minimum_join, JoinSolver};
use crate::oracle::suite::{Instance, ALL_CHECKS};
use crate::oracle::{instance_stream, Bounds, StreamParams};
use crate::sebo::{sebo_decomposition_with, verify_sebo_with};
use crate::structure::{factor_components_with, is_comb_bipartite, kl_classes_of_component, kl_partition_with, refinement_report_with};

pub use document::{parse_graft, parse_join, serialize_graft, GraftDocument};
pub use drawing::{emit_drawing, Grouping};

pub const OUTPUT_FORMAT: &str = "graftkl/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Nu,
    MinJoin,
    Dist,
    Allowed,
    Components,
    Kl,
    Sebo,
    Comb,
    Refine,
    Verify,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Nu,
        Command::MinJoin,
        Command::Dist,
        Command::Allowed,
        Command::Components,
        Command::Kl,
        Command::Sebo,
        Command::Comb,
        Command::Refine,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Nu => "nu",
            Command::MinJoin => "min-join",
            Command::Dist => "dist",
            Command::Allowed => "allowed",
            Command::Components => "components",
            Command::Kl => "kl",
            Command::Sebo => "sebo",
            Command::Comb => "comb",
            Command::Refine => "refine",
            Command::Verify => "verify",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub root: Option<String>,
    pub from: Option<String>,
    pub to: Option<String>,
    /// Contents of a join file.
    pub join: Option<String>,
    pub draw: bool,
    /// Oracle vertex bound for `verify` on a file; exhaustive size for
    /// `verify` without one.
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Number of random grafts for `verify` without a file.
    pub count: Option<usize>,
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Value,
    /// False when a verification failed.
    pub ok: bool,
    pub drawing: Option<String>,
}

impl Outcome {
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.output).expect("plain values") + "\n"
    }
}

fn names(g: &Graph, set: &VertexSet) -> Value {
    json!(set.iter().map(|&v| g.name(v)).collect::<Vec<_>>())
}

fn edges(g: &Graph, set: &EdgeSet) -> Value {
    json!(set
        .iter()
        .map(|&id| {
            let e = g.edge(id).expect("own edge");
            [g.name(e.u), g.name(e.v)]
        })
        .collect::<Vec<_>>())
}

fn wrap(command: Command, result: Value, ok: bool, drawing: Option<String>) -> Outcome {
    Outcome { output: json!({ "format": OUTPUT_FORMAT, "command": command.name(), "result": result }), ok, drawing }
}

fn partition_drawing(solver: &JoinSolver<'_>) -> String {
    emit_drawing(solver.graft(), solver.allowed_edges(), Grouping::Partition(&kl_partition_with(solver)))
}

fn required<'a>(value: &'a Option<String>, flag: &str, command: Command) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| Error::Usage(format!("`{}` requires --{flag}", command.name())))
}

/// Runs a command on a graft. `verify` accepts `None` and then checks the
/// seeded instance stream instead.
pub fn run_command(command: Command, graft: Option<&Graft>, options: &Options) -> Result<Outcome> {
    let Some(graft) = graft else {
        return match command {
            Command::Verify => verify_stream(options),
            _ => Err(Error::Usage(format!("`{}` needs a graft file", command.name()))),
        };
    };
    let g = graft.graph();
    let solver = JoinSolver::new(graft);
    let mut ok = true;
    let result = match command {
        Command::Nu => json!(solver.nu()),
        Command::MinJoin => {
            let f = solver.min_join();
            json!({ "size": f.len(), "edges": edges(g, f) })
        }
        Command::Dist => match (&options.from, &options.to) {
            (Some(x), Some(y)) => {
                let (vx, vy) = (g.vertex(x)?, g.vertex(y)?);
                json!({ "from": x, "to": y, "dist": dist_with(&solver, vx, vy)? })
            }
            (None, None) => json!(distance_table_with(&solver)
                .iter()
                .map(|(x, y, d)| json!({ "from": g.name(x), "to": g.name(y), "dist": d }))
                .collect::<Vec<_>>()),
            _ => return Err(Error::Usage("--from and --to go together".into())),
        },
        Command::Allowed => edges(g, solver.allowed_edges()),
        Command::Components => json!(factor_components_with(&solver)
            .iter()
            .map(|h| json!({ "vertices": names(g, &h.vertices), "edges": edges(g, &h.edges), "allowed": edges(g, &h.allowed) }))
            .collect::<Vec<_>>()),
        Command::Kl => {
            let p = kl_partition_with(&solver);
            let mut per_component = Vec::new();
            for h in &p.components {
                let classes: Vec<Value> = kl_classes_of_component(&p, h)?.iter().map(|c| names(g, c)).collect();
                per_component.push(json!({ "vertices": names(g, &h.vertices), "classes": classes }));
            }
            json!({
                "classes": p.classes.iter().map(|c| names(g, c)).collect::<Vec<_>>(),
                "components": per_component,
            })
        }
        Command::Sebo => {
            let root = g.vertex(required(&options.root, "root", command)?)?;
            let join = match &options.join {
                Some(text) => {
                    let f = parse_join(text, g)?;
                    if !is_minimum_join(graft, &f)? {
                        return Err(Error::NotMinimumJoin("the join file is not a minimum join".into()));
                    }
                    f
                }
                None => solver.min_join().clone(),
            };
            let d = sebo_decomposition_with(&solver, &join, root)?;
            let checks = verify_sebo_with(&solver, &d);
            ok = checks.iter().all(|c| c.passed);
            let q = &d.quotient;
            let result = json!({
                "root": g.name(root),
                "join": edges(g, &d.join),
                "level0": names(g, &d.level0),
                "negative": names(g, &d.negative),
                "core": names(g, &d.core),
                "components": d.components.iter().map(|k| json!({
                    "vertices": names(g, &k.vertices),
                    "contracted": q.name(k.contracted),
                    "cut_join": edges(g, &k.cut_join),
                    "anchor": k.anchor.map(|a| json!({ "r": g.name(a.r_k), "s": g.name(a.s_k) })),
                })).collect::<Vec<_>>(),
                "quotient": {
                    "vertices": q.names(),
                    "terminals": names(q, &d.quotient_terminals),
                    "edges": edges(q, &q.edge_ids()),
                },
                "checks": checks,
            });
            let drawing = options
                .draw
                .then(|| emit_drawing(graft, solver.allowed_edges(), Grouping::Decomposition(&d)));
            return Ok(wrap(command, result, ok, drawing));
        }
        Command::Comb => json!(is_comb_bipartite(graft)
            .iter()
            .map(|v| json!({ "spine": names(g, &v.spine), "tooth": names(g, &v.tooth) }))
            .collect::<Vec<_>>()),
        Command::Refine => json!(refinement_report_with(&solver)?
            .iter()
            .map(|e| json!({
                "component": names(g, &e.component),
                "global": e.global.iter().map(|c| names(g, c)).collect::<Vec<_>>(),
                "local": e.local.iter().map(|c| names(g, c)).collect::<Vec<_>>(),
                "refines": e.refines,
                "proper": e.proper,
            }))
            .collect::<Vec<_>>()),
        Command::Verify => {
            let bounds = Bounds { max_vertices: options.max_n.unwrap_or(Bounds::default().max_vertices), ..Bounds::default() };
            let items = Instance::with_bounds(graft, bounds)?.run_all();
            ok = items.iter().all(|i| i.passed);
            json!(items)
        }
    };
    let drawing = options.draw.then(|| partition_drawing(&solver));
    Ok(wrap(command, result, ok, drawing))
}

fn verify_stream(options: &Options) -> Result<Outcome> {
    let params = StreamParams {
        exhaustive_max_n: options.max_n.unwrap_or(4),
        random_count: options.count.unwrap_or(100),
        random_max_n: 7,
        seed: options.seed,
        ..StreamParams::default()
    };
    let mut failures = vec![0usize; ALL_CHECKS.len()];
    let mut first: Vec<Option<String>> = vec![None; ALL_CHECKS.len()];
    let (mut checked, mut skipped) = (0usize, 0usize);
    for graft in instance_stream(&params)? {
        let Ok(instance) = Instance::new(&graft) else {
            skipped += 1;
            continue;
        };
        checked += 1;
        for (i, item) in instance.run_all().into_iter().enumerate() {
            if !item.passed {
                failures[i] += 1;
                first[i].get_or_insert_with(|| format!("{}\n{}", item.detail, serialize_graft(&graft)));
            }
        }
    }
    let ok = failures.iter().all(|&f| f == 0);
    let checks: Vec<Value> = ALL_CHECKS
        .iter()
        .enumerate()
        .map(|(i, name)| json!({ "name": name, "passed": failures[i] == 0, "failures": failures[i], "first_failure": first[i] }))
        .collect();
    let result = json!({
        "exhaustive_max_n": params.exhaustive_max_n,
        "random": params.random_count,
        "seed": params.seed,
        "checked": checked,
        "skipped": skipped,
        "checks": checks,
    });
    Ok(wrap(Command::Verify, result, ok, None))
}
