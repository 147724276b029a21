use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use graftkl::cli::{parse_graft, run_command, Command, Options};

/// Minimum joins, distances and Kotzig-Lovász classes of grafts.
///
/// Exit status: 0 on success, 1 on usage or input errors, 2 when a
/// verification fails.
#[derive(Parser)]
#[command(name = "graftkl", version)]
struct Args {
    /// nu, min-join, dist, allowed, components, kl, sebo, comb, refine or verify
    command: String,
    /// Graft file; optional for `verify`, which then checks a seeded stream
    file: Option<PathBuf>,
    #[arg(long)]
    root: Option<String>,
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    /// Join file for `sebo`, one edge per line
    #[arg(long)]
    join: Option<PathBuf>,
    /// Write a Graphviz drawing to this path
    #[arg(long)]
    draw: Option<PathBuf>,
    /// Oracle vertex bound, or exhaustive size for stream verification
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random grafts for stream verification
    #[arg(long)]
    count: Option<usize>,
}

fn run(args: Args) -> Result<bool, String> {
    let command: Command = args.command.parse().map_err(|e| format!("{e}"))?;
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let graft = match &args.file {
        Some(p) => Some(parse_graft(&read(p)?).map_err(|e| format!("{}:{e}", p.display()))?),
        None => None,
    };
    let options = Options {
        root: args.root,
        from: args.from,
        to: args.to,
        join: args.join.as_ref().map(read).transpose()?,
        draw: args.draw.is_some(),
        max_n: args.max_n,
        seed: args.seed,
        count: args.count,
    };
    let outcome = run_command(command, graft.as_ref(), &options).map_err(|e| e.to_string())?;
    print!("{}", outcome.render());
    if let (Some(path), Some(text)) = (&args.draw, &outcome.drawing) {
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(message) => {
            eprintln!("graftkl: {message}");
            ExitCode::from(1)
        }
    }
}
