//! Reads a graft file (or a built-in one), prints its classes as JSON and
//! a Graphviz drawing.
//!
//!     cargo run --example graft_file -- tests/corpus/03-square.graft

use graftkl::cli::{parse_graft, run_command, Command, Options};

const DEFAULT: &str = "graft v1\nv 1 t\nv 2 t\nv 3 t\nv 4 t\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let graft = parse_graft(&text)?;
    let out = run_command(Command::Kl, Some(&graft), &Options { draw: true, ..Default::default() })?;
    print!("{}", out.render());
    print!("{}", out.drawing.unwrap_or_default());
    Ok(())
}
