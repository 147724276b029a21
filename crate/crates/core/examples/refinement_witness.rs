//! Searches small grafts for a factor-component whose own partition is
//! strictly coarser than the classes the whole graft induces on it.

use graftkl::cli::serialize_graft;
use graftkl::oracle::{find_proper_refinement_witness, instance_stream, StreamParams};
use graftkl::refinement_report;

fn main() -> graftkl::Result<()> {
    let stream = instance_stream(&StreamParams::exhaustive(6))?;
    let Some((graft, component)) = find_proper_refinement_witness(stream)? else {
        println!("no witness with at most six vertices");
        return Ok(());
    };
    let g = graft.graph();
    print!("{}", serialize_graft(&graft));
    for entry in refinement_report(&graft)?.iter().filter(|e| e.component == component) {
        let show = |classes: &[graftkl::VertexSet]| classes.iter().map(|c| g.describe(c)).collect::<Vec<_>>().join(" ");
        println!("in the whole graft: {}", show(&entry.global));
        println!("on its own:         {}", show(&entry.local));
    }
    Ok(())
}
