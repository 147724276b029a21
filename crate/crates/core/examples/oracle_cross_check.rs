//! Runs every named check on all grafts up to five vertices and prints a
//! tally per check.

use graftkl::oracle::suite::{Instance, ALL_CHECKS};
use graftkl::oracle::{instance_stream, StreamParams};

fn main() -> graftkl::Result<()> {
    let mut failures = [0usize; ALL_CHECKS.len()];
    let mut count = 0;
    for graft in instance_stream(&StreamParams::exhaustive(5))? {
        count += 1;
        for (i, item) in Instance::new(&graft)?.run_all().iter().enumerate() {
            failures[i] += usize::from(!item.passed);
        }
    }
    println!("{count} grafts");
    for (name, f) in ALL_CHECKS.iter().zip(failures) {
        println!("{name:<30} {f} failures");
    }
    Ok(())
}
