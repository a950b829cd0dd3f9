//! One solve of the nine-charge helix in a 4 Å sphere, reported as JSON.
//!
//! ```text
//! cargo run --release --example helix_sphere -- [level]
//! ```

use bipb::app::{self, OutputFormat, RunConfig};

fn main() -> bipb::Result<()> {
    let level =
        std::env::args().nth(1).map_or(Ok(3), |s| s.parse()).map_err(|e| bipb::Error::Config(format!("{e}")))?;
    let report = app::run_solve(&RunConfig::helix_sphere(level))?;
    print!("{}", app::emit_report(&report, OutputFormat::Json));
    Ok(())
}
