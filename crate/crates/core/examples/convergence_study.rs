//! Surface potential error and its observed order over icosphere levels.
//!
//! ```text
//! cargo run --release --example convergence_study -- 2 3 4
//! ```

use bipb::app::{self, OutputFormat, RunConfig};

fn main() -> bipb::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let mut levels: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if levels.is_empty() {
        levels = vec![1, 2, 3];
    }
    let table = app::run_convergence_study(&RunConfig::helix_sphere(0), &levels)?;
    print!("{}", app::emit_study(&table, OutputFormat::Human));
    println!();
    print!("{}", app::emit_study(&table, OutputFormat::Csv));
    Ok(())
}
