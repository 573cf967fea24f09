use clap::Parser;

use pc_bounds::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
