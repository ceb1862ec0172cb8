use clap::Parser;
use tempocover::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
