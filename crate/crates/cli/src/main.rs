use clap::Parser;

use weakint_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = weakint_cli::run(&cli.command) {
        eprintln!("weakint: {e}");
        std::process::exit(e.exit_code());
    }
}
