use clap::Parser;

fn main() {
    let cli = chebydyn_cli::Cli::parse();
    std::process::exit(chebydyn_cli::run(cli));
}
