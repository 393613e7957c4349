use clap::Parser;

fn main() {
    let cli = eigenbounds::cli::Cli::parse();
    std::process::exit(eigenbounds::cli::run(cli));
}
