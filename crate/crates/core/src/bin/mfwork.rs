use clap::Parser;

fn main() {
    std::process::exit(mfwork::cli::main_with(mfwork::cli::Args::parse()));
}
