use clap::Parser;

fn main() {
    let cli = lp_lab::Cli::parse();
    if let Err(e) = lp_lab::run(cli) {
        eprintln!("lp-lab: {e}");
        std::process::exit(e.exit_code());
    }
}
