use clap::Parser;
use specres::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("specres: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
