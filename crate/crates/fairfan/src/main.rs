use clap::Parser;
use fairfan::cli::{execute, exit_code, Cli};

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("fairfan: {err}");
            exit_code(&err)
        }
    };
    std::process::exit(code);
}
