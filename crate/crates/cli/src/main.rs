use std::io::Write;

use clap::Parser;
use grassgeo_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (code, out) = run(&cli);
    match out {
        Ok(text) => {
            // A closed pipe is not worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
        Err(e) => eprintln!("error: {e}"),
    }
    std::process::exit(code);
}
