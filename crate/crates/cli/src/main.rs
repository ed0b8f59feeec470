use clap::Parser;

use seifert_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(&cli.command, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
