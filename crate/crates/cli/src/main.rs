mod args;
mod check;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use dtvertex::vertex::VertexStore;

use args::{CheckCommand, Cli, Command};
use commands::Family;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    let store = VertexStore::from_env(cli.cache_dir.clone());
    let fmt = cli.format;
    let result = match &cli.command {
        Command::Vertex(a) => commands::vertex(&store, fmt, a),
        Command::Dt(a) => commands::dt(&store, fmt, a, Family::Hat),
        Command::Dtfib(a) => commands::dt(&store, fmt, a, Family::Fib),
        Command::Connected(a) => commands::connected_cmd(&store, fmt, a),
        Command::Kkv(a) => commands::kkv(&store, fmt, a),
        Command::Fd(a) => commands::fd(&store, fmt, a),
        Command::Tangent(a) => commands::tangent(fmt, a),
        Command::SymprodCheck(a) => commands::symprod(fmt, a),
        Command::Check { what: CheckCommand::All(a) } => Ok(check::all(&store, fmt, a)),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
