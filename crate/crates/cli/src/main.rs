mod args;
mod commands;
mod error;
mod output;
mod source;

use args::{Cli, Command, Format};
use clap::error::ErrorKind;
use clap::{ColorChoice, CommandFactory, FromArgMatches};
use error::{CliError, Exit};
use output::{CliReport, Style};
use std::io::Write;
use std::process::ExitCode;

fn run(cli: &Cli, style: Style) -> Result<output::Output, CliError> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, style),
        Command::Rules(a) => commands::rules(a, style),
        Command::Index(a) => commands::index(a, style),
        Command::Compare(a) => commands::compare(a, style),
        Command::Reproduce(a) => commands::reproduce(a, style),
        Command::Plot(a) => commands::plot(a),
    }
}

fn report_error(err: &CliError, format: Format, argv: &[String], style: Style) {
    let mut stderr = std::io::stderr().lock();
    match format {
        Format::Text => {
            let _ = writeln!(stderr, "{} {}", style.bad("error:"), err.message);
            for d in &err.diagnostics {
                let _ = writeln!(stderr, "  {d}");
            }
        }
        Format::Json => {
            let body = serde_json::json!({"error": err.message, "exit_code": err.exit as u8});
            let _ = writeln!(stderr, "{}", CliReport::new(argv, body, &err.diagnostics).to_json());
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let style = Style::from_env();
    let color = if style.color { ColorChoice::Always } else { ColorChoice::Never };
    let matches = Cli::command().color(color).try_get_matches_from(&argv);
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Exit::Ok.into(),
                _ => Exit::Invalid.into(),
            };
        }
    };
    let command = &argv[1..];

    match run(&cli, style) {
        Ok(out) => {
            let mut stderr = std::io::stderr().lock();
            if cli.format == Format::Text {
                for w in &out.warnings {
                    let _ = writeln!(stderr, "{}", style.warn(&w.to_string()));
                }
            }
            if out.exit == Exit::CheckFailed {
                let _ = writeln!(stderr, "{} one or more checks failed", style.bad("error:"));
            }
            let rendered = out.render(cli.format, command);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return Exit::Invalid.into();
            }
            out.exit.into()
        }
        Err(err) => {
            report_error(&err, cli.format, command, style);
            err.exit.into()
        }
    }
}
