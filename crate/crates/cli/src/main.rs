use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = truestages_cli::app::run(std::env::args_os());
    let stream = if outcome.code == 2 {
        std::io::stderr().write_all(outcome.output.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.output.as_bytes())
    };
    if stream.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
