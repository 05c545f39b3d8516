use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let limit = std::env::var(novikov_lab::LIMIT_ENV).ok();
    let outcome = novikov_lab::run(std::env::args_os(), limit.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
