use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(gml::cli::SEED_ENV).ok();
    let r = gml::cli::run(std::env::args_os(), seed.as_deref());
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(r.stderr.as_bytes());
    ExitCode::from(r.code as u8)
}
