use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cap = std::env::var(skewlgv::cli::MAX_TUPLES_ENV).ok();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = skewlgv::cli::run(std::env::args_os(), cap.as_deref(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
