use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let code = backflow::cli::run(std::env::args_os(), &mut io::BufWriter::new(stdout.lock()));
    ExitCode::from(code as u8)
}
