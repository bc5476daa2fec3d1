use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = eisenstein_hankel::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if code == eisenstein_hankel::cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        let _ = stdout.write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
