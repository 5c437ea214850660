use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    kicking_basis::cli::main_with_args(std::env::args_os(), &mut out)
}
