use std::io::{self, Write};

fn main() {
    let stdin = io::stdin();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let code = dwcount::cli::run_cli(
        std::env::args_os(),
        stdin.lock(),
        &mut stdout,
        &mut stderr,
    );
    let _ = stdout.flush();
    std::process::exit(code);
}
