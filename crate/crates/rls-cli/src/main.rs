use std::io::{stderr, stdout};

fn main() {
    let code = rls_cli::run_with_args(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
