use std::io;

fn main() {
    let code = fuzzy_newton::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
