use std::io::{stderr, stdout, BufWriter};

fn main() {
    let mut out = BufWriter::new(stdout());
    let code = rootno::cli::run(std::env::args_os(), &mut out, &mut stderr());
    drop(out);
    std::process::exit(code);
}
