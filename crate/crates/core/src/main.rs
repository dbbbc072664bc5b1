use std::io::Write;

fn main() {
    let mut out = std::io::stdout().lock();
    let code = hypervis::cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
