use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = abundancy_cli::run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
