use std::io::Write;

fn main() {
    let out = gensyn::cli::run(std::env::args().skip(1));
    std::io::stdout().write_all(out.stdout.as_bytes()).unwrap();
    std::io::stderr().write_all(out.stderr.as_bytes()).unwrap();
    std::process::exit(out.code);
}
