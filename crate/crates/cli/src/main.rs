use std::io::Write;

fn main() {
    let (code, doc) = brauer_cli::run(std::env::args_os());
    print!("{}", doc.body);
    let _ = std::io::stdout().flush();
    eprint!("{}", doc.diagnostics);
    std::process::exit(code);
}
