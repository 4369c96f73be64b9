use std::io::Write;

fn main() {
    let result = houghton_cli::run(std::env::args());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(result.code);
}
