use std::io::Write;

fn main() {
    let outcome = gainspec::cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
