use std::io::Write;

fn main() {
    // Failures are reported through the error path; no panic messages.
    std::panic::set_hook(Box::new(|_| {}));
    let run = frobsub_cli::run(std::env::args_os());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(run.code);
}
