use std::process::exit;

fn main() {
    let code = patrol_cli::run_command(std::env::args(), &mut std::io::stdout());
    exit(code);
}
