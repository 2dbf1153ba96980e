use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = alpha_bicyclic::cli::run(std::env::args().skip(1));
    if code <= alpha_bicyclic::cli::EXIT_FAILED {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    ExitCode::from(code as u8)
}
