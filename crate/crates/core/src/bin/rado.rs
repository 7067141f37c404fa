use std::process::ExitCode;

fn main() -> ExitCode {
    let result = rado::cli::run(std::env::args_os());
    println!("{}", result.to_json());
    ExitCode::from(result.status.exit_code() as u8)
}
