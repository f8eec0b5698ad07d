use std::process::ExitCode;

fn main() -> ExitCode {
    let result = critgroup::cli::run(std::env::args_os(), &mut std::io::stdin());
    if result.code == 0 {
        print!("{}", result.output);
    } else {
        eprint!("{}", result.output);
    }
    ExitCode::from(result.code as u8)
}
