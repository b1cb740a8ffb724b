use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(negabent::cli::main())
}
