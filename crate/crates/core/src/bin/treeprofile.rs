use std::process::ExitCode;

fn main() -> ExitCode {
    treeprofile::cli::run(std::env::args_os())
}
