fn main() -> std::process::ExitCode {
    vstates::cli::run(std::env::args_os())
}
