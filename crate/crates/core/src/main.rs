fn main() -> std::process::ExitCode {
    triplesym::cli::run()
}
