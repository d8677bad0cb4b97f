fn main() -> std::process::ExitCode {
    lambda_dcs::cli::main()
}
