fn main() {
    std::process::exit(commuting_cli::run_command(std::env::args_os()));
}
