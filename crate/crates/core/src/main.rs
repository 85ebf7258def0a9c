fn main() {
    std::process::exit(subreg::cli::cli_main(std::env::args_os()));
}
