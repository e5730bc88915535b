fn main() {
    std::process::exit(minimax_prefix::cli::run(std::env::args_os()));
}
