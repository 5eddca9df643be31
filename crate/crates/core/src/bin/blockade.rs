fn main() {
    std::process::exit(blockade::cli::main_with(std::env::args_os()));
}
