fn main() {
    std::process::exit(superzeta::cli::main_from_env());
}
