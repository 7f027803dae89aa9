fn main() {
    std::process::exit(redsys::cli::main_with_env());
}
