fn main() {
    std::process::exit(additive_systems::cli::run(std::env::args_os()));
}
