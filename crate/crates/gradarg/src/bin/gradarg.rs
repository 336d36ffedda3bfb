fn main() {
    std::process::exit(gradarg::cli::run(std::env::args_os()));
}
