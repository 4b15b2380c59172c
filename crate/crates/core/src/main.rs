fn main() {
    std::process::exit(artin_flats::cli::run(std::env::args_os()));
}
