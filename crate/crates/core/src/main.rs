fn main() {
    std::process::exit(semorient::cli::run(std::env::args_os()));
}
