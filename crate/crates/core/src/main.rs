fn main() {
    std::process::exit(saito::cli::run(std::env::args_os()));
}
