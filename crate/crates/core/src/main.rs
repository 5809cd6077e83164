fn main() {
    std::process::exit(satp::cli::run(std::env::args_os()));
}
