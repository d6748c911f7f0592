fn main() {
    std::process::exit(equigraph::cli::run(std::env::args_os()));
}
