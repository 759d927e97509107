fn main() {
    std::process::exit(elastic_varifolds::cli::run(std::env::args_os()));
}
