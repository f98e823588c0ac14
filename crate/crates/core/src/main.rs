fn main() {
    std::process::exit(pcn_attach::cli::run(std::env::args_os()));
}
