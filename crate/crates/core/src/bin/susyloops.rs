fn main() {
    env_logger::init();
    std::process::exit(susyloops::cli::run(std::env::args_os()));
}
