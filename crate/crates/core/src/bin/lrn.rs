fn main() {
    std::process::exit(lrn::cli::run(std::env::args_os()));
}
