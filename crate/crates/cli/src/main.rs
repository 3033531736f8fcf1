fn main() {
    std::process::exit(fibkit::run(std::env::args_os()));
}
