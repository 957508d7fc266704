fn main() {
    std::process::exit(degen::run(std::env::args_os()));
}
