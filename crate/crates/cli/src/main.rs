fn main() {
    std::process::exit(nsverify::run(std::env::args_os()));
}
