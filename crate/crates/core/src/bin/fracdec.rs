fn main() {
    std::process::exit(fracdec::cli::main());
}
