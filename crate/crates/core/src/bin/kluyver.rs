fn main() {
    std::process::exit(kluyver::cli::main());
}
