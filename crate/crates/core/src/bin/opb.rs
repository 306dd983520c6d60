fn main() {
    std::process::exit(opb::cli::main());
}
