fn main() {
    std::process::exit(relcohom::cli::main());
}
