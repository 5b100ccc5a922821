fn main() {
    std::process::exit(pext::cli::main_entry());
}
