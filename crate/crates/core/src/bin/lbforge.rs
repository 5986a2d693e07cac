fn main() {
    std::process::exit(lbforge::cli::main_entry());
}
