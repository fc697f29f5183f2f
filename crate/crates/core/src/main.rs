fn main() {
    let code = lie_poset_index::cli::main_entry();
    std::process::exit(code);
}
