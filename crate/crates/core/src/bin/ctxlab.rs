fn main() {
    std::process::exit(ctxlab::cli::main());
}
