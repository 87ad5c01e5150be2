fn main() {
    std::process::exit(quditbench_cli::run(std::env::args_os()));
}
