fn main() {
    std::process::exit(weak_dmd::cli::run_from_env());
}
