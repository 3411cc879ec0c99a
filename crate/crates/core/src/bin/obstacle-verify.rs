fn main() {
    std::process::exit(obstacle_identities::cli::run(std::env::args_os()));
}
