fn main() {
    std::process::exit(idcap::cli::run());
}
