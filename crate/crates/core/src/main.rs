fn main() {
    std::process::exit(tri3d4::cli::run());
}
