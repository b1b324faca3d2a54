fn main() {
    std::process::exit(devitensor::cli::run());
}
