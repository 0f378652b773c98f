fn main() {
    std::process::exit(finconv_harness::cli::run());
}
