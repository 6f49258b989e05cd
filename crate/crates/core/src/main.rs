fn main() {
    std::process::exit(kravchuk_fourier::pipeline::cli::run(std::env::args_os()));
}
