fn main() {
    std::process::exit(taulab::dispatch(std::env::args_os()));
}
