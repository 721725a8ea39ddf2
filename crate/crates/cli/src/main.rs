fn main() {
    std::process::exit(sfdc_cli::run(std::env::args_os()));
}
