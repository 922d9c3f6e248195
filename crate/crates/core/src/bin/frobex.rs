fn main() {
    std::process::exit(frobex::cli::main_with_args(std::env::args_os()));
}
