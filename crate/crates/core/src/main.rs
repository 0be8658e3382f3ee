fn main() {
    std::process::exit(fse3d::cli::main_with(std::env::args_os()));
}
