fn main() {
    let (code, out) = h3::cli::main_with_args(std::env::args_os());
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
