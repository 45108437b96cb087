fn main() {
    let (code, out) = quatchar::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}
