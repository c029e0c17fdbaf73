use std::io::Write;

fn main() {
    let (out, err) = fsrkit::cli::main_with(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{err}");
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
