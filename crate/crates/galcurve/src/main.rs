fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = galcurve::cli::run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
