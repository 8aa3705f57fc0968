fn main() {
    let run = partact::cli::run(std::env::args_os());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    std::process::exit(run.code);
}
