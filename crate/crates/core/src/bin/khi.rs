use clap::Parser;
use khi::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let (code, out) = run(&cfg);
    if code == 0 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    std::process::exit(code);
}
