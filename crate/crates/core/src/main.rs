use std::io::Write;

fn main() {
    let out = hmclass::cli::run_args(std::env::args_os());
    if let Some(s) = out.stdout {
        let _ = std::io::stdout().write_all(s.as_bytes());
    }
    if let Some(s) = out.stderr {
        let _ = std::io::stderr().write_all(s.as_bytes());
    }
    std::process::exit(out.code);
}
