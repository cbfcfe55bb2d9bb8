use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out_path = argv
        .iter()
        .position(|a| a == "--out")
        .and_then(|i| argv.get(i + 1))
        .map(std::path::PathBuf::from);
    let (output, code) = eulersym_cli::run(&argv);
    match out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &output) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(1);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.as_bytes());
        }
    }
    std::process::exit(code);
}
