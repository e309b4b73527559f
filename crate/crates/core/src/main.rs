use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = su2simple::cli::run(std::env::args_os());
    if let Some(doc) = &outcome.document {
        let text = doc.to_string();
        match &outcome.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{text}"),
        }
    }
    if let Some(msg) = &outcome.message {
        if outcome.code == 0 {
            print!("{msg}");
        } else {
            eprintln!("error: {}", msg.trim_end());
        }
    }
    ExitCode::from(outcome.code as u8)
}
