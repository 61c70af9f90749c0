use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    // a panic anywhere below is an internal invariant violation: exit 2
    let outcome = std::panic::catch_unwind(|| pcontact_cli::run(&argv));
    let (code, stdout) = match outcome {
        Ok(pair) => pair,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            (2, format!("{{\"error\":{{\"kind\":\"internal\",\"message\":{msg:?}}}}}\n"))
        }
    };
    let mut out = std::io::stdout();
    let _ = out.write_all(stdout.as_bytes());
    let _ = out.flush();
    std::process::exit(code);
}
