use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, out) = lqp::cli::run(&args);
    let mut sink: Box<dyn Write> = if code == 0 || code == 1 {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    let _ = sink.write_all(out.as_bytes());
    std::process::exit(code);
}
