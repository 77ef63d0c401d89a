use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let (stdout, stderr) = (io::stdout(), io::stderr());
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = qdeform::run(std::env::args_os().skip(1), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
