//! Running an external prover or model finder on an input file.

use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::InteropError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExternalRun {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: Option<i32>,
    pub timed_out: bool,
    pub seconds: f64,
}

/// Runs `bin -f input`, capturing both streams and killing the process
/// after `timeout`.
pub fn run_external(bin: &Path, input: &Path, timeout: Duration) -> Result<ExternalRun, InteropError> {
    let start = Instant::now();
    let mut child = Command::new(bin)
        .arg("-f")
        .arg(input)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| InteropError::Process(format!("{}: {e}", bin.display())))?;
    let mut out = child.stdout.take().unwrap();
    let mut err = child.stderr.take().unwrap();
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = out.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = err.read_to_string(&mut s);
        s
    });
    let mut timed_out = false;
    let status = loop {
        if let Some(status) = child.try_wait().map_err(|e| InteropError::Process(e.to_string()))? {
            break Some(status);
        }
        if start.elapsed() >= timeout {
            timed_out = true;
            let _ = child.kill();
            break child.wait().ok();
        }
        thread::sleep(Duration::from_millis(20));
    };
    Ok(ExternalRun {
        stdout: out_reader.join().unwrap_or_default(),
        stderr: err_reader.join().unwrap_or_default(),
        exit_code: status.and_then(|s| s.code()),
        timed_out,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_binary_is_an_error() {
        let r = run_external(
            Path::new("/nonexistent/prover9"),
            Path::new("in.txt"),
            Duration::from_secs(1),
        );
        assert!(matches!(r, Err(InteropError::Process(_))));
    }

    #[cfg(unix)]
    #[test]
    fn streams_are_captured() {
        let dir = std::env::temp_dir().join(format!("ordo-proc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let script = dir.join("echo.sh");
        std::fs::write(&script, "#!/bin/sh\necho out \"$2\"\necho err >&2\nexit 3\n").unwrap();
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(&script, std::fs::Permissions::from_mode(0o755)).unwrap();
        let r = run_external(&script, Path::new("x.in"), Duration::from_secs(10)).unwrap();
        assert_eq!(r.stdout.trim(), "out x.in");
        assert_eq!(r.stderr.trim(), "err");
        assert_eq!(r.exit_code, Some(3));
        assert!(!r.timed_out);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
