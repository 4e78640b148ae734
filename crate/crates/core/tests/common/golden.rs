//! Recorded CLI invocations under `tests/golden/<case>/`: `cmd` holds one
//! argument per line, `stdout` and `code` the expected results. `stderr` is
//! recorded too, with the case directory written as `{dir}`.

use std::fs;
use std::path::{Path, PathBuf};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.join("cmd").exists())
        .collect();
    out.sort();
    out
}

fn args(case: &Path) -> Vec<String> {
    let languages = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/languages");
    fs::read_to_string(case.join("cmd"))
        .unwrap()
        .lines()
        .map(|a| {
            a.replace("{dir}", &case.to_string_lossy())
                .replace("{languages}", &languages.to_string_lossy())
        })
        .collect()
}

/// Runs one case; with `update` the results are recorded instead.
pub fn run_case(case: &Path, update: bool) -> Result<(), String> {
    let out = gensyn::cli::run(args(case));
    let code = format!("{}\n", out.code);
    let stderr = out.stderr.replace(&*case.to_string_lossy(), "{dir}");
    if update {
        fs::write(case.join("stdout"), &out.stdout).unwrap();
        fs::write(case.join("stderr"), &stderr).unwrap();
        fs::write(case.join("code"), &code).unwrap();
        return Ok(());
    }
    let want_stdout = fs::read_to_string(case.join("stdout")).map_err(|e| format!("stdout: {e}"))?;
    let want_code = fs::read_to_string(case.join("code")).map_err(|e| format!("code: {e}"))?;
    if code != want_code {
        return Err(format!("exit code {} (expected {})", code.trim(), want_code.trim()));
    }
    if out.stdout != want_stdout {
        return Err(format!("stdout differs:\n--- got\n{}--- expected\n{}", out.stdout, want_stdout));
    }
    let want_stderr = fs::read_to_string(case.join("stderr")).map_err(|e| format!("stderr: {e}"))?;
    if stderr != want_stderr {
        return Err(format!("stderr differs:\n--- got\n{stderr}--- expected\n{want_stderr}"));
    }
    Ok(())
}
