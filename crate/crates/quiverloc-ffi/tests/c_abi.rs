//! Builds `smoke.c` against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn profile_dir() -> PathBuf {
    // target/<profile>/deps/c_abi-xxxx
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

fn profile_flag() -> Vec<&'static str> {
    if cfg!(debug_assertions) {
        vec![]
    } else {
        vec!["--release"]
    }
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    // test builds do not refresh the staticlib artifact
    let built =
        Command::new(env!("CARGO")).args(["build", "-q", "-p", "quiverloc-ffi"]).args(profile_flag()).status().unwrap();
    assert!(built.success());
    let lib = profile_dir().join("libquiverloc_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = std::env::temp_dir().join(format!("quiverloc_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.contains("\"verdict\":\"pass\""), "{line}");
}
