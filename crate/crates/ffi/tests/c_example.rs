//! Compiles and links the C example against the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = manifest().join("include");
    for lang in ["c", "c++"] {
        let out = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg("-I")
            .arg(&include)
            .arg(manifest().join("examples/run_builtin.c"))
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn c_example_links_and_runs() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let target: PathBuf = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest().join("../../target"));
    let build = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "koszulab-ffi", "--lib"])
        .current_dir(manifest())
        .status()
        .unwrap();
    assert!(build.success());
    let lib = target.join("debug/libkoszulab_ffi.a");
    let exe = std::env::temp_dir().join(format!("koszulab-c-example-{}", std::process::id()));
    let out = Command::new("cc")
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(manifest().join("examples/run_builtin.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "link: {}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).arg("koszul-n2").output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert_eq!(run.status.code(), Some(0));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with(&format!("koszulab {} status 0\n", env!("CARGO_PKG_VERSION"))));
    assert!(stdout.contains("\"status\": \"pass\""));
}
