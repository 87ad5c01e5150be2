//! Re-runs every command listed in `docs/experiments/commands.txt` and compares
//! stdout with the stored golden file byte for byte.

use std::path::PathBuf;
use std::process::Command;

fn experiments_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/experiments")
}

#[test]
fn golden_outputs_match() {
    let dir = experiments_dir();
    let manifest = std::fs::read_to_string(dir.join("commands.txt")).expect("manifest present");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for line in manifest.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (file, args) = line.split_once('\t').expect("file<TAB>args");
        let out = Command::new(env!("CARGO_BIN_EXE_quditbench"))
            .args(args.split_whitespace())
            .env_remove("QUDITBENCH_SEED")
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "{args}: {}", String::from_utf8_lossy(&out.stderr));
        let path = dir.join(file);
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if want != out.stdout {
            mismatched.push(file.to_string());
        }
    }
    assert!(mismatched.is_empty(), "outputs differ from golden files: {mismatched:?}");
}
