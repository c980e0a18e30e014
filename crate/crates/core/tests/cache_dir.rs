//! Separate binary: `--cache-dir` sets a process-wide environment variable.

use centext::cli::args::main_with;

#[test]
fn cache_directory_is_used() {
    let dir = std::env::temp_dir().join(format!("centext-cache-{}", std::process::id()));
    let code = main_with(["centext", "verify", "--type", "A3", "--checks", "pi0", "--cache-dir", dir.to_str().unwrap()], &mut Vec::new(), &mut Vec::new());
    assert_eq!(code, 0);
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
