use std::process::Command;

fn invcode(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_invcode")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn process_exit_codes() {
    let (code, out) = invcode(&["count", "--ell", "3", "examples/z2-chain"]);
    assert_eq!((code, out.lines().next()), (0, Some("8")));
    let (code, out) = invcode(&["check", "examples/toric", "--ell", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Falsified"));
    assert_eq!(invcode(&["count", "z2-chain"]).0, 2);
    assert_eq!(invcode(&["validate", "/dev/null"]).0, 1);
}
