//! End-to-end runs of the binary: byte-stable JSON for identical configs,
//! and the exit-code contract.

use std::process::Command;

fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_framedvoa"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().expect("no signal"))
}

#[test]
fn json_reports_are_byte_identical_for_identical_config() {
    let arg_sets: [&[&str]; 5] = [
        &["codes", "--format", "json"],
        &["fusion", "--ring", "hamming", "--format", "json"],
        &["chars", "--order", "8", "--format", "json", "--tau", "0.9i", "--tau", "1.1i"],
        &["fock", "--format", "json", "--seed", "7"],
        &["hypothesis", "--pair", "baby", "--format", "json"],
    ];
    for args in arg_sets {
        let (a, code_a) = run(args);
        let (b, code_b) = run(args);
        assert!(!a.is_empty(), "no output for {args:?}");
        assert_eq!(code_a, code_b, "exit codes differ for {args:?}");
        assert_eq!(a, b, "bytes differ for {args:?}");
    }
}

#[test]
fn exit_codes_partition_outcomes() {
    // 0: all checks pass.
    assert_eq!(run(&["fusion", "--ring", "ising"]).1, 0);
    // 2: the truncation tail at this low order cannot certify the tolerance.
    assert_eq!(run(&["chars", "--order", "8"]).1, 2);
    // 3: usage errors.
    assert_eq!(run(&["chars", "--order", "1"]).1, 3);
    assert_eq!(run(&["chars", "--tau", "1.0"]).1, 3);
    assert_eq!(run(&["nonsense"]).1, 3);
    assert_eq!(run(&["codes", "--pair", "golay"]).1, 3);

    // 1: a failing check, via a pair whose α admits no Hamming cover.
    let dir = std::env::temp_dir().join("framedvoa-exitcode-test");
    std::fs::create_dir_all(&dir).unwrap();
    let d = dir.join("d.txt");
    let s = dir.join("s.txt");
    std::fs::write(&d, "0000000000000000\n").unwrap();
    std::fs::write(&s, "1111111100000000\n").unwrap();
    let pair_arg = format!("file:{},{}", d.display(), s.display());
    assert_eq!(run(&["hypothesis", "--pair", &pair_arg]).1, 1);

    // 1: a full-support α of odd 8-block parity admits no label family at all.
    std::fs::write(&d, "00000000\n").unwrap();
    std::fs::write(&s, "11111111\n").unwrap();
    let pair_arg = format!("file:{},{}", d.display(), s.display());
    assert_eq!(run(&["hypothesis", "--pair", &pair_arg]).1, 1);
}
