//! Acceptance gate for the command-line contract: exit codes, report
//! wording, and the prop round-trip, exercised against the shipped data
//! files. Prints a single `ACCEPTANCE 10 ... PASS` line when it holds.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn flc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flc"))
        .args(args)
        .current_dir(dir)
        .env("FLC_SEED", "3868")
        .output()
        .expect("failed to spawn flc")
}

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").canonicalize().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("flc was killed by a signal")
}

#[test]
fn criterion_10_cli_contract() {
    let data = data();
    let tmp = tempfile::tempdir().unwrap();

    // A sound algebra file checks clean with exit code 0.
    let out = flc(&["check", "algebra", "bool2.flc"], &data);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().all(|l| l.starts_with("CHECK ") && l.ends_with("PASS")), "{stdout}");
    assert!(stdout.contains("CHECK rl.residuation PASS"), "{stdout}");
    assert!(stdout.contains("CHECK s1 PASS"), "{stdout}");
    assert!(stdout.contains("CHECK c5 PASS"), "{stdout}");

    // Breaking ?1 = 0 into the table must fail the consumption axioms with
    // exit code 1, naming the broken axiom and a witness.
    let broken = std::fs::read_to_string(data.join("bool2.flc"))
        .unwrap()
        .replace("?top = top", "?top = bot");
    let broken_path = tmp.path().join("broken.flc");
    std::fs::write(&broken_path, broken).unwrap();
    let out = flc(&["check", "algebra", broken_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("CHECK c2 FAIL witness=(top)"), "{stdout}");

    // A malformed file is a format error: exit code 2.
    let bad_path = tmp.path().join("bad.flc");
    std::fs::write(&bad_path, "[algebra X]\nelements = a\nunit = b\n").unwrap();
    let out = flc(&["check", "algebra", bad_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "stderr should explain the failure");

    // Reports are deterministic and sorted by check id.
    let a = flc(&["check", "cover", "bool2-cover.flc"], &data);
    let b = flc(&["check", "cover", "bool2-cover.flc"], &data);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let ids: Vec<String> = String::from_utf8_lossy(&a.stdout)
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);

    // The algebra of propositions printed by `prop` re-validates as a
    // modal FL-algebra in its own right.
    let prop_path = tmp.path().join("prop.flc");
    let out = flc(&["prop", "bool2-cover.flc", "--out", prop_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = flc(&["check", "algebra", prop_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));

    // represent --verify round-trips the algebra through its canonical
    // cover system, and the result passes the cover checks.
    let cov_path = tmp.path().join("luk3-cover.flc");
    let out = flc(&["represent", "luk3.flc", "--verify", "--out", cov_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("CHECK repr.strong PASS"));
    let out = flc(&["check", "cover", cov_path.to_str().unwrap()], &data);
    assert_eq!(code(&out), 0);

    // eval agrees with the documented examples on the shipped model.
    let out = flc(&["eval", "bool2-model.flc", "-f", "?P(u)"], &data);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "{bot}");
    let out = flc(&["eval", "bool2-model.flc", "-f", "1", "--at", "bot"], &data);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "true");
    let out = flc(&["eval", "bool2-model.flc", "-f", "P(v0)"], &data);
    assert_eq!(code(&out), 1, "open formulas need --closed-instances");
    let out = flc(&["eval", "bool2-model.flc", "-f", "P(v0)", "--closed-instances"], &data);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "false");
    let out = flc(&["eval", "bool2-model.flc", "-f", "P(u) ->l"], &data);
    assert_eq!(code(&out), 2, "formula parse errors are format errors");

    // classical: BOOL2's canonical system is, a Heyting chain's is not.
    let hey_cov = tmp.path().join("heyting3-cover.flc");
    let out = flc(&["represent", "heyting3.flc", "--out", hey_cov.to_str().unwrap()], &data);
    assert_eq!(code(&out), 0);
    let out = flc(&["classical", "bool2-cover.flc"], &data);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "CHECK classical PASS");
    let out = flc(&["classical", hey_cov.to_str().unwrap()], &data);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "CHECK classical FAIL");

    // search honours predicates and reports a deterministic count.
    let out = flc(&["search", "--size", "2", "--predicate", "residuated"], &data);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("count = "));
    let out = flc(&["search", "--size", "2", "--predicate", "s7"], &data);
    assert_eq!(code(&out), 2);

    println!("ACCEPTANCE 10 cli-contract PASS");
}
