use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

const A1: &str = "x y^-1 x^-1 y^-1 x^-1 y x y x y x^-2 y^-1 x";

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn fixture(name: &str) -> String {
    dir().join("tests/fixtures").join(name).display().to_string()
}

fn twogen(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twogen"))
        .args(args)
        .env_remove("TWOGEN_SEARCH_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = twogen(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    twogen(args, "").status.code().unwrap()
}

#[test]
fn examples_match_golden_files() {
    let cases: &[(&[&str], &str)] = &[
        (&["free-abelian", "--bound", "2"], "free-abelian-b2.txt"),
        (&["free-abelian", "--bound", "5"], "free-abelian-b5.txt"),
        (&["rationals", "--bound", "3"], "rationals-b3.txt"),
        (&["rationals", "--bound", "5"], "rationals-b5.txt"),
        (&["pruefer", "--p", "2", "--bound", "1"], "pruefer-p2-b1.txt"),
        (&["pruefer", "--p", "2", "--bound", "5"], "pruefer-p2-b5.txt"),
        (&["pruefer", "--p", "3", "--bound", "2"], "pruefer-p3-b2.txt"),
        (&["pruefer", "--p", "3", "--bound", "5"], "pruefer-p3-b5.txt"),
    ];
    for (args, file) in cases {
        let golden = fs::read(dir().join("golden").join(file)).unwrap();
        assert!(!golden.contains(&b'\r'), "{file} has CR line endings");
        let mut full = vec!["examples"];
        full.extend_from_slice(args);
        assert_eq!(ok(&full, "").as_bytes(), golden.as_slice(), "{file}");
    }
}

#[test]
fn embed_rationals_to_file() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("tq.grp");
    let res = twogen(
        &["embed", "-i", &fixture("q.grp"), "--mode", "torsion-free", "--bound", "4", "-o", out.to_str().unwrap()],
        "",
    );
    assert_eq!(res.status.code(), Some(0));
    assert!(res.stdout.is_empty());
    assert!(String::from_utf8_lossy(&res.stderr).contains("assumed torsion-free"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# embedding bound=4 cyclic-reduce=false dedupe=false mode=torsion-free source=Q\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("rel ")).count(), 3);
    assert_eq!(ok(&["abelianize", "-i", out.to_str().unwrap()], ""), "1, 0\n");
}

#[test]
fn embed_other_examples() {
    let zinf = ok(&["embed", "-i", &fixture("zinf.grp"), "--mode", "torsion-free", "--bound", "2"], "");
    assert_eq!(zinf.lines().filter(|l| l.starts_with("rel ")).count(), 2);
    let deduped = ok(
        &["embed", "-i", &fixture("zinf.grp"), "--mode", "torsion-free", "--bound", "3", "--dedupe"],
        "",
    );
    assert_eq!(deduped.lines().filter(|l| l.starts_with("rel ")).count(), 3);
    let c3 = ok(&["embed", "-i", &fixture("pruefer3.grp"), "--mode", "general", "--bound", "2"], "");
    assert_eq!(c3.lines().filter(|l| l.starts_with("rel ")).count(), 3);
    let cas = ok(&["embed", "-i", &fixture("pruefer3.grp"), "--bound", "2", "--format", "cas"], "");
    assert!(cas.contains("F := FreeGroup(\"x\", \"y\");;"));
    assert!(cas.contains("T_C3inf := F / ["));
}

#[test]
fn pipelines() {
    let tz = ok(&["embed", "--mode", "torsion-free", "--bound", "3"], &fs::read_to_string(fixture("q.grp")).unwrap());
    assert_eq!(ok(&["abelianize"], &tz), "1, 0\n");
    let zinf = ok(&["embed", "-i", &fixture("zinf.grp"), "--mode", "torsion-free", "--bound", "3"], "");
    assert_eq!(ok(&["abelianize", "-i", "-"], &zinf), "0, 0\n");

    let tz2 = ok(&["embed", "-i", &fixture("z2.grp")], "");
    let found = ok(&["homsearch", "--word", A1, "--order", "2", "--max-degree", "6"], &tz2);
    assert_eq!(found, "degree 4\nx (3 4)\ny (1 2 3)\norder 2\n");
    let parallel = ok(&["homsearch", "--word", A1, "--order", "2", "--jobs", "3"], &tz2);
    assert_eq!(parallel, found);
}

#[test]
fn abelianize_and_search_small_inputs() {
    assert_eq!(ok(&["abelianize", "-i", &fixture("empty.grp")], ""), "0, 0\n");
    let id = ok(&["homsearch", "-i", &fixture("empty.grp"), "--word", "y", "--order", "1"], "");
    assert_eq!(id, "degree 1\nx ()\ny ()\norder 1\n");
    let none = ok(
        &["homsearch", "-i", &fixture("empty.grp"), "--word", "x x^-1", "--order", "2", "--max-degree", "3"],
        "",
    );
    assert_eq!(none, "not found up to degree 3\n");
}

#[test]
fn verify_subcommands() {
    assert!(ok(&["verify", "identities", "--max-i", "50"], "").starts_with("identities: pass"));
    assert_eq!(
        ok(&["verify", "freeness", "--mode", "general", "--count", "20"], ""),
        "freeness: pass, rank 20 (general)\n"
    );
    assert!(ok(&["verify", "lengths", "--max-i", "100"], "").starts_with("lengths: pass"));

    let tmp = tempfile::tempdir().unwrap();
    let dump = tmp.path().join("g.txt");
    ok(
        &["verify", "freeness", "--mode", "torsion-free", "--count", "3", "--dump", dump.to_str().unwrap()],
        "",
    );
    let text = fs::read_to_string(dump).unwrap();
    let header = text.lines().next().unwrap();
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (v, e): (usize, usize) = (fields[2].parse().unwrap(), fields[4].parse().unwrap());
    assert_eq!(e + 1 - v, 3);
    assert_eq!(text.lines().count(), e + 1);
}

#[test]
fn exit_codes() {
    // parse errors and bad arguments
    assert_eq!(code(&["embed", "-i", &fixture("syntax.grp"), "--bound", "2"]), 1);
    assert_eq!(code(&["embed", "-i", &fixture("undeclared.grp"), "--bound", "2"]), 1);
    assert_eq!(code(&["embed", "-i", &fixture("unbound.grp"), "--bound", "2"]), 1);
    assert_eq!(code(&["embed", "-i", &fixture("does-not-exist.grp")]), 1);
    assert_eq!(code(&["embed", "-i", &fixture("empty.grp")]), 1);
    assert_eq!(code(&["examples", "integers"]), 1);
    assert_eq!(code(&["embed", "--mode", "sideways"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["homsearch", "-i", &fixture("empty.grp"), "--word", "z", "--order", "2"]), 1);
    assert_eq!(code(&["abelianize", "-i", &fixture("q.grp"), "--bound", "3"]), 1);

    // instantiation errors
    assert_eq!(code(&["embed", "-i", &fixture("index-zero.grp"), "--bound", "3"]), 2);
    assert_eq!(code(&["embed", "-i", &fixture("q.grp")]), 2);
    assert_eq!(code(&["embed", "-i", &fixture("q.grp"), "--bound", "1"]), 2);

    // budget
    let out = Command::new(env!("CARGO_BIN_EXE_twogen"))
        .args(["homsearch", "--word", A1, "--order", "2"])
        .env("TWOGEN_SEARCH_BUDGET", "25")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            let tz2 = format!("group T\ngens x, y\nrel ({A1})^2\n");
            c.stdin.take().unwrap().write_all(tz2.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn diagnostics_carry_positions() {
    let out = twogen(&["embed", "-i", &fixture("syntax.grp"), "--bound", "2"], "");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("syntax.grp: line 3"), "{err}");
    assert!(out.stdout.is_empty());
}
