use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_drsubmax"))
}

fn config(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../experiments").join(name)
}

#[test]
fn run_with_override_writes_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let status = bin()
        .args(["run", "--config"])
        .arg(config("quadratic_uniform.json"))
        .args(["--set", "n=8", "--set", "m=4", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,value,best"));
    assert_eq!(lines.count(), 101);
}

#[test]
fn invalid_override_names_the_field() {
    let out = bin()
        .args(["run", "--config"])
        .arg(config("quadratic_uniform.json"))
        .args(["--set", "eps=2"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("eps"));
}

#[test]
fn summarize_identical_files_gives_zero_std() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    assert!(bin()
        .args(["run", "--config"])
        .arg(config("hardness_gap.json"))
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let copy = dir.path().join("h2.csv");
    std::fs::copy(&out, &copy).unwrap();
    let res = bin().arg("summarize").arg(&out).arg(&copy).output().unwrap();
    assert!(res.status.success());
    let text = String::from_utf8(res.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let header = rows.headers().unwrap().clone();
    let std_col = header.iter().position(|h| h == "ratio_std").unwrap();
    let count_col = header.iter().position(|h| h == "count").unwrap();
    let mut n = 0;
    for rec in rows.records() {
        let rec = rec.unwrap();
        assert_eq!(rec[std_col].parse::<f64>().unwrap(), 0.0);
        assert_eq!(&rec[count_col], "2");
        n += 1;
    }
    assert_eq!(n, 6);
}

#[test]
fn summarize_rejects_mixed_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    std::fs::write(&a, "t,value\n1,2\n").unwrap();
    std::fs::write(&b, "i,value\n0,2\n").unwrap();
    let out = bin().arg("summarize").arg(&a).arg(&b).output().unwrap();
    assert!(!out.status.success());
}
