use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const WORKED_EXAMPLE: &str = "qubits 4\n0.1 ZZII\n0.2 IZZI\n0.3 IIZZ\n0.4 ZIIZ\n0.5 ZZZZ\n";

fn pfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfg")).args(args).output().expect("spawn pfg")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn metric(o: &Output, key: &str) -> usize {
    let err = stderr(o);
    let tok = err.split_whitespace().find_map(|t| t.strip_prefix(&format!("{key}="))).expect("metric present");
    tok.parse().unwrap()
}

fn fixture(dir: &Path) -> PathBuf {
    let p = dir.join("worked.ham");
    fs::write(&p, WORKED_EXAMPLE).unwrap();
    p
}

#[test]
fn gen_fermi_hubbard_has_two_qubits_per_site() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fh4.ham");
    let o = pfg(&["gen", "--model", "fermi-hubbard", "--sites", "4", "--mapping", "jw", "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("qubits 8"));
    assert!(stderr(&o).contains("n_qubits=8"));
}

#[test]
fn gen_vibronic_is_deterministic() {
    let args = ["gen", "--model", "vibronic", "--modes", "6", "--levels", "4", "--encoding", "gray", "--seed", "7"];
    let (a, b) = (pfg(&args), pfg(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let other = pfg(&["gen", "--model", "vibronic", "--modes", "6", "--levels", "4", "--encoding", "gray", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn gen_rejects_bad_cutoff_and_mixed_options() {
    let o = pfg(&["gen", "--model", "bose-hubbard", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pfg(&["gen", "--model", "bose-hubbard", "--sites", "2", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pfg(&["gen", "--model", "fermi-hubbard", "--sites", "2", "--encoding", "gray"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn staircase_needs_at_least_as_many_tqe_as_pfg() {
    let dir = tempfile::tempdir().unwrap();
    let h = fixture(dir.path());
    let (c1, c2) = (dir.path().join("pfg.circ"), dir.path().join("stair.circ"));
    let a = pfg(&["synth", s(&h), "--method", "pfg", "--close-cycle", "-o", s(&c1)]);
    let b = pfg(&["synth", s(&h), "--method", "staircase", "-o", s(&c2)]);
    assert!(a.status.success() && b.status.success(), "{}{}", stderr(&a), stderr(&b));
    assert!(metric(&b, "tqe_count") >= metric(&a, "tqe_count"));
    assert!(dir.path().join("pfg.circ.manifest").exists());
}

#[test]
fn synthesized_circuits_verify_for_several_settings() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("fh2.ham");
    assert!(pfg(&["gen", "--model", "fermi-hubbard", "--sites", "2", "--mapping", "bk", "-o", s(&h)]).status.success());
    let runs: [&[&str]; 6] = [
        &["--credit", "0"],
        &["--credit", "0.1"],
        &["--close-cycle"],
        &["--retrace", "--dt", "0.3"],
        &["--expand-tqe"],
        &["--method", "staircase"],
    ];
    for (k, extra) in runs.iter().enumerate() {
        let circ = dir.path().join(format!("c{k}.circ"));
        let metrics = dir.path().join(format!("c{k}.csv"));
        let mut args = vec!["synth", s(&h), "-o", s(&circ), "--metrics", s(&metrics)];
        args.extend_from_slice(extra);
        let o = pfg(&args);
        assert!(o.status.success(), "{extra:?}: {}", stderr(&o));
        assert!(fs::read_to_string(&metrics).unwrap().lines().count() >= 2);
        let manifest = format!("{}.manifest", s(&circ));
        let v = pfg(&["verify", s(&h), s(&circ), &manifest]);
        assert!(v.status.success(), "{extra:?}: {}", stderr(&v));
        assert!(String::from_utf8_lossy(&v.stdout).starts_with("PASS"));
    }
}

#[test]
fn corrupted_angle_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let h = fixture(dir.path());
    let circ = dir.path().join("w.circ");
    assert!(pfg(&["synth", s(&h), "-o", s(&circ)]).status.success());
    let text = fs::read_to_string(&circ).unwrap();
    let mut done = false;
    let corrupted: Vec<String> = text
        .lines()
        .map(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if !done && parts.first() == Some(&"RZ") {
                done = true;
                let angle: f64 = parts[2].parse().unwrap();
                let mut p: Vec<String> = parts.iter().map(|t| t.to_string()).collect();
                p[2] = (angle + 0.05).to_string();
                p.join(" ")
            } else {
                l.to_string()
            }
        })
        .collect();
    assert!(done);
    fs::write(&circ, corrupted.join("\n") + "\n").unwrap();
    let manifest = format!("{}.manifest", s(&circ));
    let v = pfg(&["verify", s(&h), s(&circ), &manifest]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stderr(&v).contains("FAIL") || String::from_utf8_lossy(&v.stdout).contains("FAIL"));
}

#[test]
fn missing_input_is_an_io_error() {
    let o = pfg(&["synth", "/nonexistent/h.ham"]);
    assert_eq!(o.status.code(), Some(3));
}

const MINI_SUITE: &str = r#"
[defaults]
verify_max_qubits = 8

[[sweep]]
model = "fermi-hubbard"
mapping = "jw"
range = [2, 5, 1]
methods = ["pfg", "baseline"]

[[sweep]]
model = "vibronic"
encoding = "gray"
levels = 4
sizes = [2, 3]
"#;

#[test]
fn bench_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("suite.toml");
    fs::write(&spec, MINI_SUITE).unwrap();
    let (o1, o8) = (dir.path().join("w1"), dir.path().join("w8"));
    let a = pfg(&["bench", s(&spec), "-o", s(&o1), "--workers", "1"]);
    let b = pfg(&["bench", s(&spec), "-o", s(&o8), "--workers", "8"]);
    assert!(a.status.success() && b.status.success(), "{}{}", stderr(&a), stderr(&b));
    let r1 = fs::read_to_string(o1.join("results.csv")).unwrap();
    assert_eq!(r1, fs::read_to_string(o8.join("results.csv")).unwrap());
    assert_eq!(r1.lines().count(), 1 + 2 * 4 + 2 * 2);
    assert!(!r1.contains(",fail"));
    assert!(o1.join("timings.csv").exists());
    assert!(fs::read_to_string(o1.join("summary.txt")).unwrap().contains("fermi-hubbard-jw"));
}

#[test]
fn malformed_bench_spec_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.toml");
    fs::write(&spec, "[[sweep]]\nmodel = \"fermi-hubbard\"\nrange = [2, 4]\n").unwrap();
    let o = pfg(&["bench", s(&spec), "-o", s(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&spec, "[[sweep]]\nmodel = \"ising\"\n").unwrap();
    let o = pfg(&["bench", s(&spec), "-o", s(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(2));
}
