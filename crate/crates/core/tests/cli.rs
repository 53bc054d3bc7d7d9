use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dpbloom::harness::FilterFile;
use dpbloom::{dist_w, Error};

fn dpbloom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpbloom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_dataset(dir: &Path, name: &str, lines: &[String]) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, lines.join("\n")).unwrap();
    path
}

#[test]
fn build_reports_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let data: Vec<String> = (0..100).map(|i| (i * 7919).to_string()).collect();
    let input = write_dataset(dir.path(), "a.txt", &data);
    let out = dir.path().join("f.bin");
    let o = dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "1024",
        "--k",
        "4",
        "--seed",
        "5",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("m=1024"));
    assert!(text.contains("A=100"));
    assert!(text.contains("fpr_exact=0.0109514547034"), "{text}");

    let bytes = fs::read(&out).unwrap();
    assert_eq!(bytes.len(), 96 + 128);
    let file = FilterFile::decode(&bytes).unwrap();
    assert!(matches!(file, FilterFile::Plain(_)));
    assert_eq!(file.encode().unwrap(), bytes);

    // same inputs, same bytes
    let out2 = dir.path().join("g.bin");
    dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "1024",
        "--k",
        "4",
        "--seed",
        "5",
        "--out",
        p(&out2),
    ]);
    assert_eq!(fs::read(&out2).unwrap(), bytes);
}

#[test]
fn empty_dataset_gives_empty_filter() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_dataset(dir.path(), "empty.txt", &[]);
    let out = dir.path().join("f.bin");
    let o = dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "64",
        "--k",
        "3",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success());
    let bytes = fs::read(&out).unwrap();
    assert!(bytes[96..].iter().all(|&b| b == 0));
    assert_eq!(FilterFile::decode(&bytes).unwrap().inserted_count(), 0);

    let o = dpbloom(&["query", "--filter", p(&out), "--value", "12345"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "12345,0");
}

#[test]
fn privatize_is_deterministic_and_refuses_twice() {
    let dir = tempfile::tempdir().unwrap();
    let data: Vec<String> = (1..=5).map(|i| (i * 1000).to_string()).collect();
    let input = write_dataset(dir.path(), "a.txt", &data);
    let plain = dir.path().join("f.bin");
    dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "32",
        "--k",
        "3",
        "--out",
        p(&plain),
    ]);

    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    for out in [&a, &b] {
        let o = dpbloom(&[
            "privatize",
            "--input",
            p(&plain),
            "--epsilon",
            "1",
            "--delta",
            "0.05",
            "--seed",
            "9",
            "--out",
            p(out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let n = dpbloom::quantile_n(&dist_w(32, 3, 5).unwrap(), 0.05).unwrap();
        assert!(stdout(&o).contains(&format!("N={n}")));
        assert!(stdout(&o).contains(&format!("eps0={}", 1.0 / n as f64)));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(matches!(
        FilterFile::load(&a).unwrap(),
        FilterFile::Private(_)
    ));

    let o = dpbloom(&[
        "privatize",
        "--input",
        p(&a),
        "--epsilon",
        "1",
        "--delta",
        "0.05",
        "--seed",
        "9",
        "--out",
        p(&b),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("already privatized"));
}

#[test]
fn query_lines_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_dataset(
        dir.path(),
        "a.txt",
        &["apple".into(), "pear".into(), "17".into()],
    );
    let plain = dir.path().join("f.bin");
    let o = dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "256",
        "--k",
        "3",
        "--n",
        "1000000",
        "--hash-tokens",
        "--out",
        p(&plain),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let queries = write_dataset(
        dir.path(),
        "q.txt",
        &["apple".into(), "17".into(), "-3".into(), "pear".into()],
    );
    let o = dpbloom(&[
        "query",
        "--filter",
        p(&plain),
        "--queries",
        p(&queries),
        "--hash-tokens",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    // "-3" is hashed as text in this mode, so it is a query too
    assert_eq!(&lines[..2], &["apple,1", "17,1"]);
    assert_eq!(lines[3], "pear,1");
    assert!(lines[4].starts_with("# queries=4"));

    let o = dpbloom(&["query", "--filter", p(&plain), "--queries", p(&queries)]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("line 1"));
    assert!(stderr(&o).contains("line 3"));
    assert_eq!(stdout(&o).lines().next().unwrap(), "17,1");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_dataset(dir.path(), "a.txt", &["1".into(), "2".into(), "x".into()]);
    let o = dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "64",
        "--k",
        "2",
        "--out",
        p(&dir.path().join("f")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    let o = dpbloom(&[
        "build",
        "--input",
        p(&missing),
        "--m",
        "64",
        "--k",
        "2",
        "--out",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let input = write_dataset(dir.path(), "a.txt", &["1".into()]);
    let o = dpbloom(&[
        "build",
        "--input",
        p(&input),
        "--m",
        "1",
        "--k",
        "2",
        "--out",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(dpbloom(&["bogus"]).status.code(), Some(1));
    assert_eq!(dpbloom(&["--help"]).status.code(), Some(0));
    let garbage = dir.path().join("garbage.bin");
    fs::write(&garbage, b"not a filter").unwrap();
    assert_eq!(
        dpbloom(&["query", "--filter", p(&garbage), "--value", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(Error::Io(std::io::Error::other("x")).exit_code(), 2);
}

#[test]
fn calibrate_csv() {
    let o = dpbloom(&[
        "calibrate",
        "--m",
        "32",
        "--k",
        "3",
        "--size",
        "5",
        "--delta",
        "0.05",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("w,pmf,cdf"));
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let d = dist_w(32, 3, 5).unwrap();
    assert_eq!(rows.len(), 7);
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-9);
    for (r, q) in rows.iter().zip(d.pmf()) {
        assert_eq!(r[1], *q);
    }
    assert!(out.contains("# N=6,p0="));

    let o = dpbloom(&[
        "calibrate",
        "--m",
        "32",
        "--k",
        "3",
        "--size",
        "1",
        "--delta",
        "0.05",
    ]);
    assert!(stdout(&o).contains("p0=1\n"), "{}", stdout(&o));
    let o = dpbloom(&[
        "calibrate",
        "--m",
        "32",
        "--k",
        "3",
        "--size",
        "5",
        "--delta",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn experiment_to_file_and_bad_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    let out = dir.path().join("r.csv");
    fs::write(&cfg, "# fpr grid\nkind = fpr\nm = 256, 512\nk = 3\ndataset_size = 20\ntrials = 10\nquery_count = 100\nseed = 4\n").unwrap();
    let o = dpbloom(&["experiment", "--config", p(&cfg), "--out", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next(), Some("m,k,A,fpr_exact,fpr_emp,ci"));
    assert_eq!(csv.lines().count(), 3);

    let again = dir.path().join("r2.csv");
    dpbloom(&["experiment", "--config", p(&cfg), "--out", p(&again)]);
    assert_eq!(fs::read(&again).unwrap(), csv.as_bytes());

    fs::write(&cfg, "kind = fpr\nmystery = 3\n").unwrap();
    let o = dpbloom(&["experiment", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("mystery"));
}

#[test]
fn experiment_keeps_going_after_a_bad_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(
        &cfg,
        "kind = calibrate\nm = 1, 32\nk = 3\ndataset_size = 5\n",
    )
    .unwrap();
    let o = dpbloom(&["experiment", "--config", p(&cfg)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("m=1"));
    assert!(stdout(&o).contains("# N=6"));
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "kind = wdist\ntrials = 10000\nseed = 7\n").unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_dpbloom"))
            .args(["experiment", "--config", p(&cfg)])
            .env("DPBLOOM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("0"));
}
