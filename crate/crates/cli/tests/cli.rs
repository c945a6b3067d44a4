//! End-to-end runs of the binary.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robin-square"))
        .args(args)
        .env("ROBIN_SQUARE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<csv::StringRecord> {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records().map(|x| x.unwrap()).collect()
}

fn header(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .next()
        .unwrap_or_default()
        .to_string()
}

#[test]
fn spectrum_matches_the_ordering_table() {
    let out = run(&["spectrum", "--h", "-20", "--k", "19"]);
    assert_eq!(header(&out), "k,value,pairs,multiplicity,negative");
    let r = rows(&out);
    assert_eq!(r.len(), 19);
    let pairs: Vec<&str> = r.iter().map(|x| &x[2]).collect();
    assert_eq!(pairs[..5], ["(0,0)", "(0,1)", "(0,1)", "(1,1)", "(0,2)"]);
    assert_eq!(pairs[18], "(1,5)");
    assert!(r.iter().all(|x| &x[4] == "true"));
    let ks: Vec<usize> = r.iter().map(|x| x[0].parse().unwrap()).collect();
    assert_eq!(ks, (1..=19).collect::<Vec<_>>());
}

#[test]
fn spectrum_shallow_degeneracy_and_first_sixteen() {
    let r = rows(&run(&["spectrum", "--h", "-0.2", "--k", "3"]));
    assert_eq!(r.len(), 3);
    assert_eq!(&r[1][1], &r[2][1]);
    let r = rows(&run(&["spectrum", "--h", "-4", "--k", "16"]));
    assert_eq!(&r[15][2], "(1,4)");
}

#[test]
fn crossings_rows() {
    let out = run(&[
        "crossings",
        "--pair",
        "2,2",
        "--pair",
        "0,3",
        "--h-min",
        "-4",
        "--h-max",
        "-0.1",
    ]);
    assert_eq!(header(&out), "pair_a,pair_b,h_cross,sigma_prime_sign,case");
    let r = rows(&out);
    assert_eq!(r.len(), 1);
    let h: f64 = r[0][2].parse().unwrap();
    assert!((h + 1.6293).abs() < 1e-3);
    assert_eq!(&r[0][4], "iii");

    let r = rows(&run(&[
        "crossings",
        "--pair",
        "0,2",
        "--pair",
        "1,1",
        "--h-min",
        "-8",
        "--h-max",
        "-0.01",
    ]));
    assert!(r.is_empty());
}

#[test]
fn crossings_plot_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("curves.svg");
    let out = run(&[
        "crossings",
        "--pair",
        "2,2",
        "--pair",
        "0,3",
        "--h-min",
        "-4",
        "--h-max",
        "-0.1",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = fs::read_to_string(&svg).unwrap();
    assert_eq!(body.matches("<polyline").count(), 2);
    assert_eq!(body.matches("<circle").count(), 1);
}

#[test]
fn nodal_counts_and_plot() {
    let r = rows(&run(&["nodal", "--pair", "0,4", "--h", "-4", "--theta", "3pi/4"]));
    assert_eq!(&r[0][1], "12");
    assert_eq!(&r[0][3], "5");
    // 2.3562 misses the critical angle, so the five crossings open up
    let r = rows(&run(&["nodal", "--pair", "0,4", "--h", "-4", "--theta", "2.3562"]));
    assert_eq!(&r[0][1], "7");
    let r = rows(&run(&["nodal", "--pair", "0,2", "--h", "-0.1", "--theta", "0.7854"]));
    assert_eq!(&r[0][1], "5");

    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("nodal.svg");
    let csv_path = dir.path().join("nodal.csv");
    let out = run(&[
        "nodal",
        "--pair",
        "1,1",
        "--h",
        "-1",
        "--out",
        csv_path.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,domains,boundary_zeros,critical_zeros,euler_bound"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[1], "4");
    assert_eq!(row[3], "1");
    let body = fs::read_to_string(&svg).unwrap();
    assert!(body.contains("viewBox=\"-1.570796 -1.570796 3.141593 3.141593\""));
    assert_eq!(body.matches("<circle").count(), 1);
}

#[test]
fn sweep_theta_rows() {
    let r = rows(&run(&[
        "sweep-theta",
        "--pair",
        "0,4",
        "--h",
        "-4",
        "--theta-samples",
        "8",
        "--resolution",
        "256",
    ]));
    assert_eq!(r.len(), 8);
    assert_eq!(&r[0][0], "0");
    assert_eq!(&r[0][1], "5");
    assert_eq!(&r[4][1], "5");
    assert_eq!(&r[6][1], "12");
}

#[test]
fn verdicts_at_minus_one() {
    let out = run(&["verdict", "--h", "-1", "--k", "9", "--resolution", "256"]);
    assert_eq!(header(&out), "k,value,verdict,evidence");
    let r = rows(&out);
    let v: Vec<(String, String)> = r.iter().map(|x| (x[0].to_string(), x[2].to_string())).collect();
    let expect = [
        (1, "Sharp"),
        (2, "Sharp"),
        (3, "NotSharp"),
        (4, "Sharp"),
        (5, "Sharp"),
        (9, "Sharp"),
    ];
    for (k, verdict) in expect {
        assert!(v.contains(&(k.to_string(), verdict.to_string())), "k={k}: {v:?}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# run\nh = -20\nk = 5\n").unwrap();
    let r = rows(&run(&["spectrum", "--config", cfg.to_str().unwrap()]));
    assert_eq!(r.len(), 5);
    let r = rows(&run(&["spectrum", "--config", cfg.to_str().unwrap(), "--k", "3"]));
    assert_eq!(r.len(), 3);
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["spectrum", "--h", "-3", "--k", "25"]);
    let b = run(&["spectrum", "--h", "-3", "--k", "25"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["spectrum", "--h", "0.5"]), 2);
    assert_eq!(code(&["nodal", "--pair", "0,2", "--resolution", "300"]), 2);
    assert_eq!(code(&["nodal"]), 2);
    assert_eq!(code(&["spectrum", "--config", "/nonexistent/robin.conf"]), 1);
    assert_eq!(code(&["spectrum", "--out", "/nonexistent/dir/out.csv"]), 1);
    let out = run(&["spectrum", "--h", "0.5"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_robin-square"))
        .args(["spectrum", "--k", "2"])
        .env("ROBIN_SQUARE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
