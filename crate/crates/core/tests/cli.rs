mod common;

use common::{command_matrix, example_db, run_cli};
use photocell::config::{parse_config, RunConfig};
use sha2::{Digest, Sha256};

fn digest(bytes: &[u8]) -> Vec<u8> {
    Sha256::digest(bytes).to_vec()
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn every_command_is_repeatable_and_parallel_invariant() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in command_matrix() {
        let args = strs(&args);
        let (c1, csv1, sum1) = run_cli(&args, dir.path(), &format!("{name}-a"));
        let (c2, csv2, sum2) = run_cli(&args, dir.path(), &format!("{name}-b"));
        let mut par = args.clone();
        par.push("--parallel");
        let (c3, csv3, sum3) = run_cli(&par, dir.path(), &format!("{name}-p"));
        assert_eq!((c1, c2, c3), (0, 0, 0), "{name}");
        assert!(!csv1.is_empty(), "{name}");
        assert_eq!(digest(&csv1), digest(&csv2), "{name}");
        assert_eq!(digest(&csv1), digest(&csv3), "{name}");
        assert_eq!(sum1, sum2, "{name}");
        assert_eq!(sum1, sum3, "{name}");
    }
}

#[test]
fn shown_config_reads_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text, _) = run_cli(
        &[
            "show-config",
            "--preset",
            "fig8",
            "--set",
            "j12=0.02",
            "--dephase",
            "1e-4",
        ],
        dir.path(),
        "shown",
    );
    assert_eq!(code, 0);
    let text = String::from_utf8(text).unwrap();
    let parsed: RunConfig = parse_config(&text).unwrap();
    assert_eq!(parsed.to_config_text(), text);
    assert_eq!(parsed.j12, 0.02);
    assert_eq!(parsed.dephase, Some(1e-4));

    let path = dir.path().join("shown.cfg");
    std::fs::write(&path, &text).unwrap();
    let (code, again, _) = run_cli(
        &["show-config", "--config", path.to_str().unwrap()],
        dir.path(),
        "again",
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(again).unwrap(), text);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_file = dir.path().join("bad.cfg");
    std::fs::write(&bad_file, "preset = fig4\nj12 = lots\n").unwrap();
    let db = example_db();
    let cases: Vec<Vec<&str>> = vec![
        vec!["optimize", "--set", "no_such_key=1"],
        vec!["optimize", "--set", "j12"],
        vec!["optimize", "--config", bad_file.to_str().unwrap()],
        vec!["optimize", "--config", "/nonexistent/photocell.cfg"],
        vec!["optimize", "--preset", "fig99"],
        vec!["surface", "--set", "delta_eps_grid=lin(0.2, 0.1, 0)"],
        vec!["optimize", "--set", "eps_beta=5"],
        vec!["screen"],
        vec!["histogram", "--db", &db],
        vec!["no-such-command"],
        vec!["optimize", "--secular", "--nonsecular"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let (code, _, _) = run_cli(args, dir.path(), &format!("bad{k}"));
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    // no trap transfer: both powers vanish and the ratio is undefined
    let (code, _, _) = run_cli(
        &["optimize", "--preset", "fig4", "--set", "gamma_1alpha=0"],
        dir.path(),
        "zero",
    );
    assert_eq!(code, 3);
}

#[test]
fn missing_database_file_is_not_a_crash() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_cli(
        &["screen", "--db", "/nonexistent/db.csv"],
        dir.path(),
        "nodb",
    );
    assert!(code == 2 || code == 3, "{code}");
}

#[test]
fn empty_database_gives_a_header_only_table() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("empty.csv");
    std::fs::write(&db, "id,e_g,mu_g,e_e,mu_e\n").unwrap();
    let (code, csv, summary) =
        run_cli(&["screen", "--db", db.to_str().unwrap()], dir.path(), "out");
    assert_eq!(code, 0);
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("donor_id,acceptor_id,"));
    assert!(summary.contains("candidates: 0"), "{summary}");
}

#[test]
fn iv_power_has_a_single_peak() {
    let dir = tempfile::tempdir().unwrap();
    let (code, csv, summary) = run_cli(&["iv", "--preset", "ivpv"], dir.path(), "iv");
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(csv.as_slice());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["gamma_alphabeta", "current", "voltage", "power"]
    );
    let rows: Vec<[f64; 4]> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            std::array::from_fn(|k| r[k].parse().unwrap())
        })
        .collect();
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    let p: Vec<f64> = rows.iter().map(|r| r[3]).collect();
    let peak = p
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(peak > 0 && peak < p.len() - 1);
    assert!(p[..=peak].windows(2).all(|w| w[0] <= w[1]));
    assert!(p[peak..].windows(2).all(|w| w[0] >= w[1]));
    // voltage falls as the trap empties faster
    assert!(rows.windows(2).all(|w| w[1][2] <= w[0][2] + 1e-12));
    assert!(summary.contains("max_power:"));
    let best: f64 = summary
        .lines()
        .find_map(|l| l.strip_prefix("max_power: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(best >= p[peak] * (1.0 - 1e-12));
}
