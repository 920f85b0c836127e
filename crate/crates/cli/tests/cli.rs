use std::process::{Command, Output};

use height_census::census::{CensusRecord, CensusRow};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_height-census"))
        .args(args)
        .env_remove("HEIGHT_CENSUS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_is_thread_count_independent() {
    let base = [
        "census-mahler",
        "--degree",
        "3",
        "--k",
        "1",
        "--max-measure",
        "3",
    ];
    let outputs: Vec<Vec<u8>> = ["1", "4", "8"]
        .iter()
        .map(|t| {
            let mut args = base.to_vec();
            args.extend(["--threads", t]);
            let o = run(&args);
            assert!(o.status.success());
            o.stdout
        })
        .collect();
    assert!(outputs.len() == 3 && outputs.iter().all(|o| *o == outputs[0]));
    let via_env = Command::new(env!("CARGO_BIN_EXE_height-census"))
        .args(base)
        .env("HEIGHT_CENSUS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, outputs[0]);
}

#[test]
fn json_roundtrips_to_the_same_records() {
    let args = ["census-a", "--degree", "2", "--k", "1", "--max-height", "2"];
    let csv_out = run(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json_out = run(&json_args);
    assert!(csv_out.status.success() && json_out.status.success());
    let rows: Vec<CensusRow> = serde_json::from_slice(&json_out.stdout).unwrap();
    let from_json: Vec<CensusRecord> = rows
        .iter()
        .map(|r| CensusRecord::from_row(r).unwrap())
        .collect();
    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let from_csv: Vec<CensusRecord> = reader
        .deserialize::<CensusRow>()
        .map(|r| CensusRecord::from_row(&r.unwrap()).unwrap())
        .collect();
    assert!(!from_csv.is_empty());
    assert_eq!(from_json, from_csv);
}

#[test]
fn census_b_lists_square_roots() {
    let o = run(&[
        "census-b",
        "--degree",
        "2",
        "--k",
        "0",
        "--max-height",
        "sqrt(10)",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "key_minpoly,key_root_index,key_approx,d,k,count,deg_Hd"
    );
    assert_eq!(lines.len(), 11);
    assert!(lines[10].starts_with("\"-10,0,1\",1,3.16227766016837933200,"));
    // sqrt(10) is just above 3.16
    let o = run(&[
        "census-b",
        "--degree",
        "2",
        "--k",
        "0",
        "--max-height",
        "3.16",
    ]);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn orbit_prints_steps_and_classification() {
    let o = run(&[
        "orbit",
        "--minpoly",
        "-1,-1,1",
        "--root-index",
        "1",
        "--max-steps",
        "8",
        "--eps",
        "0.02",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("0\t-1,-1,1\t1.618033988749894848204586834366\t2\n"));
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("1\t-1,0,-1,0,1\t1.27201964951406896425"));
    assert!(text
        .lines()
        .last()
        .unwrap()
        .starts_with("classification: TendingToOne"));
    let o = run(&[
        "orbit",
        "--minpoly",
        "-8,0,0,0,0,1",
        "--root-index",
        "0",
        "--max-steps",
        "3",
    ]);
    assert!(stdout(&o).contains("FixedSurd a=2 b=3/5 settled_at=0"));
}

#[test]
fn families_print_polynomials() {
    let o = run(&["family", "--name", "eisenstein", "--params", "5,3"]);
    assert_eq!(stdout(&o), "-2,0,0,5\n");
    let o = run(&["family", "--name", "quartic", "--params", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("# beta = 17 + 12*sqrt(2)\n1,-20,36,-4,1\n"));
    assert_eq!(text.lines().count(), 11);
    let o = run(&["family", "--name", "quartic", "--params", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_and_slopes() {
    let o = run(&["verify", "--suite", "multiplicativity"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);

    let dir = std::env::temp_dir().join(format!("height-census-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("b.csv");
    let plot = dir.join("b.dat");
    let o = run(&[
        "census-b",
        "--degree",
        "2",
        "--k",
        "0",
        "--max-height",
        "sqrt(40)",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&[
        "slopes",
        "--input",
        csv.to_str().unwrap(),
        "--window",
        "all",
        "--gnuplot",
        plot.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let est: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let slope = est["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
    // x = 1 carries no slope information
    assert_eq!(std::fs::read_to_string(&plot).unwrap().lines().count(), 39);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_flags_exit_two_with_json() {
    for args in [
        vec!["census-a", "--degree", "2"],
        vec!["census-a", "--degree", "2", "--k", "5", "--max-height", "2"],
        vec![
            "census-a",
            "--degree",
            "2",
            "--k",
            "0",
            "--max-height",
            "nope",
        ],
        vec!["verify", "--suite", "nonsense"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(err["error"], "usage");
    }
}
