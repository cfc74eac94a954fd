use std::path::PathBuf;
use std::process::{Command, Output};

fn shiftdtw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftdtw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", stderr(out));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn banded_measures_need_a_radius() {
    let out = shiftdtw(&["dist", "--measure", "dtw_banded", "1,2,3", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("-r"));

    let out = shiftdtw(&["dist", "--measure", "euclidean", "-r", "1", "1,2,3", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_clusters_is_a_usage_error() {
    let out = shiftdtw(&["cluster", "--k", "0", "--measure", "dtw", &fixture("BirdChicken_TRAIN.tsv")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_measure_is_a_usage_error() {
    let out = shiftdtw(&["dist", "--measure", "manhattan", "1,2", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_a_data_error() {
    let out = shiftdtw(&["cluster", "--k", "2", "--measure", "dtw", "/no/such/file.tsv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/no/such/file.tsv"));
}

#[test]
fn radius_too_large_is_a_data_error() {
    let out = shiftdtw(&["dist", "--measure", "shiftdtw", "-r", "3", "1,2,3", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_series_are_at_distance_zero() {
    for measure in [&["--measure", "euclidean"][..], &["--measure", "dtw"], &["--measure", "shiftdtw", "-r", "1"]] {
        let mut args = vec!["dist"];
        args.extend_from_slice(measure);
        args.extend_from_slice(&["1,5,2,8,3,9", "1,5,2,8,3,9"]);
        let doc = json(&shiftdtw(&args));
        assert_eq!(doc["distance"], 0.0, "{measure:?}");
    }
}

#[test]
fn shiftdtw_reports_distance_and_shift() {
    // The second series is the first rotated left by 3 = 2r+1.
    let doc = json(&shiftdtw(&["dist", "--measure", "shiftdtw", "-r", "1", "4,0,1,7,2,5", "7,2,5,4,0,1"]));
    assert_eq!(doc["command"], "dist");
    assert_eq!(doc["distance"], 0.0);
    assert_eq!(doc["shift"], 3);
    assert_eq!(doc["measure"]["kind"], "shiftdtw");
    assert_eq!(doc["measure"]["radius"], 1);
    assert!(doc.get("per_offset").is_none());

    let doc = json(&shiftdtw(&[
        "dist", "--measure", "shiftdtw", "-r", "1", "--per-offset", "4,0,1,7,2,5", "7,2,5,4,0,1",
    ]));
    assert_eq!(doc["per_offset"].as_array().unwrap().len(), 2);
}

#[test]
fn dist_reads_files_and_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    std::fs::write(&a, "0,1,2,3\n").unwrap();
    std::fs::write(&b, "0,1,2,5\n").unwrap();
    let out = shiftdtw(&[
        "dist", "--measure", "euclidean", "--format", "csv",
        a.to_str().unwrap(), b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("measure,radius,series_a,series_b,distance,shift,visited_cells"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "euclidean");
    assert_eq!(row[4].parse::<f64>().unwrap(), 2.0);
}

#[test]
fn cluster_with_labels_reports_accuracy() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("c.json");
    let out = shiftdtw(&[
        "cluster", "--k", "2", "--measure", "euclidean", "--n-init", "3", "--seed", "7", "--labels",
        "--out", out_path.to_str().unwrap(), &fixture("BirdChicken_TRAIN.tsv"),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    let acc = doc["accuracy"].as_f64().unwrap();
    assert!((0.5..=1.0).contains(&acc));
    assert_eq!(doc["assignments"].as_array().unwrap().len(), 20);
    assert_eq!(doc["barycenters"].as_array().unwrap().len(), 2);
    assert_eq!(doc["config"]["seed"], 7);
}

#[test]
fn cluster_labels_on_unlabelled_csv_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    std::fs::write(&path, "0,1,2\n2,1,0\n0,1,3\n").unwrap();
    let p = path.to_str().unwrap();
    let out = shiftdtw(&["cluster", "--k", "2", "--measure", "dtw", "--labels", p]);
    assert_eq!(out.status.code(), Some(1));
    let out = shiftdtw(&["cluster", "--k", "2", "--measure", "dtw", "--format", "csv", p]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("series_id,cluster,shift"));
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn bench_counters_respect_the_budget() {
    let out = shiftdtw(&["bench", "--lengths", "32,64", "--radii", "1,3", "--reps", "1", "--no-timing"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,m,r,visited_cells,wall_time_ns"));
    let mut seen = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (m, r, cells): (usize, usize, usize) =
            (f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap());
        assert_eq!(f[4], "0");
        if f[0] == "shiftdtw" {
            assert!(cells <= m * m + m * (2 * r + 1), "{line}");
            seen += 1;
        }
    }
    assert_eq!(seen, 4);
}
