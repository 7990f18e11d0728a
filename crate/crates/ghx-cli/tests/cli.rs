use std::process::{Command, Output};

fn ghx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghx")).env_remove("GHX_DATA_DIR").args(args).output().expect("ghx runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ghx(args);
    assert!(out.status.success(), "ghx {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Cells of the text row for loop order `g`, without the trailing chi.
fn row(table: &str, g: usize) -> Vec<String> {
    let line = table
        .lines()
        .find(|l| l.split_whitespace().next() == Some(&g.to_string()))
        .unwrap_or_else(|| panic!("no row {g} in\n{table}"));
    let cells: Vec<String> = line.split_whitespace().skip(1).map(str::to_owned).collect();
    cells[..cells.len() - 1].to_vec()
}

#[test]
fn ordinary_odd_table() {
    let t = stdout(&["table", "--family", "ordinary", "--parity", "odd", "--max-loops", "5"]);
    assert_eq!(row(&t, 3)[4], "1");
    assert_eq!(row(&t, 4)[6], "1");
    assert_eq!(row(&t, 5)[8], "2");
    let nonzero: usize =
        (0..=5).map(|g| row(&t, g).iter().filter(|c| c.parse::<i64>().is_ok_and(|x| x > 0)).count()).sum();
    assert_eq!(nonzero, 3);
}

#[test]
fn forested_csv_table() {
    let csv = stdout(&["table", "--family", "forested", "--n", "0", "--max-loops", "4", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("g,m,value,status,shaded,decomposition"));
    let cell = |g: &str, m: &str| {
        csv.lines().map(|l| l.split(',').collect::<Vec<_>>()).find(|f| f[0] == g && f[1] == m).map(|f| f[2].to_owned())
    };
    assert_eq!(cell("4", "4").as_deref(), Some("1"));
    assert_eq!(cell("2", "0").as_deref(), Some("1"));
}

#[test]
fn colored_hairy_labels() {
    let t = stdout(&["table", "--family", "chairy", "--parity", "odd", "--hairs", "3", "--max-loops", "1"]);
    assert!(t.contains("1 (s[3])"), "{t}");
}

#[test]
fn checks_pass_and_exit_zero() {
    for args in [
        &["check", "d2", "--family", "ordinary", "--max-loops", "5"][..],
        &["check", "anticommute", "--family", "forested", "--parity", "even", "--max-loops", "3"],
        &["check", "isotypic", "--family", "colored-hairy", "--parity", "even", "--hairs", "3", "--max-loops", "2"],
        &["check", "euler", "--family", "hairy", "--hairs", "1", "--max-loops", "4"],
        &["check", "reference", "--figure", "ordinary", "--max-loops", "6"],
    ] {
        let out = stdout(args);
        assert!(out.ends_with(" 0 failed\n"), "{args:?}: {out}");
        assert!(!out.contains("FAIL"), "{args:?}: {out}");
    }
}

#[test]
fn reference_list_names_every_file() {
    let out = stdout(&["check", "reference", "--list"]);
    for id in ["ordinary", "merkulov", "colored-hairy", "forested-n-even", "hairy-n-odd-m-even"] {
        assert!(out.lines().any(|l| l == id), "{id} missing from\n{out}");
    }
}

#[test]
fn shade_masks() {
    let hairy = stdout(&[
        "shade",
        "--family",
        "hairy",
        "--parity",
        "even",
        "--m-parity",
        "odd",
        "--hairs",
        "1",
        "--min-loops",
        "3",
        "--max-loops",
        "3",
    ]);
    assert_eq!(hairy.trim(), "3  **....");
    let ordinary =
        stdout(&["shade", "--family", "ordinary", "--parity", "even", "--min-loops", "3", "--max-loops", "3"]);
    let mask = ordinary.split_whitespace().nth(1).unwrap();
    assert!(mask.chars().take(5).all(|c| c == '.'), "{mask}");
    assert!(mask.chars().skip(5).all(|c| c == '*'), "{mask}");
}

#[test]
fn basis_and_rank() {
    let count =
        stdout(&["basis", "--family", "ordinary", "--parity", "odd", "--loops", "3", "--vertices", "4", "--count"]);
    assert_eq!(count.trim(), "1");
    let listing = stdout(&["basis", "--family", "ordinary", "--parity", "odd", "--loops", "3", "--vertices", "4"]);
    assert_eq!(listing.lines().count(), 1);
    let rank = stdout(&["rank", "--family", "ordinary", "--parity", "odd", "--loops", "4", "--vertices", "6"]);
    assert!(rank.ends_with("exact)\n"), "{rank}");
    let sms = stdout(&["matrix", "--family", "ordinary", "--parity", "odd", "--loops", "4", "--vertices", "6"]);
    assert!(sms.trim_end().ends_with("0 0 0"), "{sms}");
}

#[test]
fn warm_store_rebuilds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--data-dir", d, "--stats", "table", "--family", "ordinary", "--parity", "even", "--max-loops", "5"];
    let cold = ghx(&args);
    let warm = ghx(&args);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    let stats = String::from_utf8(warm.stderr).unwrap();
    assert!(stats.contains("built 0"), "{stats}");
    assert!(!stats.contains("store hits 0"), "{stats}");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(
        ghx(&["--prime", "10", "table", "--family", "ordinary", "--parity", "odd", "--max-loops", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(ghx(&["table", "--family", "hairy", "--parity", "odd", "--max-loops", "3"]).status.code(), Some(2));
    assert_eq!(ghx(&["check", "reference", "--figure", "nonexistent", "--max-loops", "3"]).status.code(), Some(2));
}
