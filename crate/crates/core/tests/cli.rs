use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hdds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdds"))
        .args(args)
        .env_remove("HDDS_NO_COLOR")
        .output()
        .unwrap()
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Every `#rrggbb` used as a path fill.
fn path_fills(svg: &str) -> Vec<&str> {
    svg.match_indices("<path d=")
        .filter_map(|(i, _)| {
            let rest = &svg[i..];
            let at = rest.find("fill=\"#")? + 7;
            Some(&rest[at..at + 6])
        })
        .collect()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(hdds(&["--help"]).status.code(), Some(0));
    assert_eq!(hdds(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hdds(&[]).status.code(), Some(1));
    assert_eq!(hdds(&["frobnicate"]).status.code(), Some(1));
    let mix = fixture("mixture.csv");
    // missing target
    assert_eq!(hdds(&["plot", &mix]).status.code(), Some(1));
    // out-of-range parameters
    for bad in [
        ["--coverage", "1.5"],
        ["--gamma", "0"],
        ["--bins", "1"],
        ["--k", "-1"],
    ] {
        let out = hdds(&["plot", &mix, "--target", "z", bad[0], bad[1]]);
        assert_eq!(out.status.code(), Some(1), "{bad:?}: {}", stderr(&out));
    }
    // wrong number of inputs
    assert_eq!(
        hdds(&["plot", &mix, &mix, "--target", "z"]).status.code(),
        Some(1)
    );
    // table without a conditioner
    assert_eq!(
        hdds(&["table", &mix, "--target", "z"]).status.code(),
        Some(1)
    );
}

#[test]
fn unknown_column_is_named() {
    let out = hdds(&["plot", &fixture("mixture.csv"), "--target", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("nope"), "{msg}");
    assert_eq!(msg.lines().count(), 1, "{msg}");
}

#[test]
fn missing_and_empty_inputs_exit_two() {
    let out = hdds(&["plot", "/definitely/not/here.csv", "--target", "z"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let dir = tempfile::tempdir().unwrap();
    let header_only = write_tmp(&dir, "empty.csv", "z,g\n");
    let out = hdds(&["plot", header_only.to_str().unwrap(), "--target", "z"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let all_missing = write_tmp(&dir, "na.csv", "z\nNA\n\n.\nnull\n");
    let out = hdds(&["plot", all_missing.to_str().unwrap(), "--target", "z"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn degenerate_data_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let constant = write_tmp(&dir, "c.csv", "z\n1.5\n1.5\n1.5\n1.5\n");
    let out = hdds(&["plot", constant.to_str().unwrap(), "--target", "z"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn level_mismatch_lists_levels() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_tmp(&dir, "a.csv", "z,g\n1,p\n2,q\n3,p\n4,q\n5,p\n6,q\n");
    let b = write_tmp(&dir, "b.csv", "z,g\n1,p\n2,r\n3,p\n4,r\n5,p\n6,r\n");
    let out = hdds(&[
        "table-compare",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--target",
        "z",
        "--by-x",
        "g",
    ]);
    assert_ne!(out.status.code(), Some(0));
    let msg = stderr(&out);
    assert!(msg.contains('q') && msg.contains('r'), "{msg}");
}

#[test]
fn out_flag_matches_stdout() {
    let mix = fixture("mixture.csv");
    let to_stdout = hdds(&["plot", &mix, "--target", "z", "--dots"]);
    assert!(to_stdout.status.success());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let to_file = hdds(&[
        "plot",
        &mix,
        "--target",
        "z",
        "--dots",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

#[test]
fn no_color_env_renders_gray() {
    let mix = fixture("mixture.csv");
    let colored = hdds(&["plot", &mix, "--target", "z"]);
    let gray = Command::new(env!("CARGO_BIN_EXE_hdds"))
        .args(["plot", &mix, "--target", "z"])
        .env("HDDS_NO_COLOR", "1")
        .output()
        .unwrap();
    assert!(gray.status.success());

    let is_gray = |hex: &&str| hex[0..2] == hex[2..4] && hex[2..4] == hex[4..6];
    let colored_svg = String::from_utf8(colored.stdout).unwrap();
    let gray_svg = String::from_utf8(gray.stdout).unwrap();
    let fills = path_fills(&gray_svg);
    assert!(!fills.is_empty());
    assert!(fills.iter().all(is_gray), "non-gray fill in {fills:?}");
    assert!(!path_fills(&colored_svg).iter().all(is_gray));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_tmp(
        &dir,
        "c.toml",
        "target = \"z\"\ncolor = \"250,90,30\"\nseed = 3\n",
    );
    let mix = fixture("mixture.csv");
    let from_file = hdds(&["plot", &mix, "--config", cfg.to_str().unwrap()]);
    let explicit = hdds(&[
        "plot",
        &mix,
        "--target",
        "z",
        "--color",
        "250,90,30",
        "--seed",
        "3",
    ]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(from_file.stdout, explicit.stdout);

    let overridden = hdds(&[
        "plot",
        &mix,
        "--config",
        cfg.to_str().unwrap(),
        "--color",
        "10,90,30",
    ]);
    let default_color = hdds(&["plot", &mix, "--target", "z", "--seed", "3"]);
    assert_eq!(overridden.stdout, default_color.stdout);
    assert_ne!(overridden.stdout, from_file.stdout);
}

#[test]
fn bad_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_tmp(&dir, "c.toml", "colour = \"1,2,3\"\n");
    let out = hdds(&[
        "plot",
        &fixture("mixture.csv"),
        "--target",
        "z",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn dropped_rows_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_tmp(&dir, "d.csv", "z\n0.1\nNA\n0.7\nabc\n1.3\n2.2\n\n-0.4\n");
    // the stray word makes inference call the column categorical
    let inferred = hdds(&["plot", csv.to_str().unwrap(), "--target", "z"]);
    assert_eq!(inferred.status.code(), Some(1));

    let out = hdds(&[
        "plot",
        csv.to_str().unwrap(),
        "--target",
        "z",
        "--type",
        "z=continuous",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let msg = stderr(&out);
    assert!(msg.contains("dropped 2 of"), "{msg}");
}

#[test]
fn compare_one_file_needs_two_levels() {
    let shiw = fixture("shiw.csv");
    let ok = hdds(&["compare", &shiw, "--target", "income", "--by-x", "gender"]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let bad = hdds(&[
        "compare",
        &shiw,
        "--target",
        "income",
        "--by-x",
        "employment",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn seed_changes_dots_only() {
    let mix = fixture("mixture.csv");
    let a = hdds(&["plot", &mix, "--target", "z", "--dots", "--seed", "1"]);
    let b = hdds(&["plot", &mix, "--target", "z", "--dots", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
    let sa = String::from_utf8(a.stdout).unwrap();
    let sb = String::from_utf8(b.stdout).unwrap();
    assert_eq!(path_fills(&sa), path_fills(&sb));
}
