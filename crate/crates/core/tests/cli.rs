use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tkklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tkklab")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn verify_algebra_passes() {
    let o = tkklab(&["verify-algebra", &config("exchange_f7.toml")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] structurable identity"));
}

#[test]
fn build_tkk_prints_dimensions() {
    let o = tkklab(&["build-tkk", &config("jordan_f25.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("grade dimensions (0, 2, 2, 2, 0), total 6"), "{}", stdout(&o));
}

#[test]
fn config_errors_exit_2_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad_p = write(dir.path(), "p.toml", "[field]\ntype = \"Fp\"\np = 3\n[algebra]\nfamily = \"exchange\"\n");
    let o = tkklab(&["verify-algebra", &bad_p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("field.p"), "{}", stdout(&o));

    let typo = write(dir.path(), "k.toml", "[field]\ntype = \"Fp\"\np = 5\n[algebra]\nfamily = \"matrix\"\nj = \"rank1\"\netaa = 2\n");
    let o = tkklab(&["verify-algebra", &typo]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("etaa"));

    let o = tkklab(&["verify-algebra", &dir.path().join("missing.toml").display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tkklab(&["frobnicate", &config("exchange_f5.toml")]).status.code(), Some(2));
    assert_eq!(tkklab(&["verify-algebra"]).status.code(), Some(2));
    assert_eq!(tkklab(&["verify-algebra", &config("exchange_f5.toml"), "--seed", "x"]).status.code(), Some(2));
}

#[test]
fn unsupported_combinations_exit_2() {
    assert_eq!(tkklab(&["geometry", &config("quaternions.toml")]).status.code(), Some(2));
    assert_eq!(tkklab(&["relations", &config("exchange_f5.toml")]).status.code(), Some(2));
    // the cubic-field hexagon is behind --large
    assert_eq!(tkklab(&["geometry", &config("matrix_cubic_f5.toml")]).status.code(), Some(2));
}

#[test]
fn triangle_export_round_trips_through_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gamma.json").display().to_string();
    let o = tkklab(&["geometry", &config("exchange_f5.toml"), "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = tkklab(&["polygon", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("thin generalized hexagon: girth 12, diameter 6"), "{}", stdout(&o));
}

#[test]
fn polygon_rejects_a_non_polygon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("points.json").display().to_string();
    let o = tkklab(&["geometry", &config("jordan_f25.toml"), "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(tkklab(&["polygon", &out]).status.code(), Some(1));
    let junk = write(dir.path(), "junk.json", "{\"nope\": 1}");
    assert_eq!(tkklab(&["polygon", &junk]).status.code(), Some(2));
}

#[test]
fn wrong_eta_breaks_the_relations() {
    let o = tkklab(&["relations", &config("hexagon_f5.toml"), "--debug-eta", "2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("witness"));
}
