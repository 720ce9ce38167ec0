use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use rapoly_core::catalog;
use tempfile::TempDir;

fn rapoly(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rapoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn entry_file(dir: &TempDir, name: &str) -> String {
    let path = dir.path().join(format!("{name}.json"));
    fs::write(&path, catalog::build(name).unwrap().to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_catalog_octahedron() {
    let dir = TempDir::new().unwrap();
    let file = entry_file(&dir, "ideal-octahedron");
    let out = rapoly(&["validate", &file], None);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("valid"));
}

#[test]
fn cube_screen_names_the_rule() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("cube.json");
    fs::write(&file, catalog::three_cube().to_json()).unwrap();
    let plain = rapoly(&["validate", path_str(&file)], None);
    assert_eq!(code(&plain), 0);
    let screened = rapoly(&["validate", "--screen", path_str(&file)], None);
    assert_eq!(code(&screened), 3);
    assert!(stdout(&screened).contains("Nonaka"), "{}", stdout(&screened));
    assert!(stdout(&screened).contains("a_2 = 6 < 12"));
}

#[test]
fn truncated_and_malformed_input() {
    let text = catalog::build("ideal-octahedron").unwrap().to_json();
    let out = rapoly(&["validate"], Some(&text[..text.len() / 2]));
    assert_eq!(code(&out), 4);
    let out = rapoly(
        &["validate"],
        Some(r#"{"dim": 3, "facet_count": 1, "vertices": [], "extra": 1}"#),
    );
    assert_eq!(code(&out), 4);
    let out = rapoly(&["validate", "/nonexistent/file.json"], None);
    assert_eq!(code(&out), 4);
}

#[test]
fn invalid_lattice_exits_2() {
    let p = catalog::build("triangular-bipyramid").unwrap();
    let text = p.to_json().replace("[3, 4, 5]", "[3, 4]");
    let out = rapoly(&["validate"], Some(&text));
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("vertex-degree"), "{}", stdout(&out));
    assert_eq!(code(&rapoly(&["stats"], Some(&text))), 2);
}

#[test]
fn stats_lines() {
    let cell = catalog::build("ideal-24-cell").unwrap().to_json();
    let out = rapoly(&["stats"], Some(&cell));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "a: 24 96 96 24; v_inf: 24\n");

    let octahedron = catalog::build("ideal-octahedron").unwrap().to_json();
    let out = rapoly(&["stats", "--nk"], Some(&octahedron));
    assert!(stdout(&out).contains("a_2^1 = 3 < 6"));
    assert_eq!(code(&out), 0);

    let dodecahedron = catalog::build("right-angled-dodecahedron").unwrap().to_json();
    let out = rapoly(&["stats", "--nonaka"], Some(&dodecahedron));
    assert!(stdout(&out).contains("a_2 = 12 ≥ 12: pass"));

    let out = rapoly(&["stats", "--faces", "2"], Some(&octahedron));
    assert!(stdout(&out).contains("2-faces: 8"));
    assert_eq!(code(&rapoly(&["stats", "--faces", "3"], Some(&octahedron))), 4);
}

#[test]
fn stats_on_cube_flags_nonaka() {
    let out = rapoly(&["stats", "--nonaka"], Some(&catalog::three_cube().to_json()));
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("a_2 = 6 < 12: fail"));
}

#[test]
fn glue_summaries_and_files() {
    let dir = TempDir::new().unwrap();
    let octahedron = entry_file(&dir, "ideal-octahedron");
    let target = dir.path().join("double.json");
    let out = rapoly(
        &["glue", &octahedron, "--facet", "0", "-o", path_str(&target)],
        None,
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("facets 11, v_inf 9\n"));
    let sidecar = fs::read_to_string(dir.path().join("double.map.json")).unwrap();
    assert!(sidecar.contains("\"fate\": \"removed\""));
    assert_eq!(code(&rapoly(&["validate", path_str(&target)], None)), 0);

    let bipyramid = entry_file(&dir, "triangular-bipyramid");
    let out = rapoly(
        &["glue", &bipyramid, "--facet", "0", "-o", path_str(&target)],
        None,
    );
    assert!(stdout(&out).starts_with("facets 7, v_fin 2, v_inf 4\n"));

    let out = rapoly(&["glue", &octahedron, "--facet", "99"], None);
    assert_eq!(code(&out), 4);
}

#[test]
fn catalog_glue_validate_pipeline() {
    for name in catalog::list() {
        let text = stdout(&rapoly(&["catalog", name], None));
        let facets = catalog::build(name).unwrap().facet_count();
        for h in 0..facets {
            let glued = rapoly(&["glue", "--facet", &h.to_string()], Some(&text));
            assert_eq!(code(&glued), 0, "{name} {h}");
            let checked = rapoly(&["validate", "-"], Some(&stdout(&glued)));
            assert_eq!(code(&checked), 0, "{name} {h}: {}", stdout(&checked));
        }
    }
}

#[test]
fn reduce_traces() {
    let cell = catalog::build("ideal-24-cell").unwrap().to_json();
    let out = rapoly(&["reduce", "--u", "+x+y", "--v", "+x-y"], Some(&cell));
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("1 step, final common set empty"),
        "{}",
        stderr(&out)
    );

    let dir = TempDir::new().unwrap();
    let octahedron = entry_file(&dir, "ideal-octahedron");
    let target = dir.path().join("reduced.json");
    let out = rapoly(
        &[
            "reduce",
            &octahedron,
            "--u",
            "+x",
            "--v",
            "+y",
            "-o",
            path_str(&target),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2 steps, final common set empty"));
    assert!(stdout(&out).contains("step 1: facet 0, common 2 -> 1, d 1 -> 2"));
    assert_eq!(code(&rapoly(&["validate", path_str(&target)], None)), 0);

    let out = rapoly(
        &[
            "reduce",
            &octahedron,
            "--u",
            "+x",
            "--v",
            "-x",
            "-o",
            path_str(&target),
        ],
        None,
    );
    assert!(stdout(&out).contains("0 steps"));

    let bipyramid = entry_file(&dir, "triangular-bipyramid");
    assert_eq!(
        code(&rapoly(&["reduce", &bipyramid, "--u", "N", "--v", "v1"], None)),
        4
    );
}

#[test]
fn bounds_tables() {
    let out = rapoly(&["bounds", "--format", "csv"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[7].ends_with(",50800379343089379809,108374184117028860113"));

    let out = rapoly(
        &["bounds", "--base-v5", "2", "--max-dim", "8", "--format", "csv"],
        None,
    );
    let v: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().to_string())
        .collect();
    assert_eq!(v, ["2", "6", "23", "135"]);

    // the n = 12 published quotient slip is reported but explained
    let out = rapoly(&["bounds", "--verify"], None);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("n=12 v_inf"));

    let out = rapoly(&["bounds", "--verify", "--base-v5", "2"], None);
    assert_eq!(code(&out), 2);
}

#[test]
fn bounds_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    for format in ["md", "csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        assert_eq!(
            code(&rapoly(&["bounds", "--format", format, "-o", path_str(&a)], None)),
            0
        );
        assert_eq!(
            code(&rapoly(&["bounds", "--format", format, "-o", path_str(&b)], None)),
            0
        );
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn bad_flags_exit_4() {
    assert_eq!(code(&rapoly(&["bounds", "--format", "xml"], None)), 4);
    assert_eq!(code(&rapoly(&["bounds", "--nu-rule", "quadratic"], None)), 4);
    assert_eq!(code(&rapoly(&["bounds", "--max-dim", "4"], None)), 4);
    assert_eq!(code(&rapoly(&["bounds", "--base-v5", "-3"], None)), 4);
    assert_eq!(code(&rapoly(&["frobnicate"], None)), 4);
    assert_eq!(code(&rapoly(&["catalog", "nonexistent"], None)), 4);
    assert_eq!(code(&rapoly(&["--help"], None)), 0);
}

#[test]
fn catalog_emission_is_byte_stable() {
    for name in catalog::list() {
        let a = rapoly(&["catalog", name], None);
        let b = rapoly(&["catalog", name], None);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(stdout(&a), catalog::build(name).unwrap().to_json());
    }
    let listing = stdout(&rapoly(&["catalog"], None));
    let names: Vec<&str> = listing.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(names, catalog::list());
}
