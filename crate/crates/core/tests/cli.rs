use std::path::{Path, PathBuf};
use std::process::Command;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/meshes").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gtspline")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("gtspline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn build_verify_tessellate_isophotes() {
    let patches = tmp("t1.patches");
    let mesh = golden("t1.json");
    assert_eq!(run(&["analyze", mesh.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["build", mesh.to_str().unwrap(), "-o", &patches]).0, 0);
    let (code, out) = run(&["verify", &patches]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# gtspline continuity v1") && out.contains("summary") && !out.contains("FAIL"));
    let obj = tmp("t1.obj");
    assert_eq!(run(&["tessellate", &patches, "-n", "4", "-o", &obj]).0, 0);
    assert!(std::fs::read_to_string(&obj).unwrap().lines().any(|l| l.starts_with("f ")));
    let iso = tmp("iso.obj");
    assert_eq!(run(&["isophotes", &patches, "-d", "0.2,-0.3,1", "-l", "0.9,0.95", "-o", &iso]).0, 0);
    assert!(std::fs::read_to_string(&iso).unwrap().lines().any(|l| l.starts_with("l ")));
}

#[test]
fn exit_codes() {
    let bad = golden("bad_close.obj");
    let (code, out) = run(&["build", bad.to_str().unwrap(), "--report-only"]);
    assert_eq!(code, 1);
    assert!(out.contains("too-close"));
    assert_eq!(run(&["build", bad.to_str().unwrap(), "-o", &tmp("x.patches")]).0, 1);
    assert_eq!(run(&["knot-check", golden("bracelet.obj").to_str().unwrap()]).0, 1);
    assert_eq!(run(&["knot-check", golden("grid.obj").to_str().unwrap()]).0, 0);
    let tri = tmp("tri.obj");
    std::fs::write(&tri, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n").unwrap();
    assert_eq!(run(&["analyze", &tri]).0, 2);
    assert_eq!(run(&["verify", "/nonexistent/file"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    // a perturbed patch file fails the audit
    let patches = tmp("t3.patches");
    assert_eq!(run(&["build", golden("t3.obj").to_str().unwrap(), "-o", &patches]).0, 0);
    let text = std::fs::read_to_string(&patches).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let at = lines.iter().position(|l| l.starts_with("patch n0/c/")).unwrap() + 7;
    lines[at] = lines[at].split(' ').map(|t| format!("{:?}", t.parse::<f64>().unwrap() + 1e-3)).collect::<Vec<_>>().join(" ");
    std::fs::write(&patches, lines.join("\n") + "\n").unwrap();
    assert_eq!(run(&["verify", &patches]).0, 1);
}

#[test]
fn stencils_export_matches_golden() {
    let (code, out) = run(&["stencils", "--export"]);
    assert_eq!(code, 0);
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/t1_stencils.txt")).unwrap();
    assert_eq!(out, golden);
    let (code, out) = run(&["stencils", "--derive"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("stencil (0,0):") && out.contains("64"));
}
