use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn homwall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homwall")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn generate(name: &str, size: usize, colors: usize, mode: &str, seed: u64) -> PathBuf {
    let path = scratch(name);
    let o = homwall(&[
        "generate",
        "--size",
        &size.to_string(),
        "--colors",
        &colors.to_string(),
        "--mode",
        mode,
        "--seed",
        &seed.to_string(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bounds_at_q0_k1() {
    let o = homwall(&["bounds", "--q", "0", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "composed 122\nprinted 122\ndifference 0\n");
}

#[test]
fn bounds_at_q1_k1() {
    let o = homwall(&["bounds", "--q", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "composed 211508\nprinted 211266\ndifference 242\n");
}

#[test]
fn bounds_confinement_stage() {
    let o = homwall(&["bounds", "--lemma", "33", "1", "1", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "60");
}

#[test]
fn bounds_wrong_arity_is_usage_error() {
    let o = homwall(&["bounds", "--lemma", "31", "1", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn no_subcommand_is_usage_error() {
    assert_eq!(homwall(&[]).status.code(), Some(2));
    assert_eq!(homwall(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let a = generate("det_a.cmi", 20, 3, "random", 11);
    let b = generate("det_b.cmi", 20, 3, "random", 11);
    let c = generate("det_c.cmi", 20, 3, "random", 12);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn generate_rejects_too_many_colors() {
    let out = scratch("too_many.cmi");
    let o = homwall(&["generate", "--size", "5", "--colors", "2000", "--mode", "random", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_to_unwritable_path_is_io_error() {
    let o = homwall(&["generate", "--size", "5", "--colors", "1", "--out", "/nonexistent/dir/x.cmi"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn homogenize_below_bound_reports_shortfall() {
    let inst = generate("small.cmi", 10, 1, "all-colored", 0);
    let out = scratch("small.mesh");
    let o = homwall(&["homogenize", "--in", p(&inst), "--target-mesh", "6", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INSUFFICIENT"), "{}", stdout(&o));
    assert!(stdout(&o).contains("initial packing"), "{}", stdout(&o));
}

#[test]
fn homogenize_and_verify_wall_at_bound() {
    let inst = generate("q0_122.cmi", 122, 0, "random", 0);
    let mesh = scratch("q0_122.mesh");
    let trace = scratch("q0_122.trace");
    let o = homwall(&["homogenize", "--in", p(&inst), "--target-wall", "1", "--trace", p(&trace), "--out", p(&mesh)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).starts_with("SUCCESS"));
    let v = homwall(&["verify", "--in", p(&inst), "--mesh", p(&mesh), "--suite", "wall"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert_eq!(stdout(&v), "OK\n");
    let t = fs::read_to_string(&trace).unwrap();
    assert!(t.lines().any(|l| l.starts_with("PACKING")));
}

#[test]
fn verify_uniform_and_tampered_meshes() {
    let inst = generate("q0_40.cmi", 40, 0, "random", 0);
    let mesh = scratch("q0_40.mesh");
    let o = homwall(&["homogenize", "--in", p(&inst), "--target-mesh", "2", "--out", p(&mesh)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    for suite in ["uniform", "tangle:base"] {
        let v = homwall(&["verify", "--in", p(&inst), "--mesh", p(&mesh), "--suite", suite]);
        assert_eq!(v.status.code(), Some(0), "{suite}: {}", stdout(&v));
    }

    // Swapping two horizontals breaks the crossing order.
    let text = fs::read_to_string(&mesh).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let h0 = lines.iter().position(|l| l.starts_with("h 0:")).unwrap();
    let h1 = lines.iter().position(|l| l.starts_with("h 1:")).unwrap();
    let (a, b) = (lines[h0].replacen("h 0:", "h 1:", 1), lines[h1].replacen("h 1:", "h 0:", 1));
    lines[h0] = b;
    lines[h1] = a;
    let tampered = scratch("tampered.mesh");
    fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let v = homwall(&["verify", "--in", p(&inst), "--mesh", p(&tampered), "--suite", "uniform"]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("VIOLATION"), "{}", stdout(&v));

    let outside = scratch("outside.mesh");
    fs::write(&outside, "mesh 2 2\nh 0: (0,0) (0,99)\nh 1: (1,0) (1,1)\nv 0: (0,0) (1,0)\nv 1: (0,1) (1,1)\n").unwrap();
    let v = homwall(&["verify", "--in", p(&inst), "--mesh", p(&outside), "--suite", "uniform"]);
    assert_eq!(v.status.code(), Some(2));
}

#[test]
fn malformed_instance_is_usage_error() {
    let bad = scratch("bad.cmi");
    fs::write(&bad, "cmi 1\ndims 2 2 1\nbridge b0 0 0 {2}\n").unwrap();
    let mesh = scratch("unused.mesh");
    let o = homwall(&["homogenize", "--in", p(&bad), "--target-wall", "1", "--out", p(&mesh)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_input_is_io_error() {
    let o = homwall(&["homogenize", "--in", "/nonexistent.cmi", "--target-wall", "1", "--out", "/tmp/x.mesh"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn render_is_valid_and_deterministic() {
    let inst = generate("render5.cmi", 5, 0, "random", 0);
    let a = scratch("render_a.svg");
    let b = scratch("render_b.svg");
    for out in [&a, &b] {
        let o = homwall(&["render", "--in", p(&inst), "--out", p(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let circles = doc.descendants().filter(|n| n.tag_name().name() == "circle").count();
    assert_eq!(circles, 25);
    assert!(!svg.contains("<text"));
}

#[test]
fn render_with_mesh_and_packings() {
    let inst = generate("render40.cmi", 40, 1, "all-colored", 0);
    let mesh = scratch("render40.mesh");
    let trace = scratch("render40.trace");
    let o = homwall(&["homogenize", "--in", p(&inst), "--target-mesh", "2", "--trace", p(&trace), "--out", p(&mesh)]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let svg_path = scratch("render40.svg");
    let o = homwall(&["render", "--in", p(&inst), "--mesh", p(&mesh), "--packings", p(&trace), "--out", p(&svg_path)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(&svg_path).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let ids: Vec<_> = doc.descendants().filter_map(|n| n.attribute("id")).collect();
    for id in ["strips", "grid", "mesh"] {
        assert!(ids.contains(&id), "missing group {id}");
    }
    assert!(svg.contains("<text"));
}
