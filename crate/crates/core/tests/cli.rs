use elastic_varifolds::cli::run_with;
use elastic_varifolds::generators::circle;
use elastic_varifolds::io::{load_system, save_system, system_to_json};
use elastic_varifolds::CurveSystem;
use std::path::Path;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("elastic-varifolds").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn energy_of_unit_circle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("circle.json");
    save_system(&CurveSystem::single(circle(1.0, 2048)), &input).unwrap();
    let (code, out, _) = run(&["energy", "--input", path_str(&input), "--p", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("mass    6.28318"), "{out}");
    assert!(out.contains("E_2     6.28319"), "{out}");
    assert!(out.contains("F_2     12.5664"), "{out}");
}

#[test]
fn check_rejects_square() {
    let (code, out, _) = run(&["check", "--gen", "square:1,64", "--p", "2"]);
    assert_eq!(code, 1);
    assert!(
        out.contains("irregular vertices: 4; relaxed energy infinite (p-polygon)"),
        "{out}"
    );
}

#[test]
fn check_accepts_figure_eight() {
    let (code, out, _) = run(&["check", "--gen", "figure-eight:256"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn render_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    assert_eq!(
        run(&["render", "--gen", "figbm:16", "--out", path_str(&a)]).0,
        0
    );
    assert_eq!(
        run(&["render", "--gen", "figbm:16", "--out", path_str(&b)]).0,
        0
    );
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert!(String::from_utf8(x)
        .unwrap()
        .contains("data-multiplicity=\"2\""));
}

#[test]
fn malformed_json_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    std::fs::write(&input, "{\"curves\": [\n  {\"nodes\": [[0, 0], oops]}\n]}").unwrap();
    let (code, _, err) = run(&["energy", "--input", path_str(&input)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column"), "{err}");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["energy", "--input", "/nonexistent/c.json"]).0, 2);
    assert_eq!(run(&["energy", "--gen", "circle:1,64", "--bogus"]).0, 2);
    assert_eq!(run(&["energy"]).0, 2);
    assert_eq!(
        run(&[
            "render",
            "--gen",
            "circle:1,64",
            "--out",
            "/nonexistent/dir/x.svg"
        ])
        .0,
        2
    );
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn version_lists_format() {
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains("file format"), "{out}");
}

#[test]
fn graph_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("graph.json");
    let (code, out, _) = run(&[
        "graph",
        "--gen",
        "figure-eight:256",
        "--report",
        path_str(&report),
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(v["regularity"]["regular"], true);
    assert!(v["cusps"]["odd_vertices"].is_array());
}

#[test]
fn cusps_on_leaf() {
    let (code, out, _) = run(&["cusps", "--gen", "leaf:32"]);
    assert_eq!(code, 0);
    assert!(out.contains("odd vertices of the halved graph: 2"), "{out}");
}

#[test]
fn reconstruct_writes_pgm_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("disc.pgm");
    let (code, _, err) = run(&[
        "reconstruct",
        "--gen",
        "circle:1,256",
        "--bbox",
        "-1.5,-1.5,1.5,1.5",
        "--res",
        "64,32",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0, "{err}");
    let pgm = std::fs::read(&out).unwrap();
    assert!(pgm.starts_with(b"P5\n64 32\n255\n"));
    assert_eq!(pgm.len(), b"P5\n64 32\n255\n".len() + 64 * 32);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(meta["resolution"], serde_json::json!([64, 32]));
}

#[test]
fn monotonicity_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let (code, _, _) = run(&[
        "monotonicity",
        "--gen",
        "circle:1,256",
        "--center",
        "0,0",
        "--radii",
        "50",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("r,A\n"));
    assert_eq!(text.lines().count(), 51);
}

#[test]
fn minimize_with_freeze_file() {
    let dir = tempfile::tempdir().unwrap();
    let (input, freeze, out, trace) = (
        dir.path().join("c.json"),
        dir.path().join("f.json"),
        dir.path().join("s.json"),
        dir.path().join("t.csv"),
    );
    let s = CurveSystem::single(circle(1.5, 32));
    save_system(&s, &input).unwrap();
    std::fs::write(&freeze, r#"{"clamp": {"rects": [[0, -2, 2, 2]]}}"#).unwrap();
    let (code, stdout, err) = run(&[
        "minimize",
        "--input",
        path_str(&input),
        "--freeze",
        path_str(&freeze),
        "--lambda",
        "1",
        "--iters",
        "200",
        "--out",
        path_str(&out),
        "--trace",
        path_str(&trace),
    ]);
    assert_eq!(code, 0, "{stdout}{err}");
    let solved = load_system(&out).unwrap();
    let before = s.curves()[0].nodes();
    let after = solved.curves()[0].nodes();
    for (a, b) in before.iter().zip(after) {
        if a.x < 0.0 {
            assert_eq!(a, b);
        }
    }
    assert!(std::fs::read_to_string(&trace)
        .unwrap()
        .starts_with("iter,energy,grad_norm,step\n"));
}

#[test]
fn curve_file_round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let s = CurveSystem::single(circle(1.0, 64));
    save_system(&s, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(system_to_json(&load_system(&path).unwrap()), text);
}

#[test]
fn bm_compare_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bm.json");
    let (code, _, err) = run(&[
        "bm-compare",
        "--res",
        "16",
        "--iters",
        "50",
        "--out",
        path_str(&out),
    ]);
    assert!(code == 0 || code == 1, "{err}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["cross_inside"].is_number());
}
