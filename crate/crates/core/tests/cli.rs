use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kravchuk_fourier::pipeline::io::{load_image, parse_pgm};
use kravchuk_fourier::{FourierGroupElement, ScreenShape};

fn kfourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kfourier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn glyph_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/glyph_f.pgm")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn six_sixth_turns_match_one_half_turn() {
    let dir = tempfile::tempdir().unwrap();
    let mut current = glyph_path();
    for k in 0..6 {
        let next = dir.path().join(format!("step{k}.fk"));
        let out = kfourier(&[
            "rotate",
            "--theta",
            "0.5235987755982988",
            "-i",
            s(&current),
            "-o",
            s(&next),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        current = next;
    }
    let once = dir.path().join("once.fk");
    assert!(
        kfourier(&["rotate", "--theta", "pi", "-i", s(&glyph_path()), "-o", s(&once)])
            .status
            .success()
    );
    let a = load_image(&current, None).unwrap();
    let b = load_image(&once, None).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-8, "{}", a.max_abs_diff(&b));
}

#[test]
fn verify_passes_on_default_shapes() {
    let out = kfourier(&["verify", "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_with_zero_tolerance_reports_failure() {
    let out = kfourier(&[
        "verify",
        "--quiet",
        "--tolerance",
        "0",
        "--shapes",
        "1,1",
        "--samples",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn modes_writes_77_files_and_sheets() {
    let dir = tempfile::tempdir().unwrap();
    let out = kfourier(&["modes", "--shape", "5,3", "--out", s(dir.path())]);
    assert!(out.status.success());
    for (sub, sheet) in [
        ("cartesian", "cartesian_modes.pgm"),
        ("laguerre_kravchuk", "laguerre_kravchuk_modes.pgm"),
    ] {
        let files: Vec<_> = std::fs::read_dir(dir.path().join(sub))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        assert_eq!(files.len(), 78);
        let sheet = dir.path().join(sub).join(sheet);
        assert!(files.contains(&sheet));
        for f in &files {
            let g = parse_pgm(&std::fs::read(f).unwrap()).unwrap();
            if *f != sheet {
                assert_eq!((g.width(), g.height()), (11, 7));
            }
        }
    }
}

#[test]
fn half_integer_and_doubled_shapes_agree() {
    let dir = tempfile::tempdir().unwrap();
    for (tag, shape) in [("a", "2.5,1.5"), ("b", "2j:5,3")] {
        let out = kfourier(&[
            "modes",
            "--shape",
            shape,
            "--out",
            s(&dir.path().join(tag)),
            "--zoom",
            "1",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir.path().join("a/cartesian/cartesian_modes.pgm")).unwrap();
    let b = std::fs::read(dir.path().join("b/cartesian/cartesian_modes.pgm")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn compose_and_invert_round_trip_through_json() {
    let a = r#"{"chi":1.0,"psi":0.5,"theta":0.3,"phi":2.0}"#;
    let b = r#"{"chi":0.2,"psi":1.0,"theta":2.0,"phi":0.1}"#;
    let ab: FourierGroupElement = serde_json::from_slice(&kfourier(&["compose", a, b]).stdout).unwrap();
    let inv_a: FourierGroupElement = serde_json::from_slice(&kfourier(&["invert", a]).stdout).unwrap();
    let ab_json = serde_json::to_string(&ab).unwrap();
    let inv_json = serde_json::to_string(&inv_a).unwrap();
    // a⁻¹ ∘ (a ∘ b) = b
    let back: FourierGroupElement =
        serde_json::from_slice(&kfourier(&["compose", &inv_json, &ab_json]).stdout).unwrap();
    let want: FourierGroupElement = serde_json::from_str(b).unwrap();
    assert!(back.to_matrix().max_abs_diff(&want.to_matrix()) < 1e-12);
}

#[test]
fn element_from_file_applies_like_gyration() {
    let dir = tempfile::tempdir().unwrap();
    // G(θ/2) with χ = ψ = φ = 0 is the gyration; pair it with the gyrate command
    let el = dir.path().join("el.json");
    std::fs::write(&el, r#"{"chi":0,"psi":0,"theta":0.8,"phi":0}"#).unwrap();
    let (x, y) = (dir.path().join("x.fk"), dir.path().join("y.fk"));
    let at = format!("@{}", s(&el));
    assert!(
        kfourier(&["apply", "--element", &at, "-i", s(&glyph_path()), "-o", s(&x)])
            .status
            .success()
    );
    assert!(
        kfourier(&["gyrate", "--gamma", "0.4", "-i", s(&glyph_path()), "-o", s(&y)])
            .status
            .success()
    );
    let (x, y) = (load_image(&x, None).unwrap(), load_image(&y, None).unwrap());
    assert!(x.max_abs_diff(&y) < 1e-10, "{}", x.max_abs_diff(&y));
}

#[test]
fn glyph_loads_as_20_by_12() {
    let img = load_image(&glyph_path(), None).unwrap();
    assert_eq!(img.shape(), ScreenShape::from_twice(40, 24));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.fk");
    let ok = kfourier(&[
        "rotate",
        "--theta",
        "0",
        "--shape",
        "20,12",
        "-i",
        s(&glyph_path()),
        "-o",
        s(&out),
    ]);
    assert!(ok.status.success());
    // θ = 0 is the identity up to rounding in analysis and synthesis
    assert!(load_image(&out, None).unwrap().max_abs_diff(&img) < 1e-12);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.fk");
    let g = glyph_path();
    assert_eq!(kfourier(&["rotate", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        kfourier(&["rotate", "--theta", "pi", "--shape", "5,3", "-i", s(&g), "-o", s(&o)])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        kfourier(&["rotate", "--theta", "pi", "-i", "/no/such/file", "-o", s(&o)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kfourier(&["invert", "{\"chi\":1"]).status.code(), Some(1));
    let junk = dir.path().join("junk.pgm");
    std::fs::write(&junk, b"P2\n3 x\n255\n").unwrap();
    assert_eq!(
        kfourier(&["rotate", "--theta", "1", "-i", s(&junk), "-o", s(&o)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn pgm_output_renders_the_requested_channel() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.pgm");
    let r = kfourier(&[
        "fourier",
        "--chi",
        "pi/2",
        "--beta",
        "0",
        "-i",
        s(&glyph_path()),
        "-o",
        s(&out),
        "--channel",
        "abs",
        "--sixteen-bit",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let g = parse_pgm(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!((g.width(), g.height(), g.maxval), (41, 25, 65535));
    assert_eq!(*g.gray.iter().max().unwrap(), 65535);
}
