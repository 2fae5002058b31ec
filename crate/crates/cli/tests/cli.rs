use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn axmul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axmul"))
        .args(args)
        .env_remove("AXMUL_CATALOG")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = axmul(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn ok_text(args: &[&str]) -> String {
    let out = axmul(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_pgm(path: &Path, w: usize, h: usize, f: impl Fn(usize, usize) -> u8) {
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for y in 0..h {
        for x in 0..w {
            bytes.push(f(x, y));
        }
    }
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn eval_exact_is_error_free() {
    let v = ok_json(&["eval", "--design", "EE"]);
    assert_eq!(v["er"], 0.0);
    assert_eq!(v["max_ed"], 0);
    assert_eq!(v["mode"]["kind"], "exhaustive");
    for key in ["name", "mode", "er", "med", "nmed", "mred", "max_ed", "mred_skipped"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn eval_sampled_echoes_seed_and_is_deterministic() {
    let args = ["eval", "--design", "16EM1", "--samples", "20000", "--seed", "9"];
    let a = ok_json(&args);
    assert_eq!(a, ok_json(&args));
    assert_eq!(a["mode"]["n"], 20000);
    assert_eq!(a["mode"]["seed"], 9);
    let threaded = ok_json(&[
        "--threads",
        "3",
        "eval",
        "--design",
        "16EM1",
        "--samples",
        "20000",
        "--seed",
        "9",
    ]);
    assert_eq!(a, threaded);
}

#[test]
fn eval_mred_conventions() {
    let skip = ok_json(&["eval", "--design", "M3M3"]);
    let zero = ok_json(&["eval", "--design", "M3M3", "--mred-zero"]);
    assert_eq!(skip["mred_skipped"], 511);
    assert_eq!(zero["mred_skipped"], 0);
    assert!(zero["mred"].as_f64().unwrap() < skip["mred"].as_f64().unwrap());
}

#[test]
fn eval_unknown_design_fails() {
    let out = axmul(&["eval", "--design", "QZ9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("QZ9"));
}

#[test]
fn eval_dump_net_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    let csv = dir.path().join("row.csv");
    ok_json(&[
        "eval",
        "--design",
        "CEM5",
        "--dump-net",
        net.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let listing: Value = serde_json::from_slice(&std::fs::read(&net).unwrap()).unwrap();
    assert_eq!(listing["design"], "CEM5");
    assert!(!listing["net"]["cells"].as_array().unwrap().is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("name,mred,med,er,nmed"));
    assert!(text.lines().nth(1).unwrap().starts_with("CEM5,"));

    ok_json(&[
        "eval",
        "--design",
        "16EM5",
        "--samples",
        "1000",
        "--dump-net",
        net.to_str().unwrap(),
    ]);
    let listing: Value = serde_json::from_slice(&std::fs::read(&net).unwrap()).unwrap();
    assert_eq!(listing["blocks"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_row_counts_and_pareto() {
    let dir = tempfile::tempdir().unwrap();
    for (set, rows) in [("array8", 23), ("tree8", 9), ("cells", 12)] {
        let out = dir.path().join(format!("{set}.csv"));
        let v = ok_json(&["sweep", "--set", set, "--out", out.to_str().unwrap()]);
        assert_eq!(v["rows"], rows);
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), rows + 1);
        assert!(text.contains("name,mred,med,er,nmed,delay_ps,power_uw,size,pdp_fj,area_red_pct,pdp_red_pct"));
    }
    let array = dir.path().join("array8.csv");
    let v = ok_json(&[
        "pareto",
        "--in",
        array.to_str().unwrap(),
        "--max",
        "area_red_pct,pdp_red_pct",
    ]);
    let front: Vec<&str> = v["front"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert!(front.contains(&"M5M5"));
    assert!(!front.contains(&"X3X3"));

    let v = ok_json(&[
        "pareto",
        "--in",
        array.to_str().unwrap(),
        "--max",
        "area_red_pct",
        "--min",
        "nmed",
    ]);
    assert!(!v["front"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_sampled_sixteen() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t16.csv");
    let v = ok_json(&[
        "sweep",
        "--set",
        "tree16",
        "--samples",
        "5000",
        "--seed",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["rows"], 9);
    assert_eq!(v["mode"]["seed"], 4);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# set=tree16 mode=sampled n=5000 seed=4"));
}

#[test]
fn pareto_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "name,size\nA,big\n").unwrap();
    assert!(!axmul(&["pareto", "--in", bad.to_str().unwrap(), "--max", "size"])
        .status
        .success());
    assert!(!axmul(&["pareto", "--in", bad.to_str().unwrap(), "--max", "area"])
        .status
        .success());
    assert!(!axmul(&["pareto", "--in", "/nonexistent.csv", "--max", "size"])
        .status
        .success());
}

#[test]
fn blend_exact_and_approximate() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pgm"), dir.path().join("b.pgm"));
    write_pgm(&a, 32, 32, |x, y| (x * 8) as u8 ^ (y * 3) as u8);
    write_pgm(&b, 32, 32, |x, y| (255 - x * y / 4) as u8);
    let (out, reference) = (dir.path().join("o.pgm"), dir.path().join("r.pgm"));
    let args = |design: &'static str| {
        vec![
            "blend".to_string(),
            "--a".into(),
            a.to_str().unwrap().into(),
            "--b".into(),
            b.to_str().unwrap().into(),
            "--design".into(),
            design.into(),
            "--out".into(),
            out.to_str().unwrap().into(),
            "--ref-out".into(),
            reference.to_str().unwrap().into(),
        ]
    };
    let run = |design| {
        let owned = args(design);
        ok_json(&owned.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let v = run("EE");
    assert_eq!(v["snr_db"], "inf");
    assert_eq!(v["pdp_red_pct"], 0.0);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&reference).unwrap());

    let v = run("M5M5");
    assert!(v["snr_db"].as_f64().unwrap().is_finite());
    assert!((v["pdp_red_pct"].as_f64().unwrap() - 83.85).abs() < 0.01);

    let v = run("16CEM5");
    assert_eq!(v["design"], "16CEM5");
}

#[test]
fn blend_rejects_bad_images() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, deep) = (
        dir.path().join("a.pgm"),
        dir.path().join("b.pgm"),
        dir.path().join("d.pgm"),
    );
    write_pgm(&a, 2, 2, |_, _| 1);
    write_pgm(&b, 3, 2, |_, _| 1);
    std::fs::write(&deep, b"P5\n1 1\n65535\n\x00\x00").unwrap();
    let out = dir.path().join("o.pgm");
    let blend = |x: &Path, y: &Path| {
        axmul(&[
            "blend",
            "--a",
            x.to_str().unwrap(),
            "--b",
            y.to_str().unwrap(),
            "--design",
            "EE",
            "--out",
            out.to_str().unwrap(),
        ])
    };
    assert!(!blend(&a, &b).status.success());
    assert!(!blend(&a, &deep).status.success());
}

#[test]
fn cells_commands() {
    let list = ok_text(&["cells", "list"]);
    let mut lines = list.lines();
    assert_eq!(lines.next().unwrap(), "kind,size,power_nw,delay_ps,pdp_fj,error_rows");
    assert_eq!(lines.count(), 12);
    assert!(list.contains("M5,8,412.1,150,61.82,4"));

    let truth = ok_text(&["cells", "truth", "AMA5"]);
    assert_eq!(truth.lines().count(), 9);
    assert!(truth.contains("1,1,0,1,1"));
    assert!(!axmul(&["cells", "truth", "nope"]).status.success());
}

#[test]
fn catalog_dump_and_override() {
    let dump = ok_text(&["catalog", "dump"]);
    assert!(dump.contains("8-4/M5,compressor,,1.791,uW,74,compressors"));
    assert_eq!(dump.lines().filter(|l| !l.starts_with('#')).count(), 149);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat.csv");
    std::fs::write(
        &path,
        "# version: test\nname,class,delay_ps,power,power_unit,size,source_table\nEE,array8,500,20,uW,1456,custom\nM5M5,array8,100,10,uW,496,custom\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_axmul"))
        .args(["catalog", "dump"])
        .env("AXMUL_CATALOG", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# version: test"));
    assert!(text.contains("M5M5,array8,100.0,10.0,uW,496,custom"));

    let out = Command::new(env!("CARGO_BIN_EXE_axmul"))
        .args(["catalog", "dump"])
        .env("AXMUL_CATALOG", dir.path().join("missing.csv"))
        .output()
        .unwrap();
    assert!(!out.status.success());
}
