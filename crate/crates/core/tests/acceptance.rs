//! Acceptance criteria, one test each. Every test prints a single
//! `ACCEPTANCE <id> PASS|FAIL` line before asserting.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use axmul::catalog::{Catalog, EntryClass};
use axmul::compressor::{build_compressor, SHAPES};
use axmul::cost::{pdp, reduction, Metric};
use axmul::imaging::{blend, blend_reference, snr, GrayImage};
use axmul::metrics::{Evaluator, Strategy};
use axmul::mult8::{array8_designs, tree8_designs, ARRAY8_LSB_FA};
use axmul::pareto::{dominates, pareto_indices, Objective, ParetoPoint};
use axmul::sweep::{run_sweep, SweepSpec};
use axmul::{build16, build_design, fa_error_rows, DesignSet, ErrorReport, FaKind, Multiplier, NetMultiplier};

fn verdict(id: u32, pass: bool, detail: &str) {
    // Written past the test harness capture so PASS lines show up too.
    let line = format!("ACCEPTANCE {id:>2} {}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert!(pass, "criterion {id} failed: {detail}");
}

fn catalog() -> &'static Catalog {
    Catalog::embedded()
}

#[test]
fn c01_fa_error_rows() {
    let start = Instant::now();
    let expected = [0, 2, 2, 3, 3, 4, 4, 4, 2, 2, 2, 2];
    let got: Vec<usize> = FaKind::ALL.iter().map(|&k| fa_error_rows(k)).collect();
    let elapsed = start.elapsed();
    let pass = got == expected && elapsed < Duration::from_secs(1);
    verdict(1, pass, &format!("error rows {got:?} in {elapsed:?}"));
}

#[test]
fn c02_pdp_recomputation() {
    let printed = [
        186.25, 119.34, 205.36, 200.92, 115.07, 61.82, 781.0, 300.59, 582.0, 303.4, 295.44, 753.5,
    ];
    let mut off = Vec::new();
    for (kind, want) in FaKind::ALL.iter().zip(printed) {
        let got: f64 = pdp(catalog().lookup(kind.short_name()).unwrap()).unwrap();
        let rel = (got - want).abs() / want;
        if rel > 0.005 {
            off.push(format!(
                "{kind}: {got:.2} vs printed {want} ({:+.1}%)",
                100.0 * (got - want) / want
            ));
        }
    }
    let detail = if off.is_empty() {
        "12/12 within 0.5%".to_string()
    } else {
        format!("{}/12 within 0.5%; off: {}", 12 - off.len(), off.join("; "))
    };
    verdict(2, off.is_empty(), &detail);
}

#[test]
fn c03_compressor_areas() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for kind in FaKind::ALL {
        for (n, _) in SHAPES {
            let c = build_compressor(n, kind).unwrap();
            let want = catalog().lookup(&c.name()).unwrap().size;
            if c.area() != want {
                bad.push(format!("{}: {} vs {want}", c.name(), c.area()));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(1);
    verdict(3, pass, &format!("{}/72 exact in {elapsed:?} {bad:?}", 72 - bad.len()));
}

#[test]
fn c04_mult8_sizes() {
    let mut bad = Vec::new();
    let mut census_ok = true;
    for cfg in array8_designs() {
        let m = NetMultiplier::new(cfg);
        let census = m.census();
        census_ok &= census.fa_total() == 48 && census.ha == 8 && m.net().fa_below(8) == ARRAY8_LSB_FA;
        let want = catalog().lookup(m.name()).unwrap().size;
        if m.area() != want {
            bad.push(format!("{}: {} vs {want}", m.name(), m.area()));
        }
    }
    for cfg in tree8_designs() {
        let m = NetMultiplier::new(cfg);
        let want = catalog().lookup(m.name()).unwrap().size;
        if m.area() != want {
            bad.push(format!("{}: {} vs {want}", m.name(), m.area()));
        }
    }
    let pass = bad.is_empty() && census_ok;
    verdict(
        4,
        pass,
        &format!(
            "{}/32 sizes exact, array census 48FA+8HA/21 LSB: {census_ok} {bad:?}",
            32 - bad.len()
        ),
    );
}

#[test]
fn c05_exactness() {
    let start = Instant::now();
    let mut mismatches = 0u64;
    for name in ["EE", "CEE"] {
        let m = NetMultiplier::from_name(name).unwrap();
        for a in 0..256u64 {
            for b in 0..256u64 {
                mismatches += (m.mul(a, b) != a * b) as u64;
            }
        }
    }
    let edges = [0u64, 1, 2, 254, 255, 256, 257, 32767, 32768, 65279, 65534, 65535];
    for name in ["16EE", "16CEE"] {
        let m = build16(name).unwrap();
        for &a in &edges {
            for &b in &edges {
                mismatches += (m.mul(a, b) != a * b) as u64;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1_000_000 {
            let (a, b) = (rng.gen_range(0..65536u64), rng.gen_range(0..65536u64));
            mismatches += (m.mul(a, b) != a * b) as u64;
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed < Duration::from_secs(5);
    verdict(5, pass, &format!("{mismatches} mismatches in {elapsed:?}"));
}

#[test]
fn c06_nmed_consistency() {
    let mut worst = 0.0f64;
    let mut count = 0;
    for cfg in array8_designs().into_iter().chain(tree8_designs()) {
        let r: ErrorReport = Evaluator::new().exhaustive(&NetMultiplier::new(cfg)).unwrap();
        if r.med > 0.0 {
            worst = worst.max((r.nmed - r.med / 65025.0).abs() / (r.med / 65025.0));
        }
        count += 1;
    }
    verdict(
        6,
        worst <= 1e-12,
        &format!("{count} configs, worst relative deviation {worst:.2e}"),
    );
}

#[test]
fn c07_array8_error_metrics() {
    // (name, MED, ER) as tabulated.
    let reference = [
        ("EM1", 255.0, 0.970),
        ("EM2", 229.0, 0.990),
        ("EM4", 111.0, 0.970),
        ("EM5", 101.0, 0.930),
        ("EIn2", 180.0, 0.584),
    ];
    let start = Instant::now();
    let reports: Vec<(String, ErrorReport)> = array8_designs()
        .into_iter()
        .skip(1)
        .map(|cfg| {
            let m = NetMultiplier::new(cfg);
            (m.name().to_string(), Evaluator::new().exhaustive(&m).unwrap())
        })
        .collect();
    let elapsed = start.elapsed();

    let mut deviations = Vec::new();
    for (name, med, er) in reference {
        let r = &reports.iter().find(|(n, _)| n == name).unwrap().1;
        let med_ok = (r.med / med - 1.0).abs() <= 0.25;
        let er_ok = (r.er - er).abs() <= 0.05;
        println!(
            "  {name:5} MED {:8.2} vs {med:6.1} ({:+5.1}%) ER {:.3} vs {er:.3}  {}",
            r.med,
            100.0 * (r.med / med - 1.0),
            r.er,
            if med_ok && er_ok { "ok" } else { "OUT OF TOLERANCE" }
        );
        if !(med_ok && er_ok) {
            deviations.push(serde_json::json!({
                "design": name,
                "med": r.med, "med_reference": med,
                "er": r.er, "er_reference": er,
            }));
        }
    }
    let manifest = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("array8_deviations.json");
    std::fs::write(&manifest, serde_json::to_vec_pretty(&deviations).unwrap()).unwrap();

    let within = 5 - deviations.len();
    let pass = deviations.is_empty() && elapsed < Duration::from_secs(30);
    verdict(
        7,
        pass,
        &format!(
            "{within}/5 within tolerance, {} configs in {elapsed:?}; deviations manifest {}",
            reports.len(),
            manifest.display()
        ),
    );
}

#[test]
fn c08_m5m5_headline() {
    let (ee, m5) = (catalog().lookup("EE").unwrap(), catalog().lookup("M5M5").unwrap());
    let area: f64 = reduction(ee, m5, Metric::Area).unwrap();
    let pdp_red: f64 = reduction(ee, m5, Metric::Pdp).unwrap();
    let pass = (area - 65.9).abs() < 0.05 && (pdp_red - 83.9).abs() < 0.05;
    verdict(
        8,
        pass,
        &format!("area reduction {area:.2}%, PDP reduction {pdp_red:.2}%"),
    );
}

#[test]
fn c09_mult16_area_additivity() {
    let mut bad = Vec::new();
    let names: Vec<String> = DesignSet::Array16
        .names()
        .into_iter()
        .chain(DesignSet::Tree16.names())
        .collect();
    for name in &names {
        let area = build16(name).unwrap().area();
        let want = catalog().lookup(name).unwrap().size;
        if area != want {
            bad.push(format!("{name}: additive {area} vs tabulated {want}"));
        }
    }
    let detail = format!(
        "{}/{} sizes exact {}",
        names.len() - bad.len(),
        names.len(),
        bad.join("; ")
    );
    verdict(9, bad.is_empty(), &detail);
}

fn random_points(rng: &mut ChaCha8Rng) -> Vec<ParetoPoint<f64>> {
    let objectives = vec![Objective::max("a"), Objective::min("b"), Objective::max("c")];
    let n = rng.gen_range(1..=50);
    (0..n)
        .map(|i| {
            // Coarse grid so ties are common.
            let values = (0..3).map(|_| rng.gen_range(0..8) as f64).collect();
            ParetoPoint::new(format!("p{i}"), objectives.clone(), values).unwrap()
        })
        .collect()
}

#[test]
fn c10_pareto() {
    let rows = run_sweep(&SweepSpec::new(DesignSet::Array8), catalog()).unwrap();
    let objectives = vec![Objective::max("area_red_pct"), Objective::max("pdp_red_pct")];
    let points: Vec<ParetoPoint<f64>> = rows
        .iter()
        .map(|r| ParetoPoint::new(&r.name, objectives.clone(), vec![r.area_red_pct, r.pdp_red_pct]).unwrap())
        .collect();
    let front: Vec<&str> = pareto_indices(&points)
        .unwrap()
        .iter()
        .map(|&i| points[i].name.as_str())
        .collect();
    let m5_on = front.contains(&"M5M5");
    let x3_dominated = !front.contains(&"X3X3");

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut oracle_ok = 0;
    for _ in 0..100 {
        let pts = random_points(&mut rng);
        let oracle: Vec<usize> = (0..pts.len())
            .filter(|&i| !pts.iter().any(|q| dominates(q, &pts[i]).unwrap()))
            .collect();
        oracle_ok += (pareto_indices(&pts).unwrap() == oracle) as usize;
    }
    let pass = m5_on && x3_dominated && oracle_ok == 100;
    verdict(
        10,
        pass,
        &format!(
            "front {front:?}; M5M5 on front {m5_on}, X3X3 dominated {x3_dominated}, oracle agreement {oracle_ok}/100"
        ),
    );
}

#[test]
fn c11_sampling_soundness() {
    let m = NetMultiplier::from_name("EM1").unwrap();
    let exhaustive: ErrorReport = Evaluator::new().exhaustive(&m).unwrap();
    let s1: ErrorReport = Evaluator::new().sampled(&m, 1_000_000, 11, Strategy::Uniform).unwrap();
    let s2: ErrorReport = Evaluator::new().sampled(&m, 1_000_000, 11, Strategy::Uniform).unwrap();
    let se = s1.med_std_error();
    let z = (s1.med - exhaustive.med).abs() / se;
    let pass = z <= 3.0 && s1 == s2;
    verdict(
        11,
        pass,
        &format!(
            "sampled MED {:.3} vs exhaustive {:.3} ({z:.2} SE); repeat identical {}",
            s1.med,
            exhaustive.med,
            s1 == s2
        ),
    );
}

#[test]
fn c12_partition_invariance() {
    let runs: Vec<(ErrorReport, ErrorReport)> = [1, 2, 8]
        .iter()
        .map(|&w| {
            let e = Evaluator::new().workers(w);
            let exhaustive = e.exhaustive(&NetMultiplier::from_name("EM1").unwrap()).unwrap();
            let sampled = e
                .sampled(&build_design("16EM1").unwrap(), 1_000_000, 12, Strategy::Uniform)
                .unwrap();
            (exhaustive, sampled)
        })
        .collect();
    let key = |r: &ErrorReport| (r.erroneous, r.ed_sum, r.max_ed);
    let mut pass = true;
    let mut worst = 0.0f64;
    for (e, s) in &runs[1..] {
        for (a, b) in [(e, &runs[0].0), (s, &runs[0].1)] {
            pass &= key(a) == key(b);
            worst = worst.max((a.mred - b.mred).abs() / b.mred.abs().max(f64::MIN_POSITIVE));
        }
    }
    pass &= worst <= 1e-9;
    verdict(
        12,
        pass,
        &format!("ER/MED/max_ed identical across 1, 2, 8 workers: {pass}; worst MRED deviation {worst:.1e}"),
    );
}

fn test_pair() -> (GrayImage, GrayImage) {
    let a = GrayImage::from_fn(256, 256, |x, y| ((x + y) / 2) as u8);
    let b = GrayImage::from_fn(256, 256, |x, y| {
        let ring = ((x as i64 - 128).pow(2) + (y as i64 - 128).pow(2)) as f64;
        (127.5 + 127.5 * (ring.sqrt() / 12.0).cos()) as u8
    });
    (a, b)
}

#[test]
fn c13_imaging() {
    let (a, b) = test_pair();
    let reference = blend_reference(&a, &b).unwrap();
    let mut problems = Vec::new();
    for exact in ["EE", "CEE", "16EE", "16CEE"] {
        let out = blend(&a, &b, &build_design(exact).unwrap()).unwrap();
        let s: f64 = snr(&reference, &out).unwrap();
        if out != reference || s != f64::INFINITY {
            problems.push(format!("{exact}: not pixel-exact"));
        }
    }
    let mut approx = 0;
    for set in DesignSet::ALL.into_iter().skip(1) {
        for name in set.names().into_iter().skip(1) {
            let m = build_design(&name).unwrap();
            // Exhaustive over the pixel range bounds every blended pixel.
            let r: ErrorReport = Evaluator::new().exhaustive_below(&m, 8).unwrap();
            let bound = r.max_ed / 255 + 1;
            let out = blend(&a, &b, &m).unwrap();
            let s: f64 = snr(&reference, &out).unwrap();
            let worst = out
                .data()
                .iter()
                .zip(reference.data())
                .map(|(&p, &q)| (p as u64).abs_diff(q as u64))
                .max()
                .unwrap();
            if !s.is_finite() {
                problems.push(format!("{name}: SNR {s}"));
            }
            if worst > bound {
                problems.push(format!("{name}: pixel error {worst} > bound {bound}"));
            }
            approx += 1;
        }
    }
    let pass = problems.is_empty();
    verdict(
        13,
        pass,
        &format!("4 exact designs pixel-exact, {approx} approximate configs checked {problems:?}"),
    );
}

#[test]
fn catalog_completeness() {
    let counts: Vec<usize> = EntryClass::ALL.iter().map(|&c| catalog().of_class(c).count()).collect();
    assert_eq!(counts, [12, 72, 23, 9, 23, 9]);
    for set in DesignSet::ALL {
        for name in set.names() {
            assert!(catalog().get(&name).is_some(), "{name} missing");
        }
    }
}
