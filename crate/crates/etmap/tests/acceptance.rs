mod common;

use std::time::{Duration, Instant};

use etmap::classes::EtClass;
use etmap::suites::{run_suite, Status, SuiteOptions, SuiteReport};
use rand::rngs::StdRng;
use rand::SeedableRng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(names: &[&str]) -> (Vec<SuiteReport>, Outcome) {
    let opts = SuiteOptions::default();
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    for name in names {
        match run_suite(name, &opts) {
            Ok(r) => {
                let failed: Vec<&str> = r.cases.iter().filter(|c| c.status != Status::Pass).map(|c| c.id.as_str()).collect();
                notes.push(format!("{name} {}/{}", r.count(Status::Pass), r.cases.len()));
                if !failed.is_empty() {
                    notes.push(format!("not passing: {}", failed.join(", ")));
                }
                reports.push(r);
            }
            Err(e) => notes.push(format!("{name}: {e}")),
        }
    }
    let ok = reports.len() == names.len() && reports.iter().all(|r| r.cases.iter().all(|c| c.status == Status::Pass));
    (reports, Outcome { ok, detail: notes.join("; ") })
}

fn has(reports: &[SuiteReport], id: &str, expected: &str) -> bool {
    reports.iter().flat_map(|r| &r.cases).any(|c| c.id == id && c.expected == expected && c.status == Status::Pass)
}

fn basic_maps() -> Outcome {
    let (r, mut o) = suites(&["basic-maps"]);
    let pinned = has(&r, "regular count", "11") && EtClass::ALL.len() == 14;
    o.ok &= pinned;
    o
}

fn sym_rows() -> Outcome {
    let (r, mut o) = suites(&["table1-sym", "small-sn"]);
    let cells = r[0].cases.iter().filter(|c| c.id.contains('/')).count();
    o.ok &= cells == 7 * 14;
    o
}

fn alt_rows() -> Outcome {
    let (r, mut o) = suites(&["table1-alt", "a7-2ex"]);
    let pos = ["A5/1", "A9/1", "A10/1", "A8/2Pex", "A7/5"].iter().all(|id| has(&r, id, "realizable"));
    let neg = ["A6/1", "A7/1", "A8/1", "A7/2ex"].iter().all(|id| has(&r, id, "unrealizable"));
    o.ok &= pos && neg && has(&r, "A7/2ex exhaustive", "unrealizable");
    o
}

fn psl2_rows() -> Outcome {
    let (r, mut o) = suites(&["table1-psl2", "singerman"]);
    let pos = ["L2(8)/1", "L2(11)/1", "L2(13)/1", "L2(7)/2"].iter().all(|id| has(&r, id, "realizable"));
    let neg = ["L2(7)/1", "L2(9)/1"].iter().all(|id| has(&r, id, "unrealizable"));
    let survey = [5, 7, 11].iter().all(|q| has(&r, &format!("L2({q}) inversion survey"), "all pairs inverted"));
    let n46 = has(&r, "N46.3 type", "(5, 6)") && has(&r, "N46.3 flags", "660") && has(&r, "N46.3 chi", "-44");
    o.ok &= pos && neg && survey && n46;
    o
}

fn even_grid() -> Outcome {
    let (r, mut o) = suites(&["table3"]);
    let neg = ["S6/1", "S5/2", "S6/2", "S5/2s", "S6/2s"].iter().all(|id| has(&r, id, "unrealizable"));
    o.ok &= neg;
    o
}

fn nilpotent() -> Outcome {
    suites(&["nilpotent"]).1
}

fn solvable() -> Outcome {
    suites(&["solvable"]).1
}

fn frobenius() -> Outcome {
    suites(&["frobenius"]).1
}

fn properties() -> Outcome {
    let (_, mut o) = suites(&["rewrite-soundness", "priminv"]);
    let bad = common::classify_matches_expected(2024, 240);
    let mut rng = StdRng::seed_from_u64(7);
    let mut omega_bad = 0;
    for _ in 0..200 {
        if let Ok(s) = common::sample(&mut rng) {
            omega_bad += !common::omega_failures(&s.map).is_empty() as usize;
        } else {
            omega_bad += 1;
        }
    }
    let mut jordan = (0, 0);
    let mut rng = StdRng::seed_from_u64(11);
    for d in 5..=8 {
        for _ in 0..50 {
            match common::jordan_holds(&common::random_generators(&mut rng, d, 2)) {
                Some(true) => jordan.0 += 1,
                Some(false) => jordan.1 += 1,
                None => {}
            }
        }
    }
    o.detail.push_str(&format!(
        "; random specs {}/240; omega {}/200; jordan applied {} failed {}",
        240 - bad.len(),
        200 - omega_bad,
        jordan.0 + jordan.1,
        jordan.1
    ));
    o.ok &= bad.is_empty() && omega_bad == 0 && jordan.1 == 0 && jordan.0 > 0;
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 9] = [
        ("basic-map catalog", basic_maps, Some(1)),
        ("S_n rows, n = 2..8", sym_rows, Some(600)),
        ("A_n rows", alt_rows, Some(1800)),
        ("L2(q) rows", psl2_rows, Some(1200)),
        ("even realisation, n <= 8", even_grid, Some(1800)),
        ("nilpotent", nilpotent, Some(120)),
        ("solvable", solvable, Some(60)),
        ("frobenius", frobenius, Some(60)),
        ("properties", properties, None),
    ];
    let mut all = true;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|s| took <= Duration::from_secs(s));
        let ok = o.ok && in_time;
        all &= ok;
        let budget = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        println!(
            "criterion {}: {} {name}: {:.2} s{budget}; {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
