//! Named verification suites. Each case compares an expected value from
//! the realisation tables (or an independent brute-force count) with what
//! the library computes.

use std::fmt::{self, Display, Write as _};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{classify, EtClass, EtClass::*};
use crate::error::{Error, Result};
use crate::field::{prime_power, priminv_check};
use crate::group::{
    conjugacy_classes, count_triples_brute, derived_length, extend_by_alpha, frobenius_count, nilpotence_class,
    nilpotent_gpef, simultaneous_inversion_survey, CharacterTable, GroupTable,
};
use crate::map::{FlagMap, Genus};
use crate::parent::{rewrite_relations_hold, rewrite_soundness, REPRESENTATIVES};
use crate::perm::{Perm, PermGroupSpec};
use crate::realize::{self, GroupFamily, Verdict};

pub const SUITES: [&str; 13] = [
    "basic-maps",
    "table1-sym",
    "table1-alt",
    "table1-psl2",
    "table3",
    "small-sn",
    "a7-2ex",
    "singerman",
    "nilpotent",
    "solvable",
    "frobenius",
    "priminv",
    "rewrite-soundness",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedCap,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedCap => "skipped-cap",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

impl Case {
    fn new(id: impl Into<String>, expected: impl Display, observed: impl Display) -> Case {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let status = if expected == observed { Status::Pass } else { Status::Fail };
        Case { id: id.into(), expected, observed, status }
    }

    fn from_result(id: impl Into<String>, expected: impl Display, observed: Result<String>) -> Case {
        Case::new(id, expected, observed.unwrap_or_else(|e| format!("error: {e}")))
    }

    fn skipped(id: impl Into<String>, expected: impl Display) -> Case {
        Case { id: id.into(), expected: expected.to_string(), observed: "beyond cap".into(), status: Status::SkippedCap }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
    /// Wall time; left out of the JSON so reports are byte-stable.
    #[serde(skip)]
    pub runtime: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {}\n\n", self.suite);
        if let Some(grid) = self.grid() {
            out.push_str(&grid);
            out.push('\n');
        }
        out.push_str("| case | expected | observed | status |\n|---|---|---|---|\n");
        for c in &self.cases {
            let _ = writeln!(out, "| {} | {} | {} | {} |", c.id, c.expected, c.observed, c.status);
        }
        let _ = writeln!(
            out,
            "\n{} pass, {} fail, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedCap)
        );
        out
    }

    /// Group-by-class grid for the table suites: `+` realised, `.` not, `!` mismatch.
    fn grid(&self) -> Option<String> {
        let cells: Vec<(&str, &str, &Case)> = self
            .cases
            .iter()
            .filter_map(|c| {
                let (g, t) = c.id.split_once('/')?;
                t.parse::<EtClass>().ok().map(|_| (g, t, c))
            })
            .collect();
        if cells.len() < EtClass::ALL.len() {
            return None;
        }
        let mut rows: Vec<&str> = Vec::new();
        for (g, _, _) in &cells {
            if !rows.contains(g) {
                rows.push(g);
            }
        }
        let mut out = String::from("| group |");
        for t in EtClass::ALL {
            let _ = write!(out, " {t} |");
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(EtClass::ALL.len()));
        out.push('\n');
        for g in rows {
            let _ = write!(out, "| {g} |");
            for t in EtClass::ALL {
                let mark = match cells.iter().find(|(h, u, _)| *h == g && *u == t.label()) {
                    None => " ",
                    Some((_, _, c)) if c.status == Status::Fail => "!",
                    Some((_, _, c)) if c.expected.starts_with("realizable") => "+",
                    Some(_) => ".",
                };
                let _ = write!(out, " {mark} |");
            }
            out.push('\n');
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Largest group enumerated; bigger cells are reported as skipped.
    pub cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { cap: crate::group::DEFAULT_CAP }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match name {
        "basic-maps" => basic_maps(),
        "table1-sym" => table1((2..=8).map(|n| GroupFamily::Sym { n }).collect(), opts),
        "table1-alt" => table1((4..=10).map(|n| GroupFamily::Alt { n }).collect(), opts),
        "table1-psl2" => {
            let mut v = table1([5, 7, 8, 9, 11, 13].map(|q| GroupFamily::Psl2 { q }).to_vec(), opts);
            v.extend(n46_3());
            v
        }
        "table3" => table3(opts),
        "small-sn" => small_sn(),
        "a7-2ex" => a7_2ex(opts),
        "singerman" => singerman(),
        "nilpotent" => nilpotent(),
        "solvable" => solvable(),
        "frobenius" => frobenius(),
        "priminv" => priminv(),
        "rewrite-soundness" => rewrite(),
        _ => return Err(Error::InvalidParameters(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { suite: name.to_string(), cases, runtime: start.elapsed() })
}

fn family_label(f: GroupFamily) -> String {
    match f {
        GroupFamily::Sym { n } => format!("S{n}"),
        GroupFamily::Alt { n } => format!("A{n}"),
        GroupFamily::Psl2 { q } => format!("L2({q})"),
    }
}

fn basic_maps() -> Vec<Case> {
    const FLAGS: [usize; 14] = [1, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 4];
    let maps: Vec<FlagMap> = EtClass::ALL.iter().map(|t| t.basic_map()).collect();
    let mut cases = Vec::new();
    for ((t, m), flags) in EtClass::ALL.iter().zip(&maps).zip(FLAGS) {
        cases.push(Case::new(format!("flags {t}"), flags, m.flags()));
        let four = matches!(t, C4 | C4S | C4P);
        cases.push(Case::new(format!("regular {t}"), !four, m.is_regular()));
        if four {
            cases.push(Case::new(format!("aut {t}"), 2, m.aut_order()));
            let mono = m.monodromy().order(64).map(|o| o.to_string());
            cases.push(Case::from_result(format!("monodromy {t}"), 8, mono));
        }
        let d = classify(&m.dual()).map(|c| c.label()).unwrap_or("none");
        let want = classify(m).map(|c| c.dual().label()).unwrap_or("none");
        cases.push(Case::new(format!("dual-equivariant {t}"), want, d));
    }
    cases.push(Case::new("regular count", 11, maps.iter().filter(|m| m.is_regular()).count()));
    cases
}

/// Builds the realisation and checks its class (and orientability when `even`).
fn positive_cell(f: GroupFamily, t: EtClass, even: bool) -> Result<String> {
    let v = if even { realize::realize_table3(f, t)? } else { realize::realize_table1(f, t)? };
    let Verdict::Realizable(r) = v else {
        return Ok("unrealizable".into());
    };
    let res = r.resolve()?;
    res.check_ok()?;
    if res.table.order() as u64 != f.order() {
        return Ok(format!("wrong group order {}", res.table.order()));
    }
    let m = res.transform(&r.ops)?;
    let got = classify(&m);
    if got != Some(t) {
        return Ok(format!("built map in class {}", got.map(|c| c.label()).unwrap_or("none")));
    }
    if even && !m.summary().orientable_no_boundary {
        return Ok("not orientable without boundary".into());
    }
    Ok("realizable".into())
}

fn negative_cell(f: GroupFamily, t: EtClass, even: bool, cap: usize) -> Result<String> {
    Ok(match realize::confirm_unrealizable(f, t, even, cap)? {
        Verdict::Unrealizable { provenance: realize::Provenance::Exhausted, .. } => "unrealizable".into(),
        Verdict::Unrealizable { .. } => "not exhausted".into(),
        Verdict::Realizable(_) => "witness found".into(),
    })
}

fn grid_cases(cells: Vec<(GroupFamily, EtClass)>, even: bool, opts: &SuiteOptions) -> Vec<Case> {
    cells
        .into_par_iter()
        .map(|(f, t)| {
            let id = format!("{}/{t}", family_label(f));
            let member = if even { realize::table3_member(f, t) } else { realize::table1_member(f, t) };
            let expected = if member { "realizable" } else { "unrealizable" };
            if f.order() > opts.cap as u64 {
                return Case::skipped(id, expected);
            }
            let observed = if member { positive_cell(f, t, even) } else { negative_cell(f, t, even, opts.cap) };
            Case::from_result(id, expected, observed)
        })
        .collect()
}

fn table1(fams: Vec<GroupFamily>, opts: &SuiteOptions) -> Vec<Case> {
    let cells = fams.iter().flat_map(|&f| EtClass::ALL.map(|t| (f, t))).collect();
    let mut cases = grid_cases(cells, false, opts);
    // 2ex and 5-family negatives for the linear groups also follow from the inversion survey
    for &f in &fams {
        if let GroupFamily::Psl2 { q } = f {
            if !realize::table1_member(f, C2PEx) {
                let v = realize::confirm_by_inversion_survey(f, opts.cap).map(|v| match v {
                    Verdict::Unrealizable { .. } => "all pairs inverted".to_string(),
                    Verdict::Realizable(_) => "pair not inverted".to_string(),
                });
                cases.push(Case::from_result(format!("L2({q}) inversion survey"), "all pairs inverted", v));
            }
        }
    }
    cases
}

fn n46_3() -> Vec<Case> {
    let run = || -> Result<Vec<(String, String, String)>> {
        let spec = realize::psl2_class1(11)?;
        let m = spec.resolve(crate::group::DEFAULT_CAP)?.build_map()?;
        let s = m.summary();
        Ok(vec![
            ("N46.3 type".into(), "(5, 6)".into(), format!("{:?}", m.map_type())),
            ("N46.3 flags".into(), "660".into(), s.flags.to_string()),
            ("N46.3 V,E,F".into(), "55,165,66".into(), format!("{},{},{}", s.v, s.e, s.f)),
            ("N46.3 chi".into(), "-44".into(), s.chi.to_string()),
            ("N46.3 genus".into(), Genus::NonOrientable(46).to_string(), s.genus.map(|g| g.to_string()).unwrap_or_default()),
            ("N46.3 class".into(), "1".into(), classify(&m).map(|c| c.label()).unwrap_or("none").into()),
        ])
    };
    match run() {
        Ok(v) => v.into_iter().map(|(i, e, o)| Case::new(i, e, o)).collect(),
        Err(e) => vec![Case::new("N46.3", "built", format!("error: {e}"))],
    }
}

fn table3(opts: &SuiteOptions) -> Vec<Case> {
    let cells = (2..=8u32)
        .flat_map(|n| [GroupFamily::Sym { n }, GroupFamily::Alt { n }])
        .flat_map(|f| EtClass::ALL.map(|t| (f, t)))
        .filter(|&(f, _)| !matches!(f, GroupFamily::Alt { n } if n < 4))
        .collect();
    grid_cases(cells, true, opts)
}

fn sym(n: usize) -> Result<GroupTable> {
    GroupTable::from_permutations(&GroupFamily::Sym { n: n as u32 }.generators()?, crate::group::DEFAULT_CAP)
}

fn small_sn() -> Vec<Case> {
    let mut cases: Vec<Case> = (2..=6usize)
        .map(|n| {
            let got = sym(n).and_then(|g| simultaneous_inversion_survey(&g, None)).map(|s| s.all_inverted().to_string());
            Case::from_result(format!("S{n} every generating pair inverted"), n <= 5, got)
        })
        .collect();
    let chiral = realize::sym_chiral(5).is_err();
    cases.push(Case::new("sym_chiral(5) refused", true, chiral));
    cases
}

fn a7_2ex(opts: &SuiteOptions) -> Vec<Case> {
    let mut cases = vec![Case::from_result(
        "A7/2ex exhaustive",
        "unrealizable",
        negative_cell(GroupFamily::Alt { n: 7 }, C2Ex, false, opts.cap),
    )];
    // x = (1,...,7), y = (1,2)(j,k): inverted in S_7, or generating L_3(2)
    let x = Perm::parse("(1,2,3,4,5,6,7)", Some(7)).unwrap();
    let s7: Vec<Perm> = match PermGroupSpec::parse(7, &["(1,2,3,4,5,6,7)", "(1,2)"]).and_then(|g| g.elements(10_000)) {
        Ok(v) => v,
        Err(e) => return vec![Case::new("S7", "enumerated", format!("error: {e}"))],
    };
    let xi = x.inverse();
    for j in 3..=7u32 {
        for k in j + 1..=7 {
            let y = Perm::parse(&format!("(1,2)({j},{k})"), Some(7)).unwrap();
            let inverted = s7.iter().any(|s| x.conjugate(s) == xi && y.conjugate(s) == y);
            let expected = if matches!((j, k), (3, 5) | (3, 6) | (4, 7) | (5, 7)) { "L3(2)" } else { "inverted" };
            let observed = if inverted {
                "inverted".to_string()
            } else {
                match PermGroupSpec::new(vec![x.clone(), y]).and_then(|g| g.order(10_000)) {
                    Ok(168) => "L3(2)".to_string(),
                    Ok(o) => format!("order {o}"),
                    Err(e) => format!("error: {e}"),
                }
            };
            cases.push(Case::new(format!("y=(1,2)({j},{k})"), expected, observed));
        }
    }
    cases
}

fn singerman() -> Vec<Case> {
    [4u32, 5, 7, 8, 9, 11, 13]
        .par_iter()
        .map(|&q| {
            let got = GroupFamily::Psl2 { q }
                .table(crate::group::DEFAULT_CAP)
                .and_then(|g| simultaneous_inversion_survey(&g, None))
                .map(|s| s.all_inverted().to_string());
            Case::from_result(format!("L2({q}) every generating pair inverted"), true, got)
        })
        .collect()
}

/// `sum_{i < 2^(e-2)} 5^i mod 2^e`, compared with `-2^(e-2)`.
pub fn five_power_sum(e: u32) -> (u64, u64) {
    let m = 1u64 << e;
    let (mut sum, mut p) = (0u64, 1u64);
    for _ in 0..1u64 << (e - 2) {
        sum = (sum + p) % m;
        p = p * 5 % m;
    }
    (sum, m - (1 << (e - 2)))
}

fn nilpotent() -> Vec<Case> {
    let mut cases = Vec::new();
    for (p, e) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
        let got = nilpotent_gpef(p, e, 1).map(|g| format!("{:?}", nilpotence_class(&g)));
        cases.push(Case::from_result(format!("class G({p},{e},1)"), format!("{:?}", Some(e as usize)), got));
    }
    for e in 3..=5u32 {
        let got = extend_by_alpha(e).map(|(g, _)| format!("{} {:?}", g.order(), nilpotence_class(&g)));
        cases.push(Case::from_result(
            format!("alpha extension e={e}"),
            format!("{} {:?}", 1u64 << (2 * e + 1), Some(e as usize + 1)),
            got,
        ));
    }
    let chiral = || -> Result<String> {
        let r = realize::nilpotent_chiral(4)?.resolve(crate::group::DEFAULT_CAP)?;
        let m = r.build_map()?;
        let s = m.summary();
        let (a, b) = m.map_type();
        let ty = (a.max(b), a.min(b));
        Ok(format!(
            "{} {:?} {} {}",
            classify(&m).map(|c| c.label()).unwrap_or("none"),
            ty,
            s.genus.map(|g| g.to_string()).unwrap_or_default(),
            r.table.order()
        ))
    };
    cases.push(Case::from_result("chiral e=4: class, type, genus, |A|", "2Pex (32, 16) orientable 105 512", chiral()));
    let dihedral = || -> Result<String> {
        let r = realize::dihedral_spec(8)?.resolve(crate::group::DEFAULT_CAP)?;
        let m = r.build_map()?;
        Ok(format!(
            "{} {:?} {}",
            classify(&m).map(|c| c.label()).unwrap_or("none"),
            nilpotence_class(&r.table),
            r.table.order()
        ))
    };
    cases.push(Case::from_result("dihedral m=8: class, nilpotence, order", "1 Some(3) 32", dihedral()));
    for e in 3..=16 {
        let (got, want) = five_power_sum(e);
        cases.push(Case::new(format!("five-power sum e={e}"), want, got));
    }
    cases
}

fn solvable() -> Vec<Case> {
    let run = || -> Result<Vec<Case>> {
        let (a, b) = realize::edmonds_k8()?;
        let (ra, rb) = (a.resolve(crate::group::DEFAULT_CAP)?, b.resolve(crate::group::DEFAULT_CAP)?);
        let (ma, mb) = (ra.build_map()?, rb.build_map()?);
        let label = |m: &FlagMap| classify(m).map(|c| c.label()).unwrap_or("none");
        let s = ma.summary();
        let mut cases = vec![
            Case::new("K8 classes", "2Pex 2Pex", format!("{} {}", label(&ma), label(&mb))),
            Case::new("K8 |Aut|", "56 56", format!("{} {}", ma.aut_order(), mb.aut_order())),
            Case::new("K8 V,E", "8,28", format!("{},{}", s.v, s.e)),
            Case::new("K8 derived length", "Some(2)", format!("{:?}", derived_length(&ra.table))),
            Case::new("K8 mirror pair isomorphic", true, ma.is_isomorphic(&mb)),
            Case::new("K8 mirror pair orientably isomorphic", false, ma.is_orientably_isomorphic(&mb)),
            Case::new("K8 self orientably isomorphic", true, ma.is_orientably_isomorphic(&ma)),
        ];
        let v4 = realize::v4_rotary()?.resolve(crate::group::DEFAULT_CAP)?.build_map()?;
        let j = ma.join(&v4);
        let aut = GroupTable::from_permutations(&PermGroupSpec::new(j.aut_generators())?, crate::group::DEFAULT_CAP)?;
        cases.push(Case::new("join |Aut|", 56 * 4, j.aut_order()));
        cases.push(Case::new("join derived length", "Some(2)", format!("{:?}", derived_length(&aut))));
        cases.push(Case::new("join class", "2Pex", label(&j)));
        Ok(cases)
    };
    run().unwrap_or_else(|e| vec![Case::new("solvable", "built", format!("error: {e}"))])
}

pub const FIXTURES: [(&str, &str); 3] = [
    ("S4", include_str!("../fixtures/s4_chars.json")),
    ("D4", include_str!("../fixtures/d4_chars.json")),
    ("A5", include_str!("../fixtures/a5_chars.json")),
];

/// Conjugacy classes of the fixture group, in the fixture's class order.
pub fn fixture_group(ct: &CharacterTable) -> Result<(GroupTable, Vec<Vec<u32>>)> {
    let degree = ct.degree.ok_or_else(|| Error::BadCharacterTable("fixture lacks a degree".into()))?;
    let gens: Vec<&str> = ct.generators.iter().map(|s| s.as_str()).collect();
    let g = GroupTable::from_permutations(&PermGroupSpec::parse(degree, &gens)?, crate::group::DEFAULT_CAP)?;
    let classes = conjugacy_classes(&g);
    let mut out = Vec::new();
    for c in &ct.classes {
        let rep = c.rep.as_deref().ok_or_else(|| Error::BadCharacterTable(format!("class {} lacks a rep", c.label)))?;
        let x = g.find_perm(&Perm::parse(rep, Some(degree))?).ok_or_else(|| Error::BadCharacterTable(format!("{rep} not in group")))?;
        let cls = classes.iter().find(|k| k.contains(&x)).unwrap().clone();
        if cls.len() as u64 != c.size {
            return Err(Error::BadCharacterTable(format!("class {} has size {}, not {}", c.label, cls.len(), c.size)));
        }
        out.push(cls);
    }
    Ok((g, out))
}

fn frobenius() -> Vec<Case> {
    let mut cases = Vec::new();
    for (name, src) in FIXTURES {
        let run = || -> Result<Vec<Case>> {
            let ct = CharacterTable::from_json(src)?;
            let (g, cls) = fixture_group(&ct)?;
            let k = cls.len();
            let mut v = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        let brute = count_triples_brute(&g, &cls[a], &cls[b], &cls[c]);
                        let formula = frobenius_count(&ct, a, b, c).map(|x| x.to_string());
                        let l = |i: usize| &ct.classes[i].label;
                        v.push(Case::from_result(format!("{name} {} {} {}", l(a), l(b), l(c)), brute, formula));
                    }
                }
            }
            let mut bad = ct.clone();
            bad.chars[1][1][0] += 0.5;
            let detected = (0..k).any(|a| (0..k).any(|b| (0..k).any(|c| frobenius_count(&bad, a, b, c).is_err())));
            v.push(Case::new(format!("{name} corrupted table detected"), true, detected));
            Ok(v)
        };
        cases.extend(run().unwrap_or_else(|e| vec![Case::new(name, "loaded", format!("error: {e}"))]));
    }
    cases
}

fn priminv() -> Vec<Case> {
    (2..=128u32)
        .filter_map(|q| prime_power(q).map(|pe| (q, pe)))
        .map(|(q, (p, e))| Case::from_result(format!("q={q}"), q <= 4, priminv_check(p, e).map(|b| b.to_string())))
        .collect()
}

fn rewrite() -> Vec<Case> {
    REPRESENTATIVES
        .iter()
        .flat_map(|&t| {
            [
                Case::new(format!("{t} rewrite table"), "sound", {
                    let bad = rewrite_soundness(t);
                    if bad.is_empty() { "sound".to_string() } else { bad.join("; ") }
                }),
                Case::new(format!("{t} relations"), true, rewrite_relations_hold(t)),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_power_sum_small() {
        // e = 3: 1 + 5 = 6 = -2 mod 8
        assert_eq!(five_power_sum(3), (6, 6));
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &SuiteOptions::default()).is_err());
    }
}
