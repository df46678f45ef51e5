use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use etmap::classes::{classify, EtClass};
use etmap::group::DEFAULT_CAP;
use etmap::map::FlagMap;
use etmap::parent::{search_epimorphisms, EpimorphismSpec, GroupDesc, SearchOptions, SearchOutcome};
use etmap::realize::{self, GroupFamily, Realization, Verdict};
use etmap::suites::{run_suite, SuiteOptions, SUITES};
use etmap::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "etm", version, about = "Edge-transitive maps from flag permutations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group the closure may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the flag map of an epimorphism spec.
    Build {
        #[arg(long)]
        spec: PathBuf,
        /// Route the built map into this class (the spec must be in its representative class).
        #[arg(long)]
        class: Option<EtClass>,
    },
    /// Print the edge-transitive class of a map, or "none".
    Classify { map: PathBuf },
    /// Vertex, edge and face counts, Euler characteristic and genus.
    Info { map: PathBuf },
    /// Dual, Petrie dual, or join of maps.
    Op {
        #[arg(value_enum)]
        op: MapOp,
        map: PathBuf,
        other: Option<PathBuf>,
    },
    /// Emit a spec from one of the generator families.
    Realize {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        class: Option<EtClass>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        /// Second map of the pair (edmonds-k8).
        #[arg(long)]
        mirror: bool,
        /// Also emit the built map.
        #[arg(long)]
        with_map: bool,
    },
    /// Search for epimorphisms onto a group whose map lies in a class.
    Search {
        #[arg(long)]
        class: EtClass,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        up_to_automorphism: bool,
        #[arg(long)]
        even: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapOp {
    Dual,
    Petrie,
    Join,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sym,
    SymEven,
    Alt,
    AltEven,
    Psl2,
    Psl2Class2,
    NilpotentChiral,
    NilpotentClass5,
    Dihedral,
    EdmondsK8,
    V4Rotary,
}

enum Fail {
    /// Input could not be read or understood.
    Input(String),
    /// Input was fine but a check came out false.
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Parse(_)
            | Error::Json(_)
            | Error::NotAPermutation(_)
            | Error::DegreeMismatch(..)
            | Error::InvalidParameters(_)
            | Error::InvalidMap(_)
            | Error::BadCharacterTable(_) => Fail::Input(e.to_string()),
            _ => Fail::Check(e.to_string()),
        }
    }
}

type Out = Result<(String, bool), Fail>;

fn read_input(path: &PathBuf) -> Result<String, Fail> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Input(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_map(path: &PathBuf) -> Result<FlagMap, Fail> {
    Ok(FlagMap::from_json(&read_input(path)?)?)
}

fn need(v: Option<u32>, name: &str) -> Result<u32, Fail> {
    v.ok_or_else(|| Fail::Input(format!("--{name} is required for this family")))
}

fn need_class(v: Option<EtClass>) -> Result<EtClass, Fail> {
    v.ok_or_else(|| Fail::Input("--class is required for this family".into()))
}

fn own_class(spec: EpimorphismSpec, method: &str) -> Realization {
    Realization::new(spec.class, spec, method)
}

fn realize(cli: &Cli) -> Out {
    let Cmd::Realize { family, class, n, q, p, e, mirror, with_map } = &cli.cmd else { unreachable!() };
    let verdict = |v: Verdict| -> Result<Realization, Fail> {
        match v {
            Verdict::Realizable(r) => Ok(r),
            other => Err(Fail::Check(serde_json::to_string(&other).expect("serialisable"))),
        }
    };
    let r = match family {
        FamilyArg::Sym => verdict(realize::realize_table1(GroupFamily::Sym { n: need(*n, "n")? }, need_class(*class)?)?)?,
        FamilyArg::SymEven => verdict(realize::realize_table3(GroupFamily::Sym { n: need(*n, "n")? }, need_class(*class)?)?)?,
        FamilyArg::Alt => verdict(realize::realize_table1(GroupFamily::Alt { n: need(*n, "n")? }, need_class(*class)?)?)?,
        FamilyArg::AltEven => verdict(realize::realize_table3(GroupFamily::Alt { n: need(*n, "n")? }, need_class(*class)?)?)?,
        FamilyArg::Psl2 => verdict(realize::realize_table1(GroupFamily::Psl2 { q: need(*q, "q")? }, need_class(*class)?)?)?,
        FamilyArg::Psl2Class2 => own_class(realize::psl2_class2_q7()?, "psl2 q=7 class 2"),
        FamilyArg::NilpotentChiral => own_class(realize::nilpotent_chiral(need(*e, "e")?)?, "nilpotent chiral"),
        FamilyArg::NilpotentClass5 => own_class(realize::nilpotent_class5(need(*p, "p")?, need(*e, "e")?), "nilpotent class 5"),
        FamilyArg::Dihedral => own_class(realize::dihedral_spec(need(*n, "n")?)?, "dihedral"),
        FamilyArg::EdmondsK8 => {
            let (a, b) = realize::edmonds_k8()?;
            own_class(if *mirror { b } else { a }, "edmonds k8")
        }
        FamilyArg::V4Rotary => own_class(realize::v4_rotary()?, "v4 rotary"),
    };
    let spec = serde_json::to_value(&r.spec).expect("serialisable");
    let out = if *with_map {
        let m = r.spec.resolve(cli.cap)?.transform(&r.ops)?;
        json!({ "target": r.target.label(), "method": r.method, "spec": spec, "map": serde_json::from_str::<serde_json::Value>(&m.to_json()).expect("valid json") })
    } else {
        spec
    };
    Ok((out.to_string(), true))
}

fn search(cli: &Cli) -> Out {
    let Cmd::Search { class, group, exhaustive, up_to_automorphism, even, limit } = &cli.cmd else { unreachable!() };
    let desc: GroupDesc = serde_json::from_str(&read_input(group)?).map_err(|e| Fail::Input(e.to_string()))?;
    let table = desc.table(cli.cap)?;
    let opts = SearchOptions { exhaustive: *exhaustive, up_to_automorphism: *up_to_automorphism, limit: *limit, even: *even };
    let outcome = search_epimorphisms(*class, &table, &opts)?;
    let (rep, ops) = class.route();
    let checked = match &outcome {
        SearchOutcome::Witnesses { checked, .. } | SearchOutcome::ProvedEmpty { checked } => *checked,
    };
    let base = EpimorphismSpec { class: rep, group: desc.clone(), images: Default::default() };
    let specs: Vec<EpimorphismSpec> = outcome.witnesses().iter().map(|w| base.with_ids(rep, &table, w)).collect();
    let found = !specs.is_empty();
    let out = json!({
        "class": class.label(),
        "representative": rep.label(),
        "ops": ops,
        "group_order": table.order(),
        "checked": checked,
        "witnesses": specs,
    });
    Ok((out.to_string(), found || *exhaustive))
}

fn info_md(m: &FlagMap) -> String {
    let s = m.summary();
    let genus = s.genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into());
    format!(
        "| flags | V | E | F | chi | boundary | genus |\n|---|---|---|---|---|---|---|\n| {} | {} | {} | {} | {} | {} | {} |\n",
        s.flags, s.v, s.e, s.f, s.chi, s.has_boundary, genus
    )
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Build { spec, class } => {
            let spec = EpimorphismSpec::from_json(&read_input(spec)?)?;
            let r = spec.resolve(cli.cap)?;
            let ops = match class {
                None => vec![],
                Some(t) => {
                    let (rep, ops) = t.route();
                    if rep != spec.class {
                        return Err(Fail::Input(format!("class {t} is routed from {rep}, spec is {}", spec.class)));
                    }
                    ops.to_vec()
                }
            };
            Ok((r.transform(&ops)?.to_json(), true))
        }
        Cmd::Classify { map } => {
            let m = read_map(map)?;
            Ok(match classify(&m) {
                Some(c) => (c.label().to_string(), true),
                None => ("none".to_string(), false),
            })
        }
        Cmd::Info { map } => {
            let m = read_map(map)?;
            match cli.format {
                Format::Json => Ok((serde_json::to_string(&m.summary()).expect("serialisable"), true)),
                Format::Md => Ok((info_md(&m), true)),
            }
        }
        Cmd::Op { op, map, other } => {
            let m = read_map(map)?;
            let out = match (op, other) {
                (MapOp::Dual, None) => m.dual(),
                (MapOp::Petrie, None) => m.petrie(),
                (MapOp::Join, Some(o)) => m.join(&read_map(o)?),
                (MapOp::Join, None) => return Err(Fail::Input("join takes two maps".into())),
                (_, Some(_)) => return Err(Fail::Input("dual and petrie take one map".into())),
            };
            Ok((out.to_json(), true))
        }
        Cmd::Realize { .. } => realize(cli),
        Cmd::Search { .. } => search(cli),
        Cmd::Verify { suite } => {
            let report = run_suite(suite, &SuiteOptions { cap: cli.cap })?;
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Md => report.to_markdown(),
            };
            Ok((text, report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("etm: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, ok)) => {
            println!("{}", text.trim_end());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Input(msg)) => {
            eprintln!("etm: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Check(msg)) => {
            eprintln!("etm: {msg}");
            ExitCode::from(1)
        }
    }
}
