//! `univ`: command-line front end.
//!
//! Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for errors
//! and not-applicable checks.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use strict_univalence::fincat::FinCat;
use strict_univalence::groups::aut::{automorphism_tower, eq_bg_matches, inn_out, is_complete};
use strict_univalence::groups::catalog::small_groups;
use strict_univalence::groups::grp::HomCatalog;
use strict_univalence::groups::FinGroup;
use strict_univalence::internal::build_internal_cat;
use strict_univalence::io::{self, envelope};
use strict_univalence::presheaf::{Presheaf, PresheafMap};
use strict_univalence::repro::{reproduce, ReproOptions, ReproReport, TARGETS};
use strict_univalence::segal::{check_complete, check_segal, h_completion, nerve_of_category, nerve_of_internal, TruncSimpObject};
use strict_univalence::univalence::{self, enumerate_univ, Ambient, Method, OmegaOutcome, UnivPoset, UnivalenceVerdict};

#[derive(Parser)]
#[command(name = "univ", version, about = "Univalent morphisms in finite presheaf toposes")]
struct Cli {
    /// Print machine-readable JSON instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group order an automorphism tower may reach.
    #[arg(long, global = true, default_value_t = 5000)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against the laws of its schema.
    Validate { file: PathBuf },
    /// Print a file's contents as tables.
    Show { file: PathBuf },
    #[command(subcommand)]
    Univalence(UnivalenceCmd),
    #[command(subcommand)]
    Segal(SegalCmd),
    #[command(subcommand)]
    Internal(InternalCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    /// Regenerate a reference table or example (`all` for every target).
    Reproduce {
        target: String,
        #[arg(long, default_value_t = 8)]
        catalog_order: usize,
        #[arg(long, default_value_t = univalence::DEFAULT_FAMILY_BOUND)]
        family_bound: usize,
    },
}

#[derive(Subcommand)]
enum UnivalenceCmd {
    /// Decide univalence of a map.
    Check {
        /// A `pshmap/v1` file.
        #[arg(long)]
        morphism: PathBuf,
        /// Largest test presheaf tried by the brute-force refuter.
        #[arg(long, default_value_t = univalence::DEFAULT_FAMILY_BOUND)]
        family_bound: usize,
        /// `brute`, `complete`, `omega` or `all`.
        #[arg(long, default_value = "all")]
        method: Method,
    },
    /// The poset of univalent maps between small objects.
    Enumerate {
        /// `finset`, `gset:<group file or Z/n, S3>`, or `presheaf:<category file>`.
        #[arg(long)]
        ambient: String,
        /// Largest total size of a domain or codomain.
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Args)]
struct SimpInput {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum SegalCmd {
    /// Segal condition at levels 2 and 3.
    Check(SimpInput),
    /// Completeness of a Segal object.
    Complete(SimpInput),
    /// Quotient of a Segal set by isomorphism ladders.
    HQuotient(SimpInput),
    /// Nerve of a category file or of a map file, as `simp/v1`.
    Nerve {
        /// A `fincat/v1` file.
        #[arg(long, conflicts_with = "morphism")]
        category: Option<PathBuf>,
        /// A `pshmap/v1` file; its internal category is used, up to level 3.
        #[arg(long)]
        morphism: Option<PathBuf>,
        /// Top level of a category's nerve.
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum InternalCmd {
    /// The internal category of a map, with its law check.
    Build {
        #[arg(long)]
        morphism: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Center, automorphisms, completeness.
    Analyze { file: PathBuf },
    /// Iterate `G → Aut(G)` until a complete group.
    Tower {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_steps: usize,
    },
    /// Look for a test map with two cartesian squares into a homomorphism.
    Refute {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        catalog_order: usize,
    },
}

/// A command's result: JSON body, human text, exit code.
struct Output {
    json: Value,
    human: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = io::write_json(path, &out.json) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values print"));
            } else {
                print!("{}", out.human);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "schema": "error/v1", "error": format!("{e:#}") }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("UNIVALENCE_THREADS") {
        let n: usize = v.parse().with_context(|| format!("UNIVALENCE_THREADS=`{v}` is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Show { file } => show(file),
        Command::Univalence(UnivalenceCmd::Check { morphism, family_bound, method }) => {
            let p = io::load_map(morphism)?;
            univalence_check(&p, *method, *family_bound)
        }
        Command::Univalence(UnivalenceCmd::Enumerate { ambient, bound }) => {
            let poset = enumerate_univ(&parse_ambient(ambient)?, *bound)?;
            Ok(Output { json: envelope("univposet/v1", &poset), human: poset_text(&poset), code: 0 })
        }
        Command::Segal(cmd) => segal(cmd),
        Command::Internal(InternalCmd::Build { morphism }) => {
            let p = io::load_map(morphism)?;
            let ic = build_internal_cat(&p)?;
            let failures = ic.law_failures()?;
            let raw = io::internal_to_raw(&ic, &p);
            let mut human = String::new();
            for (k, x) in &raw.objects {
                let total: usize = x.elements.values().map(Vec::len).sum();
                writeln!(human, "{k}: {total} elements")?;
            }
            writeln!(human, "laws: {}", if failures.is_empty() { "ok".into() } else { failures.join("; ") })?;
            Ok(Output { json: serde_json::to_value(&raw)?, human, code: u8::from(!failures.is_empty()) })
        }
        Command::Group(cmd) => group(cmd, cli.budget),
        Command::Reproduce { target, catalog_order, family_bound } => {
            let opts = ReproOptions { catalog_order: *catalog_order, family_bound: *family_bound };
            let targets: Vec<&str> = if target == "all" { TARGETS.to_vec() } else { vec![target.as_str()] };
            let reports = targets.iter().map(|t| reproduce(t, &opts)).collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.matched);
            let human = reports.iter().map(report_text).collect::<String>();
            let json = if reports.len() == 1 {
                envelope(io::REPORT_SCHEMA, &reports[0])
            } else {
                json!({ "schema": io::REPORT_SCHEMA, "reports": reports })
            };
            Ok(Output { json, human, code: u8::from(!ok) })
        }
    }
}

fn validate(file: &Path) -> Result<Output> {
    let schema = io::schema_of(file)?.unwrap_or_else(|| "fincat/v1".into());
    let summary = match schema.as_str() {
        "fincat/v1" => {
            let c = io::load_category(file)?;
            format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms())
        }
        "grp/v1" => format!("group of order {}", io::load_group(file)?.order()),
        "psh/v1" => format!("presheaf with sizes {:?}", io::load_presheaf(file)?.sizes()),
        "pshmap/v1" => {
            let m = io::load_map(file)?;
            format!("natural map {:?} → {:?}", m.source.sizes(), m.target.sizes())
        }
        "simp/v1" => format!("simplicial object with level sizes {:?}", io::load_simp(file)?.sizes()),
        "grphom/v1" => {
            let h = io::load_group_hom(file)?;
            format!("homomorphism of order {} → {}", h.source.order(), h.target.order())
        }
        other => bail!("unknown schema `{other}`"),
    };
    Ok(Output {
        json: json!({ "schema": "validation/v1", "kind": schema, "valid": true, "summary": summary }),
        human: format!("valid {schema}: {summary}\n"),
        code: 0,
    })
}

fn show(file: &Path) -> Result<Output> {
    let schema = io::schema_of(file)?.unwrap_or_else(|| "fincat/v1".into());
    let (json, human) = match schema.as_str() {
        "fincat/v1" => {
            let c = io::load_category(file)?;
            (serde_json::to_value(c.to_raw())?, category_text(&c))
        }
        "grp/v1" => {
            let g = io::load_group(file)?;
            (serde_json::to_value(g.to_raw())?, group_text(&g))
        }
        "psh/v1" => {
            let x = io::load_presheaf(file)?;
            (serde_json::to_value(io::presheaf_to_raw(&x, Some(io::base_ref(x.base()))))?, presheaf_text(&x))
        }
        "pshmap/v1" => {
            let m = io::load_map(file)?;
            (serde_json::to_value(io::map_to_raw(&m))?, map_text(&m))
        }
        "simp/v1" => {
            let w = io::load_simp(file)?;
            (serde_json::to_value(io::simp_to_raw(&w))?, format!("level sizes {:?}\n", w.sizes()))
        }
        other => bail!("cannot show schema `{other}`"),
    };
    Ok(Output { json, human, code: 0 })
}

fn univalence_check(p: &PresheafMap, method: Method, family_bound: usize) -> Result<Output> {
    let v = univalence::check(p, method, family_bound)?;
    let code = match (v.univalent(), &v.bruteforce, &v.omega) {
        (Some(true), ..) => 0,
        (Some(false), ..) => 1,
        (None, Some(b), _) => u8::from(!b.pass),
        (None, None, Some(o)) => match o.verdict() {
            Some(true) => 0,
            Some(false) => 1,
            None => 2,
        },
        _ => 2,
    };
    Ok(Output { json: envelope(io::UVERDICT_SCHEMA, &v), human: verdict_text(&v), code })
}

fn parse_ambient(spec: &str) -> Result<Ambient> {
    if spec == "finset" {
        return Ok(Ambient::FinSet);
    }
    if let Some(rest) = spec.strip_prefix("gset:") {
        let path = Path::new(rest);
        let (name, group) = if path.exists() {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (stem, io::load_group(path)?)
        } else {
            builtin_group(rest).ok_or_else(|| anyhow!("`{rest}` is neither a group file nor a known group"))?
        };
        return Ok(Ambient::Gset { name, group });
    }
    if let Some(rest) = spec.strip_prefix("presheaf:") {
        return Ok(Ambient::Presheaf(io::load_category(Path::new(rest))?));
    }
    bail!("ambient must be `finset`, `gset:<group>` or `presheaf:<category file>`")
}

fn builtin_group(name: &str) -> Option<(String, FinGroup)> {
    if let Some(n) = name.strip_prefix("Z/").and_then(|n| n.parse::<usize>().ok()) {
        return (n >= 1).then(|| (name.to_string(), FinGroup::cyclic(n)));
    }
    if let Some(n) = name.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()) {
        return (1..=5).contains(&n).then(|| (name.to_string(), FinGroup::symmetric(n)));
    }
    small_groups(8).ok()?.into_iter().find(|g| g.name == name).map(|g| (g.name, g.group))
}

fn segal(cmd: &SegalCmd) -> Result<Output> {
    match cmd {
        SegalCmd::Check(SimpInput { input }) => {
            let w = io::load_simp(input)?;
            let v = check_segal(&w)?;
            let mut human = format!("Segal: {}\nsizes: {:?}\n", pass_word(v.pass), v.sizes);
            if let Some(wit) = &v.witness {
                writeln!(
                    human,
                    "witness at level {}: spine {} at {} has {} preimages {:?}",
                    wit.level,
                    wit.spine,
                    wit.stage,
                    wit.preimages.len(),
                    wit.preimages
                )?;
            }
            Ok(Output { json: envelope(io::VERDICT_SCHEMA, &v), human, code: u8::from(!v.pass) })
        }
        SegalCmd::Complete(SimpInput { input }) => {
            let w = io::load_simp(input)?;
            let v = check_complete(&w)?;
            let mut human = format!(
                "complete: {}\npullback has {} elements, level 0 has {}\n",
                pass_word(v.pass),
                v.pullback_size,
                v.level0_size
            );
            if let Some(wit) = &v.witness {
                writeln!(human, "witness: {} at {}", wit.element, wit.stage)?;
            }
            Ok(Output { json: envelope(io::VERDICT_SCHEMA, &v), human, code: u8::from(!v.pass) })
        }
        SegalCmd::HQuotient(SimpInput { input }) => {
            let w = io::load_simp(input)?;
            let h = h_completion(&w)?;
            let v = check_segal(&h.quotient)?;
            let body = json!({
                "pass": v.pass,
                "witness": v.witness,
                "sizes": h.quotient.sizes(),
                "quotient": io::simp_to_raw(&h.quotient),
            });
            let human = format!(
                "quotient sizes {:?}\nquotient Segal: {}\n",
                h.quotient.sizes(),
                pass_word(v.pass)
            );
            Ok(Output { json: envelope(io::VERDICT_SCHEMA, &body), human, code: u8::from(!v.pass) })
        }
        SegalCmd::Nerve { category, morphism, dim } => {
            let w: TruncSimpObject = match (category, morphism) {
                (Some(c), None) => nerve_of_category(&*io::load_category(c)?, *dim)?,
                (None, Some(m)) => nerve_of_internal(&build_internal_cat(&io::load_map(m)?)?)?,
                _ => bail!("give exactly one of --category and --morphism"),
            };
            let human = format!("level sizes {:?}\n", w.sizes());
            Ok(Output { json: serde_json::to_value(io::simp_to_raw(&w))?, human, code: 0 })
        }
    }
}

#[derive(Serialize)]
struct GroupAnalysis {
    order: usize,
    abelian: bool,
    center_order: usize,
    aut_order: usize,
    inn_order: usize,
    out_order: usize,
    theta_injective: bool,
    theta_surjective: bool,
    complete: bool,
    pi0_is_out: bool,
    pi1_is_center: bool,
}

fn group(cmd: &GroupCmd, budget: usize) -> Result<Output> {
    match cmd {
        GroupCmd::Analyze { file } => {
            let g = io::load_group(file)?;
            let io_ = inn_out(&g);
            let c = is_complete(&g);
            let (pi0, pi1) = eq_bg_matches(&g);
            let a = GroupAnalysis {
                order: g.order(),
                abelian: g.is_abelian(),
                center_order: c.center_order,
                aut_order: io_.aut.group.order(),
                inn_order: io_.inn.len(),
                out_order: io_.out.order(),
                theta_injective: c.theta_injective,
                theta_surjective: c.theta_surjective,
                complete: c.complete,
                pi0_is_out: pi0,
                pi1_is_center: pi1,
            };
            let human = format!(
                "order {}  |Z| {}  |Aut| {}  |Inn| {}  |Out| {}\ncomplete: {}\n",
                a.order, a.center_order, a.aut_order, a.inn_order, a.out_order, a.complete
            );
            let code = u8::from(!a.complete);
            Ok(Output { json: envelope("group/v1", &a), human, code })
        }
        GroupCmd::Tower { file, max_steps } => {
            let g = io::load_group(file)?;
            let (stages, stable) = automorphism_tower(&g, *max_steps, budget)?;
            let orders: Vec<usize> = stages.iter().map(|s| s.order).collect();
            let human = format!(
                "orders {}\n{}\n",
                orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" → "),
                if stable { "reached a complete group" } else { "no complete group within the step limit" }
            );
            let json = json!({ "schema": "tower/v1", "orders": orders, "complete": stages.iter().map(|s| s.complete).collect::<Vec<_>>(), "stabilized": stable });
            Ok(Output { json, human, code: u8::from(!stable) })
        }
        GroupCmd::Refute { file, catalog_order } => {
            let h = io::load_group_hom(file)?;
            let catalog = small_groups(*catalog_order)?;
            let v = HomCatalog::new(catalog, *catalog_order).refute(&h);
            let mut human = format!(
                "{} after {} test maps (catalog order ≤ {})\n",
                if v.pass { "no refutation" } else { "refuted" },
                v.maps_tested,
                v.catalog_order
            );
            if let Some(w) = &v.witness {
                writeln!(human, "witness q: {} → {} {:?}", w.q_source, w.q_target, w.q_map)?;
                for (u, vv) in &w.squares {
                    writeln!(human, "  square u={u:?} v={vv:?}")?;
                }
            }
            Ok(Output { json: envelope(io::VERDICT_SCHEMA, &v), human, code: u8::from(!v.pass) })
        }
    }
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn category_text(c: &FinCat) -> String {
    let mut s = format!("objects: {}\n", (0..c.num_objects()).map(|o| c.object_name(o)).collect::<Vec<_>>().join(", "));
    for f in 0..c.num_morphisms() {
        let _ = writeln!(s, "  {}: {} → {}", c.morphism_name(f), c.object_name(c.src(f)), c.object_name(c.tgt(f)));
    }
    s
}

fn group_text(g: &FinGroup) -> String {
    let mut s = format!("order {}\n", g.order());
    for a in 0..g.order() {
        let row: Vec<&str> = (0..g.order()).map(|b| g.name(g.mul(a, b))).collect();
        let _ = writeln!(s, "  {:>6} | {}", g.name(a), row.join(" "));
    }
    s
}

fn presheaf_text(x: &Presheaf) -> String {
    let c = x.base();
    let mut s = String::new();
    for o in 0..c.num_objects() {
        let _ = writeln!(s, "{}: {{{}}}", c.object_name(o), x.labels(o).join(", "));
    }
    for f in (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)) {
        let (src, tgt) = (c.src(f), c.tgt(f));
        let pairs: Vec<String> =
            (0..x.size(tgt)).map(|y| format!("{}↦{}", x.label(tgt, y), x.label(src, x.restrict(f, y)))).collect();
        let _ = writeln!(s, "  {}: {}", c.morphism_name(f), pairs.join(", "));
    }
    s
}

fn map_text(m: &PresheafMap) -> String {
    format!(
        "{}\n{}",
        univalence::map_name(m),
        univalence::map_labels(m).iter().map(|l| format!("  {l}\n")).collect::<String>()
    )
}

fn verdict_text(v: &UnivalenceVerdict) -> String {
    let mut s = format!("{}\n", v.morphism);
    if let Some(c) = &v.completeness {
        let _ = writeln!(
            s,
            "  completeness  {}  (pullback {} vs B {}; iso object {})",
            pass_word(c.pass),
            c.pullback_size,
            c.level0_size,
            c.iso_object_size
        );
    }
    if let Some(b) = &v.bruteforce {
        let what = if b.pass { "no witness" } else { "refuted" };
        let _ = writeln!(s, "  brute force   {what}  ({} test maps, family bound {})", b.maps_tested, b.family_bound);
        if let Some(w) = &b.witness {
            let _ = writeln!(s, "    test object {}; q = {}", w.test_object, w.q);
            for sq in &w.squares {
                let _ = writeln!(s, "    square u: {}  v: {}", sq.u.join(", "), sq.v.join(", "));
            }
        }
    }
    if let Some(o) = &v.omega {
        let text = match o {
            OmegaOutcome::Pass => "pass".to_string(),
            OmegaOutcome::Fail { witness } => format!("fail ({witness})"),
            OmegaOutcome::NotApplicable { reason } => format!("not applicable ({reason})"),
        };
        let _ = writeln!(s, "  classifier    {text}");
    }
    if let Some(f) = &v.fiber_criterion {
        let _ = writeln!(s, "  fibers        {}", pass_word(f.pass));
    }
    for c in &v.conflicts {
        let _ = writeln!(s, "  CONFLICT: {c}");
    }
    for g in &v.refuter_gaps {
        let _ = writeln!(s, "  gap: {g}");
    }
    s
}

fn poset_text(p: &UnivPoset) -> String {
    let mut s = format!(
        "{} univalent maps among {} candidates ({}, bound {})\n",
        p.elements.len(),
        p.candidates,
        p.ambient,
        p.bound
    );
    for (i, e) in p.elements.iter().enumerate() {
        let above: Vec<&str> =
            p.hasse.iter().filter(|&&(a, _)| a == i).map(|&(_, b)| p.elements[b].name.as_str()).collect();
        let _ = writeln!(s, "  {:<16} < {}", e.name, if above.is_empty() { "-".into() } else { above.join(", ") });
    }
    for v in &p.violations {
        let _ = writeln!(s, "  violation: {v}");
    }
    s
}

fn report_text(r: &ReproReport) -> String {
    eprintln!("{}: {} ms", r.target, r.runtime_ms);
    let mut s = format!("{}: {}\n", r.target, if r.matched { "match" } else { "MISMATCH" });
    if !r.matched {
        let _ = writeln!(s, "  expected: {}", r.expected);
        let _ = writeln!(s, "  computed: {}", r.computed);
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}
