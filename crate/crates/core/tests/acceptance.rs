//! Acceptance harness: one PASS/FAIL line per criterion, with the time
//! limit each criterion must meet.
//!
//! A FAIL is reported, not raised: the process exits 0 so the rest of the
//! test suite still runs. Set `ACCEPTANCE_STRICT=1` to exit 1 on any FAIL.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use strict_univalence::corpus::{finset_maps, finset_objects, s3_corpus, z2_corpus};
use strict_univalence::fincat::{preorder_to_poset, Preorder};
use strict_univalence::groups::aut::eq_bg_matches;
use strict_univalence::groups::{inn_out, is_complete, small_groups, FinGroup};
use strict_univalence::internal::{build_internal_cat, iso_object, iso_object_alt, iso_over_bb, vergura_object};
use strict_univalence::presheaf::limits::pullback;
use strict_univalence::presheaf::{Presheaf, PresheafMap, SubobjectClassifier};
use strict_univalence::repro::{reproduce, ReproOptions};
use strict_univalence::segal::{check_complete, hackney_witness, nerve_of_category};
use strict_univalence::univalence::{check, check_completeness, enumerate_univ, stability_suite, Ambient, Method, DEFAULT_FAMILY_BOUND};

struct Outcome {
    pass: bool,
    detail: String,
}

/// Disagreements, inconclusive refutations and the verdict for one map.
type Agreement = Result<(Vec<String>, usize, Option<bool>), String>;

type Criterion<'a> = (usize, &'static str, Option<u64>, Box<dyn Fn() -> Outcome + 'a>);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus() -> Vec<PresheafMap> {
    let mut maps = finset_maps(3, 3);
    maps.extend(z2_corpus().maps(4));
    maps.extend(s3_corpus().maps(4));
    maps
}

fn univ_set_table() -> Outcome {
    let poset = match enumerate_univ(&Ambient::FinSet, 3) {
        Ok(p) => p,
        Err(e) => return outcome(false, e.to_string()),
    };
    // each univalent map of finite sets as the subset of {0,1} it stands for
    let subsets: [(&str, &[usize]); 4] = [("∅→∅", &[]), ("∅→1", &[0]), ("1→1", &[1]), ("1→{0,1}", &[0, 1])];
    let names: BTreeSet<&str> = poset.elements.iter().map(|e| e.name.as_str()).collect();
    let want: BTreeSet<&str> = subsets.iter().map(|s| s.0).collect();
    if names != want {
        return outcome(false, format!("elements {names:?}"));
    }
    for (a, sa) in &subsets {
        for (b, sb) in &subsets {
            let (i, j) = (poset.index_of(a).unwrap(), poset.index_of(b).unwrap());
            if poset.le(i, j) != sa.iter().all(|x| sb.contains(x)) {
                return outcome(false, format!("order differs at {a} ≤ {b}"));
            }
        }
    }
    outcome(true, format!("{} candidates, 4 univalent, order = subsets of {{0,1}}", poset.candidates))
}

fn grp_table() -> Outcome {
    let r = match reproduce("grp-table", &ReproOptions { catalog_order: 8, family_bound: DEFAULT_FAMILY_BOUND }) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let refuted = r.computed["refuted"].as_array().cloned().unwrap_or_default();
    let all_witnessed = refuted.iter().all(|x| !x["witness"].is_null());
    let survivors = &r.computed["survivors"];
    let mut detail = format!(
        "{} candidates, survivors {survivors}, {} refuted{}",
        r.computed["candidates"],
        refuted.len(),
        if all_witnessed { " each with a witness" } else { ", some without a witness" }
    );
    for name in ["Z/2→1", "0: Z/2→Z/2"] {
        if let Some(w) = refuted.iter().find(|x| x["map"] == name) {
            let w = &w["witness"];
            detail.push_str(&format!("; {name} refuted by q: {}→{} with two squares", w["q_source"], w["q_target"]));
        }
    }
    outcome(r.matched && all_witnessed, detail)
}

fn hackney() -> Outcome {
    match hackney_witness() {
        Ok(r) => {
            let pass = r.class_alpha == "1+2=3"
                && r.class_alpha_prime == "1+2=3"
                && r.class_alpha_beta == "2+2=4"
                && r.class_alpha_prime_beta == "1+3=4"
                && r.same_level1_class
                && r.distinct_composites
                && !r.segal.level2;
            outcome(
                pass,
                format!(
                    "α, α′ ∈ {} / {}; composites {} ≠ {}; level-2 Segal {}",
                    r.class_alpha, r.class_alpha_prime, r.class_alpha_beta, r.class_alpha_prime_beta, r.segal.level2
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn checker_agreement(maps: &[PresheafMap]) -> Outcome {
    let results: Vec<Agreement> = maps
        .par_iter()
        .map(|p| {
            let v = check(p, Method::All, DEFAULT_FAMILY_BOUND).map_err(|e| e.to_string())?;
            let mut bad = v.conflicts.iter().map(|c| format!("{}: {c}", v.morphism)).collect::<Vec<_>>();
            if p.is_mono() && v.omega.as_ref().and_then(|o| o.verdict()) != v.univalent() {
                bad.push(format!("{}: Ω check disagrees", v.morphism));
            }
            Ok((bad, v.refuter_gaps.len(), v.univalent()))
        })
        .collect();
    let mut bad = Vec::new();
    let (mut gaps, mut univalent) = (0, 0);
    for r in results {
        match r {
            Ok((b, g, u)) => {
                bad.extend(b);
                gaps += g;
                univalent += (u == Some(true)) as usize;
            }
            Err(e) => bad.push(e),
        }
    }
    let monos = maps.iter().filter(|p| p.is_mono()).count();
    outcome(
        bad.is_empty(),
        format!(
            "{} maps ({univalent} univalent, {monos} mono), {} disagreements, {gaps} inconclusive refutations{}",
            maps.len(),
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn equivalence_objects(maps: &[PresheafMap]) -> Outcome {
    let failures: Vec<String> = maps
        .par_iter()
        .filter_map(|p| {
            let run = || -> strict_univalence::Result<bool> {
                let ic = build_internal_cat(p)?;
                let iso = iso_object(&ic)?;
                let (alt, cmp) = iso_object_alt(&ic)?;
                let verg = vergura_object(p)?;
                Ok(cmp.is_iso() && iso_over_bb(&iso, &alt).is_some() && iso_over_bb(&iso, &verg).is_some())
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(strict_univalence::univalence::map_name(p)),
                Err(e) => Some(e.to_string()),
            }
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!("{} maps, {} failures{}", maps.len(), failures.len(), failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn complete_groups() -> Outcome {
    let mut catalog: Vec<(String, FinGroup)> = match small_groups(8) {
        Ok(gs) => gs.into_iter().map(|g| (g.name, g.group)).collect(),
        Err(e) => return outcome(false, e.to_string()),
    };
    catalog.push(("S3".into(), FinGroup::symmetric(3)));
    catalog.push(("S4".into(), FinGroup::symmetric(4)));
    catalog.push(("D4".into(), FinGroup::dihedral(4)));
    catalog.push(("Q8".into(), FinGroup::quaternion()));
    let mut problems = Vec::new();
    let mut complete = BTreeSet::new();
    for (name, g) in &catalog {
        let c = is_complete(g);
        // Z(G) and Out(G) computed directly, θ bijectivity by the library
        let center = (0..g.order()).filter(|&a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a))).count();
        let out = inn_out(g).out.order();
        let by_invariants = center == 1 && out == 1;
        let by_theta = c.theta_injective && c.theta_surjective;
        if c.complete != by_invariants || c.complete != by_theta {
            problems.push(format!("{name}: completeness routes disagree"));
        }
        let (pi0, pi1) = eq_bg_matches(g);
        if !(pi0 && pi1) {
            problems.push(format!("{name}: π₀ ≅ Out {pi0}, π₁ ≅ Z {pi1}"));
        }
        if c.complete {
            complete.insert(name.clone());
        }
        let must_be_incomplete = (g.is_abelian() && g.order() > 1) || name == "D4" || name == "Q8";
        if must_be_incomplete && c.complete {
            problems.push(format!("{name} is complete"));
        }
    }
    for name in ["S3", "S4"] {
        if !complete.contains(name) {
            problems.push(format!("{name} is not complete"));
        }
    }
    outcome(
        problems.is_empty(),
        format!("{} groups; complete: {complete:?}{}", catalog.len(), problems.first().map(|p| format!("; {p}")).unwrap_or_default()),
    )
}

fn s3_report() -> Outcome {
    match reproduce("s3", &ReproOptions::default()) {
        Ok(r) => {
            let c = &r.computed;
            outcome(
                r.matched,
                format!(
                    "external automorphisms {}, mono {}, internal equivalences {} (conjugation {}), checkers agree {}; \
                     matches the external-rigidity reading: {} (informational)",
                    c["external_automorphisms"],
                    c["mono"],
                    c["internal_equivalences"],
                    c["internal_action_is_conjugation"],
                    c["checkers_agree"],
                    c["matches_external_rigidity_reading"]
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

/// All preorders on `n` points, as reflexive-transitive closures of every
/// subset of off-diagonal pairs (with repeats).
fn preorders(n: usize) -> Vec<Preorder> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out: Vec<Preorder> = (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            Preorder::generated_by((0..n).map(|i| i.to_string()).collect(), &chosen)
        })
        .collect();
    out.sort_by(|a, b| a.relation().cmp(b.relation()));
    out.dedup();
    out
}

fn stability_and_truncation() -> Outcome {
    let mut problems: Vec<String> = Vec::new();
    let mut checks = 0;
    let finset = finset_maps(3, 3);
    let z2 = z2_corpus();
    let z2_maps = z2.maps(4);
    for (maps, objects) in [(finset, finset_objects(3)), (z2_maps, z2.objects(3))] {
        match stability_suite(&maps, &objects) {
            Ok(r) => {
                checks += r.checks;
                problems.extend(r.failures);
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    // t: 1 → Ω pulled back along a mono and along the fold Ω ⊔ Ω → Ω
    let base = strict_univalence::corpus::finset();
    let omega = SubobjectClassifier::new(&base);
    let t = omega.true_map.clone();
    let two_omega = strict_univalence::corpus::set(&base, 4);
    let fold = PresheafMap::new(two_omega, omega.omega.clone(), vec![vec![0, 1, 0, 1]]).expect("fold");
    let along_fold = pullback(&fold, &t).map(|pb| pb.proj1).and_then(|q| check_completeness(&q));
    checks += 2;
    if !check_completeness(&t).map(|c| c.pass).unwrap_or(false) {
        problems.push("t: 1 → Ω is not univalent".into());
    }
    if along_fold.map(|c| c.pass).unwrap_or(true) {
        problems.push("t pulled back along the fold is univalent".into());
    }
    // zero-categories: nerves of posets are complete, reflection is idempotent
    for n in 0..=3 {
        for p in preorders(n) {
            checks += 3;
            let nerve = nerve_of_category(&p.to_category(), 3).and_then(|w| check_complete(&w));
            match nerve {
                Ok(v) if v.pass == p.is_antisymmetric() => {}
                Ok(_) => problems.push(format!("nerve completeness vs antisymmetry on {:?}", p.relation())),
                Err(e) => problems.push(e.to_string()),
            }
            let once = preorder_to_poset(&p);
            let twice = preorder_to_poset(&once.poset);
            if twice.poset.relation() != once.poset.relation() || twice.class_of != (0..once.poset.len()).collect::<Vec<_>>() {
                problems.push(format!("reflection not idempotent on {:?}", p.relation()));
            }
            if !once.poset.is_antisymmetric() {
                problems.push(format!("reflection of {:?} is not a poset", p.relation()));
            }
        }
    }
    // identities: univalent exactly on subterminal objects
    let gsets: Vec<Arc<Presheaf>> = s3_corpus().objects(4);
    for b in finset_objects(3).iter().chain(&gsets) {
        checks += 1;
        let sub = common::is_subterminal(b);
        if check_completeness(&PresheafMap::identity(b)).map(|c| c.pass).ok() != Some(sub) {
            problems.push(format!("identity on {:?}", b.sizes()));
        }
    }
    outcome(
        problems.is_empty(),
        format!("{checks} checks, {} counterexamples{}", problems.len(), problems.first().map(|p| format!("; first: {p}")).unwrap_or_default()),
    )
}

fn topos_laws() -> Outcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for (name, r) in common::topos_law_suite() {
        checks += r.checks;
        failures.extend(r.failures.into_iter().map(|f| format!("{name}: {f}")));
    }
    outcome(
        failures.is_empty(),
        format!("{checks} checks over 5 ambients, {} failures{}", failures.len(), failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn main() {
    let maps = corpus();
    let criteria: Vec<Criterion> = vec![
        (1, "univalent maps of finite sets", Some(60), Box::new(univ_set_table)),
        (2, "univalent group homomorphisms", Some(600), Box::new(grp_table)),
        (3, "H-completion of N(FinSet≤4) is not Segal", Some(30), Box::new(hackney)),
        (4, "checker agreement", Some(900), Box::new(|| checker_agreement(&maps))),
        (5, "equivalence objects agree", None, Box::new(|| equivalence_objects(&maps))),
        (6, "complete groups", Some(300), Box::new(complete_groups)),
        (7, "S3-set report", None, Box::new(s3_report)),
        (8, "stability and truncation laws", None, Box::new(stability_and_truncation)),
        (9, "topos laws", Some(600), Box::new(topos_laws)),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in &criteria {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(*secs) {
                o.pass = false;
                o.detail.push_str(&format!("; over the {secs} s limit"));
            }
        }
        let limit = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        println!(
            "AC{n} {} {name}: {} ({:.2} s{limit})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
        failed += !o.pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
