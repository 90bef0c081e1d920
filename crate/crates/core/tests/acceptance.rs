//! Acceptance suite: runs every criterion, prints one PASS/FAIL line for
//! each, and exits with a failure status if any criterion fails.
//!
//! Truth values are compared as exact rationals, so there is no numeric
//! tolerance. The only tolerances are the wall-clock limits below.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doxa::assets;
use doxa::hilbert::{
    instantiate_schema, parse_proof, verify_proof, Binding, Justification, ProofScript, SchemaId,
};
use doxa::model::parse_model;
use doxa::random::{random_formula, random_model, random_substitution, FormulaShape, ModelClass};
use doxa::semantics::{evaluate, evaluate_all, run_announcements, update_model};
use doxa::syntax::{parse_formula, print_formula};
use doxa::translation::{check_complexity_lemma, translate, translate_traced};
use doxa::{Formula, Model, Threshold, TruthValue};

const QUERY_LIMIT: Duration = Duration::from_secs(1);
const SUITE_LIMIT: Duration = Duration::from_secs(60);

const SCHEMA_INSTANCES: usize = 1000;
const TRANSLATION_FORMULAS: usize = 500;
const MODELS_PER_FORMULA: usize = 2;
const LEMMA_FORMULAS: usize = 1000;
const ROUND_TRIP_FORMULAS: usize = 2000;

const ATOMS: [&str; 3] = ["p", "q", "r"];
const AGENTS: [&str; 3] = ["a", "b", "c"];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn muddy(text: &str) -> Model {
    parse_model(text).expect("bundled model parses")
}

fn f(text: &str) -> Formula {
    parse_formula(text).expect("formula parses")
}

fn announcement() -> (Formula, Threshold) {
    (f("~(~ma & ~mb & ~mc)"), Threshold::ratio(4, 5))
}

fn first_failure(failures: &[String]) -> String {
    failures
        .first()
        .map(|f| format!("; first: {f}"))
        .unwrap_or_default()
}

fn within(limit: Duration, start: Instant) -> bool {
    start.elapsed() < limit
}

fn muddy_initial_belief() -> Outcome {
    let start = Instant::now();
    let v = evaluate(&muddy(assets::MUDDY_I), "s3", &f("B[c] mc")).unwrap();
    let fast = within(QUERY_LIMIT, start);
    Outcome::new(
        v == TruthValue::ratio(1, 5) && fast,
        format!("B[c] mc at s3 = {v}"),
    )
}

fn muddy_after_announcement() -> Outcome {
    let m = muddy(assets::MUDDY_I);
    let v = evaluate(&m, "s3", &f("[~(~ma & ~mb & ~mc) >= 4/5] B[c] mc")).unwrap();
    let (content, g) = announcement();
    let update = update_model(&m, &content, &g).unwrap();
    let matches_panel = update.model == muddy(assets::MUDDY_II);
    let passed = v == TruthValue::ratio(1, 5) && update.removed == ["s1"] && matches_panel;
    Outcome::new(
        passed,
        format!(
            "value {v}, removed {:?}, equals panel II: {matches_panel}",
            update.removed
        ),
    )
}

fn muddy_third_panel() -> Outcome {
    let v = evaluate(&muddy(assets::MUDDY_III), "s3", &f("B[c] mc")).unwrap();
    let ann = announcement();
    let trace = run_announcements(&muddy(assets::MUDDY_I), &[ann.clone(), ann]).unwrap();
    let twice = trace.current();
    let is_panel_two = *twice == muddy(assets::MUDDY_II) && twice.states().len() == 7;
    let is_panel_three = *twice == muddy(assets::MUDDY_III);
    Outcome::new(
        v == TruthValue::ratio(9, 10) && is_panel_two && !is_panel_three,
        format!(
            "B[c] mc at s3 = {v}; announcing twice leaves {} states",
            twice.states().len()
        ),
    )
}

fn random_signature(rng: &mut ChaCha8Rng) -> &'static [&'static str] {
    &AGENTS[..rng.gen_range(1..=AGENTS.len())]
}

fn reduction_validities() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let suites = [
        (SchemaId::LD1, ModelClass::All),
        (SchemaId::LD2, ModelClass::All),
        (SchemaId::LD3, ModelClass::All),
        (SchemaId::LD4, ModelClass::All),
        (SchemaId::LD5, ModelClass::All),
        (SchemaId::LG0, ModelClass::All),
        (SchemaId::LG1, ModelClass::All),
        (SchemaId::LB1, ModelClass::All),
        (SchemaId::LB2, ModelClass::Serial),
    ];
    let mut failures = Vec::new();
    for (id, class) in suites {
        for _ in 0..SCHEMA_INSTANCES {
            let agents = random_signature(&mut rng);
            let shape = FormulaShape::new(3, &ATOMS, agents);
            let instance =
                instantiate_schema(id, &random_substitution(&mut rng, id, &shape)).unwrap();
            let m = random_model(&mut rng, agents, &ATOMS, class);
            if !evaluate_all(&m, &instance)
                .unwrap()
                .iter()
                .all(TruthValue::is_one)
            {
                failures.push(format!("{id}: {instance}"));
            }
        }
    }
    let fast = within(SUITE_LIMIT, start);
    Outcome::new(
        failures.is_empty() && fast,
        format!(
            "{} schemata x {SCHEMA_INSTANCES} instances, {} failures{}",
            suites.len(),
            failures.len(),
            first_failure(&failures)
        ),
    )
}

fn translation_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = Vec::new();
    let mut checked_states = 0;
    for _ in 0..TRANSLATION_FORMULAS {
        let agents = random_signature(&mut rng);
        let formula = random_formula(&mut rng, &FormulaShape::new(5, &ATOMS, agents));
        let t = translate(&formula);
        if !t.is_announcement_free() {
            mismatches.push(format!("not announcement-free: {formula}"));
        }
        for _ in 0..MODELS_PER_FORMULA {
            let m = random_model(&mut rng, agents, &ATOMS, ModelClass::All);
            checked_states += m.states().len();
            if evaluate_all(&m, &formula).unwrap() != evaluate_all(&m, &t).unwrap() {
                mismatches.push(format!("values differ: {formula}"));
            }
        }
    }
    let fast = within(SUITE_LIMIT, start);
    Outcome::new(
        mismatches.is_empty() && fast,
        format!(
            "{TRANSLATION_FORMULAS} formulas, {checked_states} states, {} failures{}",
            mismatches.len(),
            first_failure(&mismatches)
        ),
    )
}

fn complexity_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut by_item: BTreeMap<u8, usize> = BTreeMap::new();
    let mut example = None;
    let mut weak_steps: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..LEMMA_FORMULAS {
        let agents = random_signature(&mut rng);
        let formula = random_formula(&mut rng, &FormulaShape::new(5, &ATOMS, agents));
        for v in check_complexity_lemma(&formula) {
            *by_item.entry(v.item).or_default() += 1;
            example.get_or_insert_with(|| v.to_string());
        }
        let (_, log) = translate_traced(&formula);
        for step in log
            .iter()
            .filter(|e| e.before_complexity <= e.after_complexity)
        {
            *weak_steps
                .entry(format!("{:?}", step.reduction))
                .or_default() += 1;
        }
    }
    let passed = by_item.is_empty() && weak_steps.is_empty();
    Outcome::new(
        passed,
        format!(
            "{LEMMA_FORMULAS} formulas; failing instances by item {by_item:?}; non-decreasing eliminations {weak_steps:?}; e.g. {}",
            example.unwrap_or_else(|| "none".into())
        ),
    )
}

fn other_threshold(g: &Threshold) -> Threshold {
    if g.value().is_one() {
        Threshold::ratio(1, 2)
    } else {
        Threshold::ratio(1, 1)
    }
}

/// Every script obtained by altering exactly one line (or the `qed` line).
fn mutants(script: &ProofScript) -> Vec<(String, ProofScript)> {
    let mut out = Vec::new();
    for (k, line) in script.lines.iter().enumerate() {
        let mut variants = Vec::new();
        match &line.justification {
            Justification::Premise(p) => {
                variants.push(Justification::Premise(Formula::not(p.clone())))
            }
            Justification::Axiom(id, subst) | Justification::Registered(id, subst) => {
                for (name, binding) in &subst.0 {
                    let altered = match binding {
                        Binding::Formula(x) => Binding::Formula(Formula::not(x.clone())),
                        Binding::Agent(_) => Binding::Agent("zz".into()),
                        Binding::Threshold(g) => Binding::Threshold(other_threshold(g)),
                    };
                    let mut s = subst.clone();
                    s.0.insert(name.clone(), altered);
                    variants.push(match line.justification {
                        Justification::Axiom(..) => Justification::Axiom(*id, s),
                        _ => Justification::Registered(*id, s),
                    });
                }
            }
            Justification::MP(i, j) => {
                variants.push(Justification::MP(*j, *i));
                if *i > 1 {
                    variants.push(Justification::MP(i - 1, *j));
                }
            }
            Justification::Conj(i, j) => variants.push(Justification::Conj(*j, *i)),
            Justification::Syl(i, j) => variants.push(Justification::Syl(*j, *i)),
            Justification::NecB(i, a) => variants.push(Justification::NecB(*i, format!("{a}z"))),
            Justification::NecG(i, g) => {
                variants.push(Justification::NecG(*i, other_threshold(g)));
                if *i > 1 {
                    variants.push(Justification::NecG(i - 1, g.clone()));
                }
            }
        }
        for j in variants {
            let mut m = script.clone();
            m.lines[k].justification = j.clone();
            out.push((format!("line {}: {j}", line.index), m));
        }
        if let Some(claim) = &line.claim {
            let mut m = script.clone();
            m.lines[k].claim = Some(Formula::not(claim.clone()));
            out.push((format!("line {}: negated claim", line.index), m));
        }
    }
    let mut m = script.clone();
    m.conclusion -= 1;
    out.push(("qed moved back one line".into(), m));
    out
}

fn proof_checker() -> Outcome {
    let mut notes = Vec::new();
    let mut passed = true;
    let mut total = 0;
    for text in [assets::GAMMA_GEQ, assets::NEG_CASE] {
        let script = parse_proof(text).unwrap();
        let report = verify_proof(&script);
        if !report.is_valid() {
            passed = false;
            notes.push(format!(
                "{} rejected: {}",
                script.name, report.violations[0]
            ));
        }
        for (what, mutant) in mutants(&script) {
            total += 1;
            if verify_proof(&mutant).is_valid() {
                passed = false;
                notes.push(format!("{} mutant accepted ({what})", script.name));
            }
        }
    }
    Outcome::new(
        passed,
        format!(
            "2 scripts verify, {total} single-line mutants rejected{}",
            first_failure(&notes)
        ),
    )
}

fn parser_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let shape = FormulaShape::new(8, &ATOMS, &AGENTS);
    let mut failures = Vec::new();
    for _ in 0..ROUND_TRIP_FORMULAS {
        let formula = random_formula(&mut rng, &shape);
        let text = print_formula(&formula);
        if parse_formula(&text).ok().as_ref() != Some(&formula) {
            failures.push(text);
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{ROUND_TRIP_FORMULAS} formulas, {} failures{}",
            failures.len(),
            first_failure(&failures)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("muddy children, initial belief", muddy_initial_belief),
        (
            "muddy children, after one announcement",
            muddy_after_announcement,
        ),
        (
            "muddy children, third panel and repeated announcement",
            muddy_third_panel,
        ),
        (
            "reduction and threshold axiom validity",
            reduction_validities,
        ),
        ("translation preserves values", translation_oracle),
        ("complexity lemma and strict decrease", complexity_lemma),
        (
            "proof checker accepts bundled scripts and rejects mutants",
            proof_checker,
        ),
        ("parser round trip", parser_round_trip),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome::new(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.passed);
        println!(
            "criterion {} {verdict} [{:.2?}] {title}: {}",
            n + 1,
            start.elapsed(),
            outcome.detail
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
