//! Semantic checks on the calculus: every axiom and registered theorem
//! instance is valid on serial models, and the bundled derivations check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::assets;
use crate::model::Model;
use crate::random::{random_model, random_substitution, FormulaShape, ModelClass};
use crate::semantics::evaluate_all;
use crate::truth::TruthValue;

const ATOMS: [&str; 3] = ["p", "q", "r"];
const AGENTS: [&str; 2] = ["a", "b"];

fn valid_on(m: &Model, f: &crate::Formula) -> bool {
    evaluate_all(m, f).unwrap().iter().all(TruthValue::is_one)
}

#[test]
fn schema_instances_are_valid_on_serial_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let shape = FormulaShape::new(3, &ATOMS, &AGENTS);
    for id in SchemaId::AXIOMS.into_iter().chain(SchemaId::THEOREMS) {
        for _ in 0..1000 {
            let f = instantiate_schema(id, &random_substitution(&mut rng, id, &shape)).unwrap();
            let m = random_model(&mut rng, &AGENTS, &ATOMS, ModelClass::Serial);
            assert!(valid_on(&m, &f), "{id} instance `{f}` fails on\n{m:?}");
        }
    }
}

#[test]
fn registered_theorems_hold_on_a_grid() {
    let grid = [(0, 1), (1, 5), (1, 3), (1, 2), (3, 5), (5, 6), (1, 1)]
        .map(|(n, d)| TruthValue::ratio(n, d));
    let atoms = ["p", "q", "r"].map(|p| p.to_string()).to_vec();
    for id in SchemaId::THEOREMS {
        let subst = id
            .metavariables()
            .iter()
            .zip(["p", "q", "r"])
            .fold(Substitution::new(), |s, ((name, _), p)| {
                s.formula(name, crate::Formula::atom(p))
            });
        let f = instantiate_schema(id, &subst).unwrap();
        for x in &grid {
            for y in &grid {
                for z in &grid {
                    let m = Model::from_tables(
                        vec!["s".into()],
                        vec![],
                        atoms.clone(),
                        vec![],
                        vec![vec![x.clone(), y.clone(), z.clone()]],
                    )
                    .unwrap();
                    assert!(valid_on(&m, &f), "{id} fails at ({x}, {y}, {z})");
                }
            }
        }
    }
}

#[test]
fn belief_consistency_needs_a_related_state() {
    let f = instantiate_schema(SchemaId::LB2, &Substitution::new().agent("a", "a")).unwrap();
    let isolated = Model::from_tables(
        vec!["s".into()],
        vec!["a".into()],
        vec![],
        vec![vec![vec![TruthValue::zero()]]],
        vec![vec![]],
    )
    .unwrap();
    assert_eq!(
        evaluate_all(&isolated, &f).unwrap(),
        vec![TruthValue::zero()]
    );
}

#[test]
fn bundled_scripts_verify() {
    for text in [assets::GAMMA_GEQ, assets::NEG_CASE, assets::ATOM_CASE] {
        let script = parse_proof(text).unwrap();
        let report = verify_proof(&script);
        assert!(
            report.is_valid(),
            "{}: {:?}",
            script.name,
            report.violations
        );
        assert_eq!(report.conclusion.as_ref(), script.goal.as_ref());
    }
}

#[test]
fn premise_free_conclusions_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for text in [assets::GAMMA_GEQ, assets::NEG_CASE, assets::ATOM_CASE] {
        let script = parse_proof(text).unwrap();
        if !script.premises.is_empty() {
            continue;
        }
        let report = verify_proof(&script);
        for f in report.derived.values() {
            for _ in 0..200 {
                let m = random_model(&mut rng, &AGENTS, &ATOMS, ModelClass::Serial);
                assert!(valid_on(&m, f), "{}: `{f}` fails", script.name);
            }
        }
    }
}
