use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::Model;
use crate::random::{random_model, ModelClass};
use crate::semantics::evaluate_all;
use crate::syntax::Formula;
use crate::truth::TruthValue;

/// A model and state where a formula takes a value below 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub model: Model,
    pub state: String,
    pub value: TruthValue,
}

/// Searches up to `budget` random models of `class` for a state where `f`
/// is not fully true.
///
/// A returned counterexample proves `f` is not valid on that class. `None`
/// proves nothing; the search is a refutation net, not a decision procedure.
pub fn falsify(f: &Formula, budget: usize, class: ModelClass, seed: u64) -> Option<Counterexample> {
    let atoms: Vec<&str> = f.atoms().into_iter().collect();
    let agents: Vec<&str> = f.agents().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let model = random_model(&mut rng, &agents, &atoms, class);
        let values = evaluate_all(&model, f).expect("model declares the formula's signature");
        if let Some((s, value)) = values.into_iter().enumerate().find(|(_, v)| !v.is_one()) {
            let state = model.states()[s].clone();
            return Some(Counterexample {
                model,
                state,
                value,
            });
        }
    }
    None
}
