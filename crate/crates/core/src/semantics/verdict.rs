use serde::Serialize;
use serde_json::{json, Value};

use super::{extension, extension_all};
use crate::error::Result;
use crate::formula::{Alphabet, Formula};
use crate::kripke::{FiniteModel, LogicClass, ModelFile, ModelSpace, World};
use crate::traces::{tht_extension, LassoFile, LassoShapeSet, ThtLasso};

/// Search space a bounded verdict is relative to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub logic: String,
    pub alphabet: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_worlds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shapes: Option<Vec<(usize, usize)>>,
    /// Number of candidate models or lassos in the space.
    pub space: u128,
    /// The space is complete for the logic, so a negative answer is final.
    pub exact: bool,
}

impl Bounds {
    pub fn models(space: &ModelSpace) -> Self {
        Bounds {
            logic: space.class.to_string(),
            alphabet: names(&space.alphabet),
            max_worlds: Some(space.max_worlds),
            shapes: None,
            space: space.model_count(),
            exact: space.class == LogicClass::Ht,
        }
    }

    pub fn lassos(logic: &str, alphabet: &Alphabet, shapes: &LassoShapeSet, space: u128) -> Self {
        Bounds {
            logic: logic.to_string(),
            alphabet: names(alphabet),
            max_worlds: None,
            shapes: Some(shapes.shapes().to_vec()),
            space,
            exact: false,
        }
    }
}

fn names(a: &Alphabet) -> Vec<String> {
    a.atoms().iter().map(|x| x.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Model { model: FiniteModel, world: World },
    /// Evaluated at the here layer of `instant`.
    Lasso { lasso: ThtLasso, instant: usize },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Model { model, world } => json!({
                "kind": "model",
                "model": ModelFile::from_model(model),
                "world": world,
            }),
            Witness::Lasso { lasso, instant } => json!({
                "kind": "lasso",
                "lasso": LassoFile::from_lasso(lasso),
                "instant": instant,
            }),
        }
    }

    /// Whether `phi` holds at the witness point.
    pub fn satisfies(&self, phi: &Formula) -> Result<bool> {
        match self {
            Witness::Model { model, world } => Ok(extension(model, phi)?.contains(*world)),
            Witness::Lasso { lasso, instant } => {
                Ok(tht_extension(lasso, phi)?.0 >> lasso.position(*instant) & 1 == 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `witness` satisfies the premises and refutes `failed`.
    Refuted { witness: Witness, failed: Formula },
    NoCounterexampleUpToBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub bounds: Bounds,
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Refuted { witness, .. } => Some(witness),
            Outcome::NoCounterexampleUpToBound => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Refuted { .. } => "refuted",
            Outcome::NoCounterexampleUpToBound if self.bounds.exact => "holds",
            Outcome::NoCounterexampleUpToBound => "no-counterexample-up-to-bound",
        }
    }

    /// Re-checks a refutation: the witness satisfies every premise and
    /// fails the reported conclusion, which must be one of `delta`.
    /// Verdicts without a witness replay trivially.
    pub fn replay(&self, gamma: &[Formula], delta: &[Formula]) -> Result<bool> {
        let Outcome::Refuted { witness, failed } = &self.outcome else {
            return Ok(true);
        };
        if !delta.contains(failed) {
            return Ok(false);
        }
        if let Witness::Model { model, world } = witness {
            if !extension_all(model, gamma)?.contains(*world) {
                return Ok(false);
            }
            return Ok(!extension(model, failed)?.contains(*world));
        }
        for g in gamma {
            if !witness.satisfies(g)? {
                return Ok(false);
            }
        }
        Ok(!witness.satisfies(failed)?)
    }

    pub fn to_json(&self) -> Value {
        let (witness, failed) = match &self.outcome {
            Outcome::Refuted { witness, failed } => (witness.to_json(), json!(failed.to_string())),
            Outcome::NoCounterexampleUpToBound => (Value::Null, Value::Null),
        };
        json!({
            "verdict": self.label(),
            "bounds": self.bounds,
            "witness": witness,
            "failed": failed,
        })
    }
}
