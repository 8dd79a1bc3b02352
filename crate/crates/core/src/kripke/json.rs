use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{atom_names, atom_set, FiniteModel, Frame, World};
use crate::error::{Error, Result};
use crate::formula::Alphabet;

/// On-disk model format. `order` may omit reflexive and transitive pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub atoms: Vec<String>,
    pub worlds: usize,
    pub order: Vec<[World; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub succ: Option<Vec<World>>,
    pub val: Vec<Vec<String>>,
}

impl ModelFile {
    pub fn into_model(self) -> Result<FiniteModel> {
        let alphabet = Alphabet::from_names(&self.atoms)?;
        if self.val.len() != self.worlds {
            return Err(Error::InvalidModel(format!(
                "`val` has {} entries for {} worlds",
                self.val.len(),
                self.worlds
            )));
        }
        let pairs: Vec<(World, World)> = self.order.iter().map(|&[i, j]| (i, j)).collect();
        let frame = Frame::from_pairs(self.worlds, &pairs, self.succ)?;
        let val = self
            .val
            .iter()
            .map(|names| atom_set(&alphabet, names.iter().map(String::as_str)))
            .collect::<Result<Vec<_>>>()?;
        FiniteModel::new(frame, alphabet, val)
    }

    /// Lists every non-reflexive pair of the order.
    pub fn from_model(m: &FiniteModel) -> Self {
        let f = m.frame();
        let order = f
            .worlds()
            .flat_map(|w| f.strict_up(w).iter().map(move |v| [w, v]))
            .collect();
        ModelFile {
            atoms: m.alphabet().atoms().iter().map(|a| a.to_string()).collect(),
            worlds: m.len(),
            order,
            succ: f.succ().map(<[World]>::to_vec),
            val: f.worlds().map(|w| atom_names(m.alphabet(), m.val(w))).collect(),
        }
    }
}

impl FiniteModel {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str::<ModelFile>(text)?.into_model()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from_model(self)).expect("model file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        FiniteModel::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}
