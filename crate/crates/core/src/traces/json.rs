use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ThtLasso;
use crate::error::{Error, Result};
use crate::formula::Alphabet;
use crate::kripke::{atom_names, atom_set};

/// On-disk lasso format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoFile {
    pub atoms: Vec<String>,
    pub prefix: usize,
    #[serde(rename = "loop")]
    pub loop_len: usize,
    #[serde(rename = "H")]
    pub here: Vec<Vec<String>>,
    #[serde(rename = "T")]
    pub there: Vec<Vec<String>>,
}

impl LassoFile {
    pub fn into_lasso(self) -> Result<ThtLasso> {
        let alphabet = Alphabet::from_names(&self.atoms)?;
        let sets = |v: &[Vec<String>]| {
            v.iter()
                .map(|names| atom_set(&alphabet, names.iter().map(String::as_str)))
                .collect::<Result<Vec<_>>>()
        };
        let (h, t) = (sets(&self.here)?, sets(&self.there)?);
        if h.len() != t.len() {
            return Err(Error::InvalidLasso("`H` and `T` differ in length".into()));
        }
        ThtLasso::new(alphabet, self.prefix, self.loop_len, h, t)
    }

    pub fn from_lasso(t: &ThtLasso) -> Self {
        let names = |v: &[crate::sets::AtomSet]| v.iter().map(|&s| atom_names(t.alphabet(), s)).collect();
        LassoFile {
            atoms: t.alphabet().atoms().iter().map(|a| a.to_string()).collect(),
            prefix: t.prefix(),
            loop_len: t.loop_len(),
            here: names(t.here()),
            there: names(t.there()),
        }
    }
}

impl ThtLasso {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str::<LassoFile>(text)?.into_lasso()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&LassoFile::from_lasso(self)).expect("lasso file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        ThtLasso::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}
