use serde::{Deserialize, Serialize};

use super::Extension;
use crate::error::Result;
use crate::homlie::AlgebraJson;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub ambient: AlgebraJson,
    pub subalgebra_basis: Vec<Vec<String>>,
}

impl ExtensionJson {
    pub fn from_extension(e: &Extension) -> Self {
        ExtensionJson {
            ambient: AlgebraJson::from_algebra(e.ambient()),
            subalgebra_basis: e
                .sub()
                .basis()
                .iter()
                .map(|v| crate::homlie::json_strings(v))
                .collect(),
        }
    }

    /// Parse, verify the ambient algebra and validate the subalgebra.
    pub fn to_extension(&self) -> Result<Extension> {
        let q = self.ambient.to_algebra()?.verify()?;
        let f = q.field();
        let basis = self
            .subalgebra_basis
            .iter()
            .map(|r| crate::homlie::json_vector(f, r))
            .collect::<Result<Vec<_>>>()?;
        Extension::new(q, &basis)
    }
}

impl Extension {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ExtensionJson = serde_json::from_str(s)?;
        j.to_extension()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ExtensionJson::from_extension(self)).expect("serializable")
    }
}
