//! Exact values taken from the literature, kept apart from computed bounds.

use serde::{Deserialize, Serialize};

use crate::charfun::BottMatrix;

const BUILTIN: &str = include_str!("../../data/external_values.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExternalEntry {
    /// `TC(RP^n)`.
    Rp { n: usize, tc: usize, source: String },
    /// `TC` of the Bott manifold with the given normal-form lower blocks.
    Bott {
        dims: Vec<usize>,
        lower_bits: String,
        tc: usize,
        source: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalTable {
    #[serde(default)]
    pub description: String,
    pub entries: Vec<ExternalEntry>,
}

/// An imported value and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExternalValue {
    pub value: usize,
    pub source: String,
}

impl ExternalTable {
    /// The table shipped in `data/external_values.json`.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled table parses")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn empty() -> Self {
        Self {
            description: String::new(),
            entries: Vec::new(),
        }
    }

    pub fn rp_tc(&self, n: usize) -> Option<ExternalValue> {
        self.entries.iter().find_map(|e| match e {
            ExternalEntry::Rp { n: m, tc, source } if *m == n => Some(ExternalValue {
                value: *tc,
                source: source.clone(),
            }),
            _ => None,
        })
    }

    pub fn bott_tc(&self, b: &BottMatrix) -> Option<ExternalValue> {
        let bits = b.lower_bits();
        self.entries.iter().find_map(|e| match e {
            ExternalEntry::Bott {
                dims,
                lower_bits,
                tc,
                source,
            } if dims.as_slice() == b.dims() && *lower_bits == bits => Some(ExternalValue {
                value: *tc,
                source: source.clone(),
            }),
            _ => None,
        })
    }
}
