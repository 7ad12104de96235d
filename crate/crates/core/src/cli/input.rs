//! The input document and its conversion into a polytope and characteristic
//! function.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charfun::{BottMatrix, CharError, CharacteristicFunction};
use crate::complexes::{ComplexError, SimplePolytope, SimplicialComplex};
use crate::f2linalg::F2Vector;
use crate::invariants::zcl::{SearchOptions, Strategy, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub polytope: PolytopeSpec,
    pub lambda: LambdaSpec,
    #[serde(default)]
    pub options: InputOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolytopeSpec {
    ProductOfSimplices {
        dims: Vec<usize>,
    },
    /// The dual simplicial complex on facets `0 .. facets`.
    DualComplex {
        n: usize,
        facets: usize,
        maximal_simplices: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum LambdaSpec {
    /// Normal-form Bott matrix, strictly lower blocks listed row by row.
    Bott { dims: Vec<usize>, lower_blocks: Vec<Vec<u8>> },
    /// One vector of `Z_2^n` per facet.
    Explicit { n: usize, vectors: Vec<Vec<u8>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputOptions {
    pub strategy: Strategy,
    pub exponent_cap: Option<usize>,
    pub budget: u64,
    pub assert_rz_simply_connected: bool,
}

impl Default for InputOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Generators,
            exponent_cap: None,
            budget: DEFAULT_BUDGET,
            assert_rz_simply_connected: false,
        }
    }
}

impl InputOptions {
    pub fn search(&self) -> SearchOptions {
        SearchOptions {
            strategy: self.strategy,
            exponent_cap: self.exponent_cap,
            budget: self.budget,
        }
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("bott lambda needs a product_of_simplices polytope with dims {lambda:?}, got {polytope}")]
    BottMismatch { lambda: Vec<usize>, polytope: String },
    #[error("entry {value} in {field} is not 0 or 1")]
    NotBinary { field: String, value: u8 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A resolved document.
#[derive(Clone, Debug)]
pub struct Instance {
    pub polytope: SimplePolytope,
    pub lambda: CharacteristicFunction,
    pub bott: Option<BottMatrix>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn resolve(&self) -> Result<Instance, InputError> {
        let polytope = match &self.polytope {
            PolytopeSpec::ProductOfSimplices { dims } => SimplePolytope::product_of_simplices(dims)?,
            PolytopeSpec::DualComplex {
                n,
                facets,
                maximal_simplices,
            } => SimplePolytope::from_dual(*n, SimplicialComplex::new(*facets, maximal_simplices)?)?,
        };
        let (lambda, bott) = match &self.lambda {
            LambdaSpec::Bott { dims, lower_blocks } => {
                if polytope.product_dims() != Some(dims.as_slice()) {
                    return Err(InputError::BottMismatch {
                        lambda: dims.clone(),
                        polytope: describe(&self.polytope),
                    });
                }
                let blocks = lower_blocks
                    .iter()
                    .map(|b| binary(b, "lower_blocks"))
                    .collect::<Result<Vec<_>, _>>()?;
                let b = BottMatrix::from_lower_blocks(dims, &blocks)?;
                (b.to_characteristic(), Some(b))
            }
            LambdaSpec::Explicit { n, vectors } => {
                let vs = vectors
                    .iter()
                    .map(|v| binary(v, "vectors"))
                    .collect::<Result<Vec<_>, _>>()?;
                (CharacteristicFunction::new(*n, vs)?, None)
            }
        };
        Ok(Instance { polytope, lambda, bott })
    }
}

fn binary(entries: &[u8], field: &str) -> Result<F2Vector, InputError> {
    if let Some(&value) = entries.iter().find(|&&e| e > 1) {
        return Err(InputError::NotBinary {
            field: field.to_string(),
            value,
        });
    }
    Ok(F2Vector::from_u8s(entries))
}

fn describe(p: &PolytopeSpec) -> String {
    match p {
        PolytopeSpec::ProductOfSimplices { dims } => format!("product_of_simplices with dims {dims:?}"),
        PolytopeSpec::DualComplex { facets, .. } => format!("dual_complex on {facets} facets"),
    }
}

/// Document for a normal-form Bott manifold.
pub fn bott_document(dims: &[usize], lower_blocks: Vec<Vec<u8>>) -> InputDocument {
    InputDocument {
        polytope: PolytopeSpec::ProductOfSimplices { dims: dims.to_vec() },
        lambda: LambdaSpec::Bott {
            dims: dims.to_vec(),
            lower_blocks,
        },
        options: InputOptions::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bott_document() {
        let doc = InputDocument::parse(
            r#"{"polytope": {"type": "product_of_simplices", "dims": [1, 1, 1]},
                "lambda": {"type": "bott", "dims": [1, 1, 1], "lower_blocks": [[1], [0], [0]]}}"#,
        )
        .unwrap();
        assert_eq!(doc.options, InputOptions::default());
        let inst = doc.resolve().unwrap();
        assert_eq!(inst.bott.unwrap().lower_bits(), "100");
        assert_eq!(inst.polytope.facet_count(), 6);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = InputDocument::parse("{\n  \"polytope\": {\n    \"type\": ,\n}").unwrap_err();
        match err {
            InputError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
        assert!(InputDocument::parse(r#"{"polytope": {"type": "cube"}}"#).is_err());
    }

    #[test]
    fn bott_needs_matching_product() {
        let mut doc = bott_document(&[1, 2], vec![vec![0, 1]]);
        assert!(doc.resolve().is_ok());
        doc.polytope = PolytopeSpec::ProductOfSimplices { dims: vec![2, 1] };
        assert!(matches!(doc.resolve(), Err(InputError::BottMismatch { .. })));
    }

    #[test]
    fn explicit_square() {
        let doc = InputDocument {
            polytope: PolytopeSpec::DualComplex {
                n: 2,
                facets: 4,
                maximal_simplices: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            },
            lambda: LambdaSpec::Explicit {
                n: 2,
                vectors: vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 2]],
            },
            options: InputOptions::default(),
        };
        assert!(matches!(doc.resolve(), Err(InputError::NotBinary { value: 2, .. })));
    }
}
