//! Characteristic functions and Bott matrices.
//!
//! Over `Z_2` the "direct summand" condition on the vectors of intersecting
//! facets is plain linear independence. It is enough to check it on maximal
//! simplices of the dual complex, since a subset of an independent set is
//! independent.

use std::fmt;

use thiserror::Error;

use crate::complexes::{factor_facet_indices, ComplexError, SimplePolytope};
use crate::f2linalg::{EchelonBasis, F2Matrix, F2Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("expected one vector per facet: polytope has {facets} facets, got {vectors} vectors")]
    FacetCountMismatch { facets: usize, vectors: usize },
    #[error("vector {index} has length {len}, expected {n}")]
    VectorLength { index: usize, len: usize, n: usize },
    #[error("characteristic function lives in Z_2^{lambda_n} but the polytope has dimension {dim}")]
    DimensionMismatch { lambda_n: usize, dim: usize },
    #[error("characteristic matrix has rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("Bott matrix block ({k},{j}) has length {len}, expected {expected}")]
    BlockShape {
        k: usize,
        j: usize,
        len: usize,
        expected: usize,
    },
    #[error("expected {expected} strictly lower blocks, got {got}")]
    LowerBlockCount { expected: usize, got: usize },
    #[error("no ordering of the factors puts the Bott matrix in unipotent lower triangular form")]
    NoNormalForm,
    #[error("the induced characteristic function is not valid: facets {0:?} carry dependent vectors")]
    InvalidInduced(Vec<usize>),
    #[error("enumeration would produce 2^{bits} matrices, over the budget of {budget}")]
    BudgetExceeded { bits: usize, budget: u64 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Assignment of a vector of `Z_2^n` to every facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFunction {
    n: usize,
    vectors: Vec<F2Vector>,
}

/// Outcome of [`validate_characteristic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// A maximal simplex of the dual whose facet vectors are dependent.
    Violation(Vec<usize>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }
}

impl CharacteristicFunction {
    pub fn new(n: usize, vectors: Vec<F2Vector>) -> Result<Self, CharError> {
        if let Some((index, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(CharError::VectorLength { index, len: v.len(), n });
        }
        Ok(Self { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[F2Vector] {
        &self.vectors
    }

    /// The `n x r` matrix whose `i`-th column is the vector of facet `i`.
    pub fn matrix(&self) -> F2Matrix {
        F2Matrix::from_columns(self.n, &self.vectors)
    }
}

pub fn validate_characteristic(
    polytope: &SimplePolytope,
    lambda: &CharacteristicFunction,
) -> Result<Validation, CharError> {
    if lambda.facet_count() != polytope.facet_count() {
        return Err(CharError::FacetCountMismatch {
            facets: polytope.facet_count(),
            vectors: lambda.facet_count(),
        });
    }
    if lambda.n() != polytope.dim() {
        return Err(CharError::DimensionMismatch {
            lambda_n: lambda.n(),
            dim: polytope.dim(),
        });
    }
    if lambda.n() <= 64 {
        let words: Vec<u64> = lambda.vectors.iter().map(|v| v.to_u64()).collect();
        for &face in polytope.dual().maximal_faces() {
            let members = (0..64).filter(|&i| face >> i & 1 == 1).map(|i| words[i]);
            if !independent_words(members) {
                return Ok(Validation::Violation(crate::complexes::face_to_vec(face)));
            }
        }
        return Ok(Validation::Valid);
    }
    for simplex in polytope.dual().maximal_simplices() {
        let mut basis = EchelonBasis::new(lambda.n());
        if !simplex.iter().all(|&i| basis.insert(lambda.vectors[i].clone())) {
            return Ok(Validation::Violation(simplex));
        }
    }
    Ok(Validation::Valid)
}

/// Linear independence of vectors packed into single words.
fn independent_words(words: impl Iterator<Item = u64>) -> bool {
    let mut by_lead = [0u64; 64];
    for mut w in words {
        while w != 0 {
            let lead = w.trailing_zeros() as usize;
            if by_lead[lead] == 0 {
                by_lead[lead] = w;
                break;
            }
            w ^= by_lead[lead];
        }
        if w == 0 {
            return false;
        }
    }
    true
}

/// Kernel of the characteristic matrix: the subgroup of `Z_2^r` acting freely
/// on the real moment-angle manifold with quotient the small cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaKernel {
    pub basis: Vec<F2Vector>,
}

pub fn lambda_kernel(lambda: &CharacteristicFunction) -> Result<LambdaKernel, CharError> {
    let m = lambda.matrix();
    let rank = m.rank();
    if rank < lambda.n() {
        return Err(CharError::RankDeficient { rank, n: lambda.n() });
    }
    Ok(LambdaKernel { basis: m.kernel_basis() })
}

/// Block matrix `A = (alpha_j^k)` of a small cover over `Delta^{n_1} x ... x Delta^{n_m}`.
///
/// `blocks[k][j]` is the block in row `k`, column `j` (0-based), a vector of
/// length `n_k`. Column `j` stacked over `k` is `lambda(F_0^j)`. In normal form
/// the diagonal blocks are all-ones and the blocks above the diagonal vanish.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BottMatrix {
    dims: Vec<usize>,
    blocks: Vec<Vec<F2Vector>>,
}

impl BottMatrix {
    pub fn new(dims: Vec<usize>, blocks: Vec<Vec<F2Vector>>) -> Result<Self, CharError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(ComplexError::BadFactorDims.into());
        }
        let m = dims.len();
        if blocks.len() != m {
            return Err(CharError::LowerBlockCount { expected: m, got: blocks.len() });
        }
        for (k, row) in blocks.iter().enumerate() {
            if row.len() != m {
                return Err(CharError::LowerBlockCount { expected: m, got: row.len() });
            }
            for (j, b) in row.iter().enumerate() {
                if b.len() != dims[k] {
                    return Err(CharError::BlockShape { k, j, len: b.len(), expected: dims[k] });
                }
            }
        }
        Ok(Self { dims, blocks })
    }

    /// Normal-form matrix from its strictly lower blocks, listed row by row:
    /// `(k=2,j=1), (k=3,j=1), (k=3,j=2), (k=4,j=1), ...` (1-based), i.e. the
    /// order of the parameters in `M^3(b_1^2, b_1^3, b_2^3)`.
    pub fn from_lower_blocks(dims: &[usize], lower: &[F2Vector]) -> Result<Self, CharError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(ComplexError::BadFactorDims.into());
        }
        let m = dims.len();
        let expected = m * (m - 1) / 2;
        if lower.len() != expected {
            return Err(CharError::LowerBlockCount { expected, got: lower.len() });
        }
        let mut blocks: Vec<Vec<F2Vector>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|j| if j == k { F2Vector::ones(dims[k]) } else { F2Vector::zeros(dims[k]) })
                    .collect()
            })
            .collect();
        let mut it = lower.iter();
        for k in 1..m {
            for j in 0..k {
                let b = it.next().expect("count checked above");
                if b.len() != dims[k] {
                    return Err(CharError::BlockShape { k, j, len: b.len(), expected: dims[k] });
                }
                blocks[k][j] = b.clone();
            }
        }
        Ok(Self { dims: dims.to_vec(), blocks })
    }

    /// Real Bott matrix (all `n_j = 1`) from its strictly lower scalar entries.
    pub fn real_bott(m: usize, lower_bits: &[u8]) -> Result<Self, CharError> {
        let lower: Vec<F2Vector> = lower_bits.iter().map(|&b| F2Vector::from_u8s(&[b])).collect();
        Self::from_lower_blocks(&vec![1; m], &lower)
    }

    /// The matrix of a product of projective spaces.
    pub fn projective_product(dims: &[usize]) -> Result<Self, CharError> {
        let m = dims.len();
        let lower: Vec<F2Vector> = (1..m)
            .flat_map(|k| (0..k).map(move |_| k))
            .map(|k| F2Vector::zeros(dims[k]))
            .collect();
        Self::from_lower_blocks(dims, &lower)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factor_count(&self) -> usize {
        self.dims.len()
    }

    pub fn block(&self, k: usize, j: usize) -> &F2Vector {
        &self.blocks[k][j]
    }

    pub fn lower_blocks(&self) -> Vec<F2Vector> {
        let m = self.dims.len();
        (1..m)
            .flat_map(|k| (0..k).map(move |j| (k, j)))
            .map(|(k, j)| self.blocks[k][j].clone())
            .collect()
    }

    /// Concatenated bits of the strictly lower blocks, e.g. `"100"` for `M^3(1,0,0)`.
    pub fn lower_bits(&self) -> String {
        self.lower_blocks().iter().map(|b| b.to_string()).collect()
    }

    pub fn is_normal_form(&self) -> bool {
        let m = self.dims.len();
        (0..m).all(|k| {
            (0..m).all(|j| {
                let b = &self.blocks[k][j];
                match j.cmp(&k) {
                    std::cmp::Ordering::Equal => b.count_ones() == b.len(),
                    std::cmp::Ordering::Greater => b.is_zero(),
                    std::cmp::Ordering::Less => true,
                }
            })
        })
    }

    /// True iff every strictly lower block vanishes, i.e. the manifold is a
    /// product of real projective spaces.
    pub fn is_projective_product(&self) -> bool {
        let m = self.dims.len();
        (1..m).all(|k| (0..k).all(|j| self.blocks[k][j].is_zero()))
    }

    pub fn polytope(&self) -> SimplePolytope {
        SimplePolytope::product_of_simplices(&self.dims).expect("dims validated on construction")
    }

    /// `F_i^j -> e_{N_{j-1}+i}` for `1 <= i <= n_j` and `F_0^j -> alpha_j`.
    pub fn to_characteristic(&self) -> CharacteristicFunction {
        let n: usize = self.dims.iter().sum();
        let m = self.dims.len();
        let mut vectors = vec![F2Vector::zeros(n); n + m];
        for (i, v) in vectors.iter_mut().enumerate().take(n) {
            v.set(i, true);
        }
        for (j, facets) in factor_facet_indices(&self.dims).iter().enumerate() {
            let alpha = (0..m).fold(F2Vector::zeros(0), |acc, k| acc.concat(&self.blocks[k][j]));
            vectors[facets[0]] = alpha;
        }
        CharacteristicFunction { n, vectors }
    }

    fn permuted(&self, perm: &[usize]) -> BottMatrix {
        BottMatrix {
            dims: perm.iter().map(|&p| self.dims[p]).collect(),
            blocks: perm
                .iter()
                .map(|&pk| perm.iter().map(|&pj| self.blocks[pk][pj].clone()).collect())
                .collect(),
        }
    }

    /// Searches the factor orderings (lexicographically, identity first) for
    /// one under which the simultaneous block permutation is unipotent lower
    /// triangular. Returns the reordered matrix and the permutation, where
    /// position `i` of the result holds factor `perm[i]` of the input.
    pub fn normalize(&self) -> Result<(BottMatrix, Vec<usize>), CharError> {
        let polytope = self.polytope();
        if let Validation::Violation(s) = validate_characteristic(&polytope, &self.to_characteristic())? {
            return Err(CharError::InvalidInduced(s));
        }
        let m = self.dims.len();
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            let candidate = self.permuted(&perm);
            if candidate.is_normal_form() {
                return Ok((candidate, perm));
            }
            if !next_permutation(&mut perm) {
                return Err(CharError::NoNormalForm);
            }
        }
    }
}

impl fmt::Debug for BottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BottMatrix(dims={:?}, lower={})", self.dims, self.lower_bits())
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists by choice of i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Number of free bits in a normal-form Bott matrix: `sum_{j<k} n_k`.
pub fn lower_bit_count(dims: &[usize]) -> usize {
    dims.iter().enumerate().map(|(k, &nk)| k * nk).sum()
}

/// All normal-form Bott matrices over a product of simplices, indexed so that
/// ascending index means ascending bit string of the lower blocks.
#[derive(Clone, Debug)]
pub struct BottEnumeration {
    dims: Vec<usize>,
    bits: usize,
    next: u64,
    end: u64,
}

pub fn enumerate_bott(dims: &[usize], budget: u64) -> Result<BottEnumeration, CharError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(ComplexError::BadFactorDims.into());
    }
    let bits = lower_bit_count(dims);
    if bits >= 63 || (1u64 << bits) > budget {
        return Err(CharError::BudgetExceeded { bits, budget });
    }
    Ok(BottEnumeration {
        dims: dims.to_vec(),
        bits,
        next: 0,
        end: 1u64 << bits,
    })
}

impl BottEnumeration {
    pub fn total(&self) -> u64 {
        1u64 << self.bits
    }

    /// The matrix at `index`; bit `bits-1-t` of `index` is the `t`-th lower bit.
    pub fn get(&self, index: u64) -> BottMatrix {
        assert!(index < self.total());
        let m = self.dims.len();
        let mut t = 0;
        let mut lower = Vec::new();
        for k in 1..m {
            for _ in 0..k {
                let mut b = F2Vector::zeros(self.dims[k]);
                for i in 0..self.dims[k] {
                    if index >> (self.bits - 1 - t) & 1 == 1 {
                        b.set(i, true);
                    }
                    t += 1;
                }
                lower.push(b);
            }
        }
        BottMatrix::from_lower_blocks(&self.dims, &lower).expect("shapes are consistent")
    }

    /// Restricts the stream to indices `start..end` for partitioned sweeps.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.next = start.min(self.total());
        self.end = end.min(self.total());
        self
    }
}

impl Iterator for BottEnumeration {
    type Item = BottMatrix;

    fn next(&mut self) -> Option<BottMatrix> {
        if self.next >= self.end {
            return None;
        }
        let b = self.get(self.next);
        self.next += 1;
        Some(b)
    }
}
