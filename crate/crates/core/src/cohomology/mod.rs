//! Mod-2 cohomology of small covers.
//!
//! `H*(M; Z_2) = Z_2[v_1..v_r] / (I + J)` where `I` is the Stanley-Reisner
//! ideal of the dual complex and `J` is generated by the `n` linear forms
//! read off the characteristic matrix. [`reduce`] eliminates `n` variables
//! through `J`, leaving a quotient of a polynomial ring in `r - n` degree-one
//! generators, and [`GradedF2Algebra`] computes that quotient degree by degree.

mod algebra;
pub mod oracle;
pub mod poly;
mod tensor;

pub use algebra::{CohomologyClass, FundamentalReport, GradedF2Algebra, DEFAULT_MONOMIAL_CAP};
pub use tensor::{TensorClass, TensorSquare};

use thiserror::Error;

use crate::charfun::{validate_characteristic, CharError, CharacteristicFunction, Validation};
use crate::complexes::{PolytopeStructure, SimplePolytope};
use crate::f2linalg::{F2Matrix, F2Vector};
use poly::{Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("characteristic function is not valid: facets {0:?} carry dependent vectors")]
    InvalidCharacteristic(Vec<usize>),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("linear forms have rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("degree {degree} has {count} monomials, over the cap of {cap}")]
    BudgetExceeded { degree: usize, count: u64, cap: u64 },
    #[error("requested top degree {top} is below the dimension {n}")]
    TopBelowDimension { top: usize, n: usize },
    #[error("H^{degree} has dimension {dim}, but a small cover has no cohomology above its dimension")]
    NonVanishing { degree: usize, dim: usize },
    #[error("classes belong to different algebras")]
    ForeignClass,
    #[error("expected a class of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
}

/// The face-ring presentation before elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DJPresentation {
    pub dim: usize,
    pub facet_count: usize,
    /// Square-free monomials `v_{s_1} .. v_{s_l}`, one per minimal non-face.
    pub monomial_ideal: Vec<Vec<usize>>,
    /// Row `i` of the characteristic matrix: the form `sum_k lambda(F_k)_i v_k`.
    pub linear_forms: Vec<F2Vector>,
    /// Whether the polytope is a product of simplices.
    pub product_dims: Option<Vec<usize>>,
}

pub fn build_presentation(
    polytope: &SimplePolytope,
    lambda: &CharacteristicFunction,
) -> Result<DJPresentation, CohomologyError> {
    if let Validation::Violation(s) = validate_characteristic(polytope, lambda)? {
        return Err(CohomologyError::InvalidCharacteristic(s));
    }
    Ok(DJPresentation {
        dim: polytope.dim(),
        facet_count: polytope.facet_count(),
        monomial_ideal: polytope.minimal_nonfaces(),
        linear_forms: lambda.matrix().into_rows(),
        product_dims: match polytope.structure() {
            PolytopeStructure::ProductOfSimplices(d) => Some(d.clone()),
            PolytopeStructure::General => None,
        },
    })
}

impl DJPresentation {
    /// Name of the facet variable `i` (0-based): `x{i+1}`.
    pub fn facet_name(i: usize) -> String {
        format!("x{}", i + 1)
    }

    pub fn render_monomial_ideal(&self) -> Vec<String> {
        self.monomial_ideal
            .iter()
            .map(|s| s.iter().map(|&i| Self::facet_name(i)).collect::<String>())
            .collect()
    }

    pub fn render_linear_forms(&self) -> Vec<String> {
        self.linear_forms
            .iter()
            .map(|f| {
                f.ones_iter()
                    .map(Self::facet_name)
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect()
    }
}

/// The presentation after eliminating `n` facet variables through the linear
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPresentation {
    pub dim: usize,
    /// Facet indices kept as ring generators, ascending.
    pub survivors: Vec<usize>,
    /// Facet indices eliminated, ascending.
    pub eliminated: Vec<usize>,
    /// For every facet, its class as a linear form in the survivors.
    pub facet_forms: Vec<F2Vector>,
    /// Images of the Stanley-Reisner generators, homogeneous.
    pub generators: Vec<Polynomial>,
    /// Printed names of the survivors.
    pub names: Vec<String>,
}

pub fn reduce(pres: &DJPresentation) -> Result<ReducedPresentation, CohomologyError> {
    let n = pres.dim;
    let r = pres.facet_count;
    let forms = F2Matrix::from_rows(r, pres.linear_forms.clone());
    let rank = forms.rank();
    if rank < n {
        return Err(CohomologyError::RankDeficient { rank, n });
    }
    let eliminated = choose_eliminated(pres, &forms).ok_or(CohomologyError::RankDeficient { rank, n })?;
    let survivors: Vec<usize> = (0..r).filter(|i| !eliminated.contains(i)).collect();
    let s = survivors.len();

    // J says L_E v_E = L_S v_S (signs vanish), so v_E = L_E^{-1} L_S v_S.
    let cols = |idx: &[usize]| {
        F2Matrix::from_columns(n, &idx.iter().map(|&i| forms.column(i)).collect::<Vec<_>>())
    };
    let inv = cols(&eliminated).inverse().expect("chosen minor is invertible");
    let subst = inv.mul(&cols(&survivors));

    let mut facet_forms = vec![F2Vector::zeros(s); r];
    for (k, &i) in survivors.iter().enumerate() {
        facet_forms[i] = F2Vector::unit(s, k);
    }
    for (row, &i) in eliminated.iter().enumerate() {
        facet_forms[i] = subst.row(row).clone();
    }

    let generators = pres
        .monomial_ideal
        .iter()
        .map(|face| {
            face.iter().fold(Polynomial::monomial(Monomial::one(s)), |acc, &i| {
                acc.mul(&Polynomial::linear(s, facet_forms[i].ones_iter()))
            })
        })
        .collect();

    let names = (1..=s).map(|k| format!("y{k}")).collect();
    Ok(ReducedPresentation {
        dim: n,
        survivors,
        eliminated,
        facet_forms,
        generators,
        names,
    })
}

/// For products of simplices the first `n` facets (`F_i^j`, `i >= 1`), keeping
/// `y_j = x_{n+j}`. Otherwise the lexicographically first maximal simplex of
/// the dual whose minor is invertible; for a valid characteristic function
/// that is simply the first maximal simplex.
fn choose_eliminated(pres: &DJPresentation, forms: &F2Matrix) -> Option<Vec<usize>> {
    let n = pres.dim;
    let invertible = |idx: &[usize]| {
        let cols: Vec<F2Vector> = idx.iter().map(|&i| forms.column(i)).collect();
        F2Matrix::from_columns(n, &cols).rank() == n
    };
    if pres.product_dims.is_some() {
        let first: Vec<usize> = (0..n).collect();
        if invertible(&first) {
            return Some(first);
        }
    }
    // maximal simplices of the dual are the facet sets of size n with no
    // minimal non-face inside; enumerate n-subsets lexicographically
    let r = pres.facet_count;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let is_face = pres
            .monomial_ideal
            .iter()
            .all(|g| !g.iter().all(|v| subset.contains(v)));
        if is_face && invertible(&subset) {
            return Some(subset);
        }
        // next n-subset of 0..r in lex order
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] < r - n + i {
                subset[i] += 1;
                for k in i + 1..n {
                    subset[k] = subset[k - 1] + 1;
                }
                break;
            }
        }
    }
}

impl ReducedPresentation {
    pub fn num_vars(&self) -> usize {
        self.survivors.len()
    }

    /// The class of facet `i` as a polynomial in the survivors.
    pub fn facet_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::linear(self.num_vars(), self.facet_forms[i].ones_iter())
    }

    /// Substitutions `x_i = ...` for the eliminated facets.
    pub fn render_substitution(&self) -> Vec<String> {
        self.eliminated
            .iter()
            .map(|&i| {
                format!(
                    "{} = {}",
                    DJPresentation::facet_name(i),
                    self.facet_polynomial(i).render(&self.names)
                )
            })
            .collect()
    }

    pub fn render_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(&self.names)).collect()
    }

    /// Which facet each survivor variable stands for, e.g. `y1 = x4`.
    pub fn render_survivors(&self) -> Vec<String> {
        self.survivors
            .iter()
            .zip(&self.names)
            .map(|(&i, name)| format!("{name} = {}", DJPresentation::facet_name(i)))
            .collect()
    }
}

/// Presentation, reduction and graded algebra in one step.
pub fn cohomology_ring(
    polytope: &SimplePolytope,
    lambda: &CharacteristicFunction,
) -> Result<(ReducedPresentation, GradedF2Algebra), CohomologyError> {
    let pres = build_presentation(polytope, lambda)?;
    let red = reduce(&pres)?;
    let alg = GradedF2Algebra::build(&red, red.dim, DEFAULT_MONOMIAL_CAP)?;
    Ok((red, alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::BottMatrix;
    use crate::complexes::SimplicialComplex;

    fn bott(m: usize, bits: &[u8]) -> (SimplePolytope, CharacteristicFunction) {
        let b = BottMatrix::real_bott(m, bits).unwrap();
        (b.polytope(), b.to_characteristic())
    }

    #[test]
    fn rp2_presentation() {
        let b = BottMatrix::projective_product(&[2]).unwrap();
        let pres = build_presentation(&b.polytope(), &b.to_characteristic()).unwrap();
        assert_eq!(pres.render_monomial_ideal(), vec!["x1x2x3"]);
        assert_eq!(pres.render_linear_forms(), vec!["x1 + x3", "x2 + x3"]);
    }

    #[test]
    fn interval_times_triangle_ideal() {
        let lower = [F2Vector::from_u8s(&[1, 0])];
        let b = BottMatrix::from_lower_blocks(&[1, 2], &lower).unwrap();
        let pres = build_presentation(&b.polytope(), &b.to_characteristic()).unwrap();
        assert_eq!(pres.render_monomial_ideal(), vec!["x1x4", "x2x3x5"]);
    }

    #[test]
    fn square_ideal_pairs_opposite_facets() {
        let (p, l) = bott(2, &[0]);
        let pres = build_presentation(&p, &l).unwrap();
        assert_eq!(pres.render_monomial_ideal(), vec!["x1x3", "x2x4"]);
    }

    #[test]
    fn invalid_lambda_is_rejected() {
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        let v = |b: &[u8]| F2Vector::from_u8s(b);
        let l = CharacteristicFunction::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 0])]).unwrap();
        assert_eq!(
            build_presentation(&p, &l),
            Err(CohomologyError::InvalidCharacteristic(vec![0, 3]))
        );
    }

    #[test]
    fn reduced_generators() {
        for n in 1..=5 {
            let b = BottMatrix::projective_product(&[n]).unwrap();
            let red = reduce(&build_presentation(&b.polytope(), &b.to_characteristic()).unwrap()).unwrap();
            assert_eq!(red.survivors, vec![n]);
            assert_eq!(red.render_generators(), vec![format!("y1^{}", n + 1)]);
        }

        let (p, l) = bott(2, &[1]);
        let red = reduce(&build_presentation(&p, &l).unwrap()).unwrap();
        assert_eq!(red.render_substitution(), vec!["x1 = y1", "x2 = y1 + y2"]);
        assert_eq!(red.render_generators(), vec!["y1^2", "y1y2 + y2^2"]);

        let (p, l) = bott(3, &[1, 0, 0]);
        let red = reduce(&build_presentation(&p, &l).unwrap()).unwrap();
        assert_eq!(red.render_substitution(), vec!["x1 = y1", "x2 = y1 + y2", "x3 = y3"]);
        assert_eq!(red.render_generators(), vec!["y1^2", "y1y2 + y2^2", "y3^2"]);
    }

    #[test]
    fn m4_substitutions_match_displayed_relations() {
        // x_4 = y1 + y2 + y4 for M^4(1,1,0,1,1,0)
        let (p, l) = bott(4, &[1, 1, 0, 1, 1, 0]);
        let red = reduce(&build_presentation(&p, &l).unwrap()).unwrap();
        assert_eq!(
            red.render_substitution(),
            vec!["x1 = y1", "x2 = y1 + y2", "x3 = y1 + y3", "x4 = y1 + y2 + y4"]
        );
    }

    #[test]
    fn general_polytope_elimination() {
        // square given only by its dual 4-cycle, facets 0,1,2,3 in cyclic order
        let k = SimplicialComplex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let p = SimplePolytope::from_dual(2, k).unwrap();
        let v = |b: &[u8]| F2Vector::from_u8s(b);
        let l = CharacteristicFunction::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 0]), v(&[0, 1])]).unwrap();
        let red = reduce(&build_presentation(&p, &l).unwrap()).unwrap();
        assert_eq!(red.eliminated, vec![0, 1]);
        assert_eq!(red.survivors, vec![2, 3]);
        assert_eq!(red.render_survivors(), vec!["y1 = x3", "y2 = x4"]);
        assert_eq!(red.render_generators(), vec!["y1^2", "y2^2"]);
    }
}
