//! The tensor square `H* (x) H*`.
//!
//! An element is a `V x V` matrix over the global basis `b_0 .. b_{V-1}` of
//! `H*`: entry `(i, j)` is the coefficient of `b_i (x) b_j`. Signs vanish mod 2,
//! so `(a (x) b)(c (x) d) = ac (x) bd`.

use super::{CohomologyClass, CohomologyError, GradedF2Algebra};
use crate::f2linalg::{F2Matrix, F2Vector};

pub struct TensorSquare<'a> {
    alg: &'a GradedF2Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorClass {
    coeffs: F2Matrix,
}

impl TensorClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeffs(&self) -> &F2Matrix {
        &self.coeffs
    }

    /// Nonzero terms `(i, j)` in row-major order.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        (0..self.coeffs.rows())
            .flat_map(|i| self.coeffs.row(i).ones_iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.coeffs.get(i, j)
    }
}

impl<'a> TensorSquare<'a> {
    pub fn new(alg: &'a GradedF2Algebra) -> Self {
        Self { alg }
    }

    pub fn algebra(&self) -> &GradedF2Algebra {
        self.alg
    }

    pub fn dim(&self) -> usize {
        let v = self.alg.total_dim();
        v * v
    }

    /// Dimension of the total-degree-`d` component.
    pub fn total_degree_dim(&self, d: usize) -> usize {
        (0..=d).map(|i| self.bidegree_dim(i, d - i)).sum()
    }

    pub fn bidegree_dim(&self, i: usize, j: usize) -> usize {
        self.alg.dim(i) * self.alg.dim(j)
    }

    /// Total dimensions for degrees `0 ..= 2 * top`.
    pub fn total_dims(&self) -> Vec<usize> {
        (0..=2 * self.alg.top_degree()).map(|d| self.total_degree_dim(d)).collect()
    }

    pub fn zero(&self) -> TensorClass {
        let v = self.alg.total_dim();
        TensorClass {
            coeffs: F2Matrix::zeros(v, v),
        }
    }

    pub fn one(&self) -> TensorClass {
        self.basis_element(0, 0)
    }

    pub fn basis_element(&self, i: usize, j: usize) -> TensorClass {
        let mut t = self.zero();
        t.coeffs.set(i, j, true);
        t
    }

    /// `a (x) b`.
    pub fn pure(&self, a: &CohomologyClass, b: &CohomologyClass) -> TensorClass {
        let (ga, gb) = (self.alg.to_global(a), self.alg.to_global(b));
        let v = self.alg.total_dim();
        let rows = (0..v)
            .map(|i| if ga.get(i) { gb.clone() } else { F2Vector::zeros(v) })
            .collect();
        TensorClass {
            coeffs: F2Matrix::from_rows(v, rows),
        }
    }

    /// `1 (x) u + u (x) 1`, the zero-divisor attached to a degree-one class.
    pub fn bar(&self, u: &CohomologyClass) -> Result<TensorClass, CohomologyError> {
        if u.degree() != 1 {
            return Err(CohomologyError::WrongDegree {
                expected: 1,
                got: u.degree(),
            });
        }
        Ok(self.norm(&self.alg.one(), u))
    }

    /// `a (x) b + b (x) a`.
    pub fn norm(&self, a: &CohomologyClass, b: &CohomologyClass) -> TensorClass {
        let mut t = self.pure(a, b);
        t.coeffs.add_assign(&self.pure(b, a).coeffs);
        t
    }

    /// Sum over terms of the left matrix of `b_i` applied on the left, the
    /// right matrix of `b_j` on the right.
    pub fn mul(&self, s: &TensorClass, t: &TensorClass) -> TensorClass {
        let mut out = self.zero();
        for (i, j) in s.terms() {
            let l = self.alg.left_matrix(i);
            let r = self.alg.left_matrix(j).transpose();
            out.coeffs.add_assign(&l.mul(&t.coeffs).mul(&r));
        }
        out
    }

    pub fn pow(&self, t: &TensorClass, e: usize) -> TensorClass {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, t))
    }

    /// Multiplication by `bar(u)` for `u` of degree one, via
    /// `L_u T + T L_u^t`.
    pub fn mul_bar(&self, t: &TensorClass, lu: &F2Matrix) -> TensorClass {
        let mut c = lu.mul(&t.coeffs);
        c.add_assign(&t.coeffs.mul(&lu.transpose()));
        TensorClass { coeffs: c }
    }

    pub fn add(&self, s: &TensorClass, t: &TensorClass) -> TensorClass {
        let mut c = s.coeffs.clone();
        c.add_assign(&t.coeffs);
        TensorClass { coeffs: c }
    }

    /// The multiplication map `H* (x) H* -> H*`, on global coordinates.
    pub fn multiply_out(&self, t: &TensorClass) -> F2Vector {
        let v = self.alg.total_dim();
        let mut out = F2Vector::zeros(v);
        for (i, j) in t.terms() {
            out.add_assign(&self.alg.left_matrix(i).column(j));
        }
        out
    }

    /// Bidegree `(p, q)` of the basis term `b_i (x) b_j`.
    pub fn bidegree(&self, i: usize, j: usize) -> (usize, usize) {
        (self.alg.locate(i).0, self.alg.locate(j).0)
    }

    pub fn render_term(&self, i: usize, j: usize) -> String {
        format!(
            "{} (x) {}",
            self.alg.render_monomial(self.alg.global_monomial(i)),
            self.alg.render_monomial(self.alg.global_monomial(j))
        )
    }

    pub fn render(&self, t: &TensorClass) -> String {
        let terms = t.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|&(i, j)| self.render_term(i, j))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
