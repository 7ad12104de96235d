use rustc_hash::FxHashMap as HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use super::poly::{monomial_count, Monomial, Polynomial};
use super::{CohomologyError, ReducedPresentation};
use crate::f2linalg::{EchelonBasis, F2Matrix, F2Vector};

pub const DEFAULT_MONOMIAL_CAP: u64 = 1_000_000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A finite graded `Z_2`-algebra generated in degree one, presented as
/// `Z_2[y_1..y_s] / (generators)`.
///
/// Each degree has a basis of monomials. The basis of `H^d` is the set of
/// degree-`d` monomials that are not in the span of the relations and the
/// larger monomials, under graded-lex order with `y_1 > y_2 > ...`. Bases are
/// stored in descending order.
///
/// Degree `d` is built from degree `d - 1`: `H^d` is the quotient of
/// `H^{d-1} (x) <y_1..y_s>` by the commutation relations and the degree-`d`
/// generators, so only `dim H^{d-1} * s` candidates are ever row-reduced.
#[derive(Clone, Debug)]
pub struct GradedF2Algebra {
    id: u64,
    num_vars: usize,
    names: Vec<String>,
    top: usize,
    bases: Vec<Vec<Monomial>>,
    // mul_var[d][k][i] = coords of basis_d[k] * y_i in H^{d+1}
    mul_var: Vec<Vec<Vec<F2Vector>>>,
    offsets: Vec<usize>,
    // left multiplication by each global basis element, as V x V matrices,
    // built on first use
    left: OnceLock<Vec<F2Matrix>>,
}

/// A homogeneous class: coordinates over the basis of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    algebra: u64,
    degree: usize,
    coords: F2Vector,
}

impl CohomologyClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &F2Vector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// Outcome of the Poincaré duality and dimension checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalReport {
    pub top_dim: usize,
    /// Rank of the pairing `H^d x H^{n-d} -> H^n`, per degree `d`.
    pub pairing_ranks: Vec<usize>,
    pub total_dim: usize,
    pub expected_total: usize,
    /// Human-readable description of each failed check.
    pub failures: Vec<String>,
}

impl FundamentalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GradedF2Algebra {
    /// Builds all degrees up to `top`, checking that the algebra vanishes in
    /// degree `dim + 1`.
    pub fn build(red: &ReducedPresentation, top: usize, monomial_cap: u64) -> Result<Self, CohomologyError> {
        let n = red.dim;
        if top < n {
            return Err(CohomologyError::TopBelowDimension { top, n });
        }
        let s = red.num_vars();
        let mut by_degree: Vec<Vec<&Polynomial>> = vec![Vec::new(); n + 2];
        for g in &red.generators {
            // generators are products of linear forms, hence homogeneous
            let d = g.homogeneous_degree().expect("generator is homogeneous and nonzero");
            if d <= n + 1 {
                by_degree[d].push(g);
            }
        }

        let mut alg = GradedF2Algebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            num_vars: s,
            names: red.names.clone(),
            top,
            bases: vec![vec![Monomial::one(s)]],
            mul_var: Vec::new(),
            offsets: Vec::new(),
            left: OnceLock::new(),
        };

        let mut memo = HashMap::default();
        for d in 1..=n + 1 {
            let count = monomial_count(s, d);
            if count > monomial_cap {
                return Err(CohomologyError::BudgetExceeded {
                    degree: d,
                    count,
                    cap: monomial_cap,
                });
            }
            let (basis, table) = alg.next_degree(d, &by_degree[d], &mut memo);
            if d == n + 1 && !basis.is_empty() {
                return Err(CohomologyError::NonVanishing {
                    degree: d,
                    dim: basis.len(),
                });
            }
            alg.mul_var.push(table);
            alg.bases.push(basis);
        }
        // H^{n+1} = 0 and the algebra is generated in degree one
        alg.bases.truncate(n + 1);
        while alg.bases.len() <= top {
            alg.mul_var.push(Vec::new());
            alg.bases.push(Vec::new());
        }

        let mut acc = 0;
        for b in &alg.bases {
            alg.offsets.push(acc);
            acc += b.len();
        }
        alg.offsets.push(acc);
        Ok(alg)
    }

    /// Computes the basis of `H^d` and the table `basis_{d-1} * y_i`.
    fn next_degree(
        &self,
        d: usize,
        generators: &[&Polynomial],
        memo: &mut HashMap<Monomial, F2Vector>,
    ) -> (Vec<Monomial>, Vec<Vec<F2Vector>>) {
        let s = self.num_vars;
        let k = self.bases[d - 1].len();
        let dim_c = k * s;
        // Vectors live in C (+) tags: a row (c, t) of the echelon below records
        // that the candidate c equals the tagged combination of chosen basis
        // elements. At most dim_c tags are ever needed.
        let width = 2 * dim_c;
        let place = |coords: &F2Vector, var: usize| {
            let mut v = F2Vector::zeros(width);
            for kk in coords.ones_iter() {
                v.set(kk * s + var, true);
            }
            v
        };

        let mut relations = Vec::new();
        if d >= 2 {
            for row in &self.mul_var[d - 2] {
                for i in 0..s {
                    for j in i + 1..s {
                        let mut v = place(&row[i], j);
                        v.add_assign(&place(&row[j], i));
                        relations.push(v);
                    }
                }
            }
        }
        for g in generators {
            let mut v = F2Vector::zeros(width);
            for mu in g.terms() {
                let last = mu.last_var().expect("positive degree");
                let coords = self.reduce_memo(&mu.div_var(last).unwrap(), memo);
                v.add_assign(&place(&coords, last));
            }
            relations.push(v);
        }

        let mut comb = EchelonBasis::new(width);
        for r in relations {
            comb.insert(r);
        }
        let q = dim_c - comb.dim();
        if q == 0 {
            return (Vec::new(), vec![vec![F2Vector::zeros(0); s]; k]);
        }
        // Non-basis monomials are the smallest terms of relations, and lex order
        // is multiplicative, so they form an ideal and every basis monomial is
        // b * y_i for a basis monomial b one degree lower. Generating each
        // candidate from its last variable lists it once.
        let mut candidates: Vec<(Monomial, usize)> = self.bases[d - 1]
            .iter()
            .enumerate()
            .flat_map(|(kk, b)| {
                let from = b.last_var().unwrap_or(0);
                (from..s).map(move |i| (b.mul(&Monomial::var(s, i)), kk * s + i))
            })
            .collect();
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut basis = Vec::with_capacity(q);
        for (mu, slot) in candidates {
            let mut reduced = comb.reduce(F2Vector::unit(width, slot));
            if reduced.first_one().is_some_and(|i| i < dim_c) {
                // reduced differs from c by a combination of rows already present
                reduced.set(dim_c + basis.len(), true);
                comb.insert(reduced);
                basis.push(mu);
                if basis.len() == q {
                    break;
                }
            }
        }
        debug_assert_eq!(basis.len(), q);

        let table = (0..k)
            .map(|kk| {
                (0..s)
                    .map(|i| {
                        let r = comb.reduce(F2Vector::unit(width, kk * s + i));
                        debug_assert!(r.slice(0, dim_c).is_zero());
                        r.slice(dim_c, dim_c + q)
                    })
                    .collect()
            })
            .collect();
        (basis, table)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, Vec::len)
    }

    /// `dim H^0, .., dim H^top`.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.bases.get(d).map_or(&[], Vec::as_slice)
    }

    /// Largest degree with a nonzero component. Since the algebra is generated
    /// in degree one this is also the cup-length.
    pub fn max_nonzero_degree(&self) -> usize {
        self.bases.iter().rposition(|b| !b.is_empty()).unwrap_or(0)
    }

    /// Normal form of a monomial as coordinates over the basis of its degree.
    pub fn reduce_monomial(&self, mu: &Monomial) -> F2Vector {
        let mut coords = F2Vector::unit(1, 0);
        let mut d = 0;
        for i in mu.factors() {
            if d >= self.mul_var.len() || coords.is_zero() {
                return F2Vector::zeros(self.dim(mu.degree()));
            }
            coords = self.times_var(d, &coords, i);
            d += 1;
        }
        coords
    }

    /// [`Self::reduce_monomial`] with a cache, for use while degrees are
    /// still being added.
    fn reduce_memo(&self, mu: &Monomial, memo: &mut HashMap<Monomial, F2Vector>) -> F2Vector {
        let Some(last) = mu.last_var() else {
            return F2Vector::unit(1, 0);
        };
        if let Some(c) = memo.get(mu) {
            return c.clone();
        }
        let prev = self.reduce_memo(&mu.div_var(last).unwrap(), memo);
        let c = self.times_var(mu.degree() - 1, &prev, last);
        memo.insert(mu.clone(), c.clone());
        c
    }

    fn times_var(&self, d: usize, coords: &F2Vector, i: usize) -> F2Vector {
        let mut out = F2Vector::zeros(self.dim(d + 1));
        for k in coords.ones_iter() {
            out.add_assign(&self.mul_var[d][k][i]);
        }
        out
    }

    pub fn reduce_polynomial(&self, p: &Polynomial) -> Result<CohomologyClass, CohomologyError> {
        let d = p.homogeneous_degree().unwrap_or(0);
        let mut coords = F2Vector::zeros(self.dim(d));
        if d <= self.top {
            for mu in p.terms() {
                coords.add_assign(&self.reduce_monomial(mu));
            }
        }
        Ok(self.class(d.min(self.top + 1), coords))
    }

    fn class(&self, degree: usize, coords: F2Vector) -> CohomologyClass {
        CohomologyClass {
            algebra: self.id,
            degree,
            coords,
        }
    }

    pub fn one(&self) -> CohomologyClass {
        self.class(0, F2Vector::unit(1, 0))
    }

    pub fn zero(&self, degree: usize) -> CohomologyClass {
        let degree = degree.min(self.top + 1);
        self.class(degree, F2Vector::zeros(self.dim(degree)))
    }

    /// The generator `y_i`.
    pub fn var(&self, i: usize) -> CohomologyClass {
        self.class(1, self.reduce_monomial(&Monomial::var(self.num_vars, i)))
    }

    pub fn monomial_class(&self, mu: &Monomial) -> CohomologyClass {
        let d = mu.degree().min(self.top + 1);
        self.class(d, self.reduce_monomial(mu))
    }

    pub fn from_coords(&self, degree: usize, coords: F2Vector) -> Result<CohomologyClass, CohomologyError> {
        if coords.len() != self.dim(degree) {
            return Err(CohomologyError::WrongDegree {
                expected: degree,
                got: coords.len(),
            });
        }
        Ok(self.class(degree, coords))
    }

    fn check(&self, c: &CohomologyClass) -> Result<(), CohomologyError> {
        if c.algebra == self.id {
            Ok(())
        } else {
            Err(CohomologyError::ForeignClass)
        }
    }

    /// Cup product. Products above the top degree are the zero class of
    /// degree `top + 1`.
    pub fn cup(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
        self.check(a)?;
        self.check(b)?;
        let d = a.degree + b.degree;
        if d > self.top {
            return Ok(self.zero(d));
        }
        let mut out = F2Vector::zeros(self.dim(d));
        for k in b.coords.ones_iter() {
            let mut c = a.coords.clone();
            let mut deg = a.degree;
            for i in self.bases[b.degree][k].factors() {
                c = self.times_var(deg, &c, i);
                deg += 1;
            }
            out.add_assign(&c);
        }
        Ok(self.class(d, out))
    }

    pub fn pow(&self, a: &CohomologyClass, e: usize) -> Result<CohomologyClass, CohomologyError> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.cup(&acc, a)?;
        }
        Ok(acc)
    }

    /// Index of the first basis element of degree `d` in the global basis.
    pub fn offset(&self, d: usize) -> usize {
        self.offsets[d.min(self.offsets.len() - 1)]
    }

    /// Degree and in-degree index of a global basis index.
    pub fn locate(&self, g: usize) -> (usize, usize) {
        let d = self.offsets.partition_point(|&o| o <= g) - 1;
        (d, g - self.offsets[d])
    }

    pub fn global_monomial(&self, g: usize) -> &Monomial {
        let (d, k) = self.locate(g);
        &self.bases[d][k]
    }

    /// Coordinates of a class over the global basis.
    pub fn to_global(&self, c: &CohomologyClass) -> F2Vector {
        let mut v = F2Vector::zeros(self.total_dim());
        if c.degree <= self.top {
            let off = self.offsets[c.degree];
            for k in c.coords.ones_iter() {
                v.set(off + k, true);
            }
        }
        v
    }

    fn left_matrix_of(&self, g: usize) -> F2Matrix {
        let v = self.total_dim();
        let (d, k) = self.locate(g);
        let a = self.class(d, F2Vector::unit(self.dim(d), k));
        let cols: Vec<F2Vector> = (0..v)
            .map(|h| {
                let (e, l) = self.locate(h);
                let b = self.class(e, F2Vector::unit(self.dim(e), l));
                self.to_global(&self.cup(&a, &b).expect("own classes"))
            })
            .collect();
        F2Matrix::from_columns(v, &cols)
    }

    /// Matrix of `x -> g * x` on the global basis (entry `[k][h]` is the
    /// coefficient of `b_k` in `b_g * b_h`).
    pub fn left_matrix(&self, g: usize) -> &F2Matrix {
        &self.left_matrices()[g]
    }

    fn left_matrices(&self) -> &[F2Matrix] {
        self.left
            .get_or_init(|| (0..self.total_dim()).map(|g| self.left_matrix_of(g)).collect())
    }

    /// Left multiplication matrix of an arbitrary class.
    pub fn left_matrix_of_class(&self, c: &CohomologyClass) -> Result<F2Matrix, CohomologyError> {
        self.check(c)?;
        let v = self.total_dim();
        let mut m = F2Matrix::zeros(v, v);
        for g in self.to_global(c).ones_iter() {
            m.add_assign(self.left_matrix(g));
        }
        Ok(m)
    }

    pub fn render_monomial(&self, mu: &Monomial) -> String {
        mu.render(&self.names)
    }

    pub fn render_class(&self, c: &CohomologyClass) -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        c.coords
            .ones_iter()
            .map(|k| self.render_monomial(&self.bases[c.degree][k]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_basis(&self, d: usize) -> Vec<String> {
        self.basis(d).iter().map(|m| self.render_monomial(m)).collect()
    }

    /// Checks `dim H^n = 1`, non-degeneracy of the cup pairing into `H^n` in
    /// every degree, and that the total dimension equals `vertex_count`.
    pub fn fundamental_checks(&self, n: usize, vertex_count: usize) -> FundamentalReport {
        let mut failures = Vec::new();
        let top_dim = self.dim(n);
        if top_dim != 1 {
            failures.push(format!("dim H^{n} = {top_dim}, expected 1"));
        }
        // phi[d][k] is the functional b -> <e_k b, [top]> on H^{n-d}, built
        // up one variable at a time from phi[0] = identity on H^n.
        let mut phi: Vec<Vec<F2Vector>> = Vec::new();
        if top_dim == 1 {
            phi.push(vec![F2Vector::unit(1, 0)]);
            for d in 1..=n {
                let rows = self.bases[d]
                    .iter()
                    .map(|mu| {
                        let last = mu.last_var().expect("positive degree");
                        let prev = self.reduce_monomial(&mu.div_var(last).unwrap());
                        let mut psi = F2Vector::zeros(self.dim(n - d + 1));
                        for k in prev.ones_iter() {
                            psi.add_assign(&phi[d - 1][k]);
                        }
                        F2Vector::from_bits(
                            (0..self.dim(n - d)).map(|l| psi.dot(&self.mul_var[n - d][l][last])),
                        )
                    })
                    .collect();
                phi.push(rows);
            }
        }
        let mut pairing_ranks = Vec::new();
        for d in 0..=n {
            let rows = phi.get(d).cloned().unwrap_or_default();
            let rank = F2Matrix::from_rows(self.dim(n - d), rows).rank();
            if rank != self.dim(d) || rank != self.dim(n - d) {
                failures.push(format!(
                    "pairing H^{d} x H^{} -> H^{n} has rank {rank}, dims {} and {}",
                    n - d,
                    self.dim(d),
                    self.dim(n - d)
                ));
            }
            pairing_ranks.push(rank);
        }
        let total_dim = self.total_dim();
        if total_dim != vertex_count {
            failures.push(format!("total dimension {total_dim}, expected {vertex_count}"));
        }
        FundamentalReport {
            top_dim,
            pairing_ranks,
            total_dim,
            expected_total: vertex_count,
            failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::BottMatrix;
    use crate::cohomology::{build_presentation, reduce};

    fn ring(b: &BottMatrix) -> GradedF2Algebra {
        let red = reduce(&build_presentation(&b.polytope(), &b.to_characteristic()).unwrap()).unwrap();
        GradedF2Algebra::build(&red, red.dim, DEFAULT_MONOMIAL_CAP).unwrap()
    }

    fn bott(m: usize, bits: &[u8]) -> GradedF2Algebra {
        ring(&BottMatrix::real_bott(m, bits).unwrap())
    }

    #[test]
    fn projective_spaces() {
        for n in 1..=8 {
            let a = ring(&BottMatrix::projective_product(&[n]).unwrap());
            assert_eq!(a.dims(), vec![1; n + 1]);
            let y = a.var(0);
            assert!(!a.pow(&y, n).unwrap().is_zero());
            assert!(a.pow(&y, n + 1).unwrap().is_zero());
        }
        let a = ring(&BottMatrix::projective_product(&[2]).unwrap());
        assert_eq!(a.render_basis(2), vec!["y1^2"]);
    }

    #[test]
    fn rp3_cups() {
        let a = ring(&BottMatrix::projective_product(&[3]).unwrap());
        let y = a.var(0);
        let y2 = a.cup(&y, &y).unwrap();
        assert_eq!(a.render_class(&a.cup(&y, &y2).unwrap()), "y1^3");
        let z = a.cup(&y2, &y2).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 4);
    }

    #[test]
    fn klein_bottle() {
        let a = bott(2, &[1]);
        assert_eq!(a.dims(), vec![1, 2, 1]);
        assert_eq!(a.render_basis(2), vec!["y1y2"]);
        let (y1, y2) = (a.var(0), a.var(1));
        assert!(a.cup(&y1, &y1).unwrap().is_zero());
        assert_eq!(a.render_class(&a.cup(&y1, &y2).unwrap()), "y1y2");
        assert_eq!(a.render_class(&a.cup(&y2, &y2).unwrap()), "y1y2");
        let rep = a.fundamental_checks(2, 4);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.pairing_ranks, vec![1, 2, 1]);
    }

    #[test]
    fn interval_times_triangle() {
        let lower = [F2Vector::from_u8s(&[1, 1])];
        let b = BottMatrix::from_lower_blocks(&[1, 2], &lower).unwrap();
        let a = ring(&b);
        assert_eq!(a.dims(), vec![1, 2, 2, 1]);
        assert!(a.fundamental_checks(3, 6).passed());
    }

    #[test]
    fn m3_100_basis() {
        let a = bott(3, &[1, 0, 0]);
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
        assert_eq!(a.render_basis(2), vec!["y1y2", "y1y3", "y2y3"]);
        assert_eq!(a.render_basis(3), vec!["y1y2y3"]);
        let y2 = a.var(1);
        assert_eq!(a.render_class(&a.cup(&y2, &y2).unwrap()), "y1y2");
    }

    #[test]
    fn m4_total_dimension() {
        let a = bott(4, &[1, 1, 0, 1, 1, 0]);
        let rep = a.fundamental_checks(4, 16);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(a.max_nonzero_degree(), 4);
    }

    #[test]
    fn foreign_classes_are_rejected() {
        let a = bott(2, &[0]);
        let b = bott(2, &[0]);
        assert_eq!(a.cup(&a.var(0), &b.var(0)), Err(CohomologyError::ForeignClass));
    }

    #[test]
    fn unit_law_and_padding() {
        let red = {
            let b = BottMatrix::real_bott(2, &[1]).unwrap();
            reduce(&build_presentation(&b.polytope(), &b.to_characteristic()).unwrap()).unwrap()
        };
        let a = GradedF2Algebra::build(&red, 4, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(a.dims(), vec![1, 2, 1, 0, 0]);
        let x = a.var(1);
        assert_eq!(a.cup(&a.one(), &x).unwrap(), x);
        assert!(a.cup(&x, &a.monomial_class(&Monomial::from_exponents(vec![1, 1]))).unwrap().is_zero());
        assert_eq!(
            GradedF2Algebra::build(&red, 1, DEFAULT_MONOMIAL_CAP).unwrap_err(),
            CohomologyError::TopBelowDimension { top: 1, n: 2 }
        );
    }
}
