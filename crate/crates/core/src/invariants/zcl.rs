//! Certified lower bounds for zero-divisor and norm cup-lengths.
//!
//! A search fixes a list of candidate factors in `H* (x) H*` and walks
//! exponent vectors depth first in lexicographic order, multiplying factors in
//! one at a time and pruning as soon as the running product vanishes. The
//! longest nonzero product wins; among equally long ones the lexicographically
//! smallest exponent vector is kept.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{GradedF2Algebra, TensorClass, TensorSquare};
use crate::f2linalg::{F2Matrix, F2Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Products of `bar(y_j)` only.
    Generators,
    /// Products of `bar(u)` for every nonzero degree-one `u`.
    Linear,
    /// Products of a spanning set of the whole ideal (zcl) or of all norm
    /// elements (norm cup-length).
    Full,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Generators => "generators",
            Strategy::Linear => "linear",
            Strategy::Full => "full",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generators" => Ok(Strategy::Generators),
            "linear" => Ok(Strategy::Linear),
            "full" => Ok(Strategy::Full),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub strategy: Strategy,
    /// Per-factor exponent cap; `None` means `2n`.
    pub exponent_cap: Option<usize>,
    /// Maximum number of tensor products evaluated.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Generators,
            exponent_cap: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// One factor type of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `1 (x) u + u (x) 1`, `u` given by its coordinates in `H^1`.
    Bar(F2Vector),
    /// `(b_i (x) 1) * (1 (x) b_j + b_j (x) 1)` on global basis indices.
    Kernel { left: usize, right: usize },
    /// `b_i (x) b_j + b_j (x) b_i` on global basis indices.
    Norm { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub label: String,
    pub exponent: usize,
}

/// A nonzero product of zero-divisors together with one surviving term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub factors: Vec<Factor>,
    /// Global basis indices `(i, j)` of the witness term `b_i (x) b_j`.
    pub witness: (usize, usize),
    pub witness_text: String,
    pub length: usize,
}

impl Certificate {
    pub fn product_text(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| {
                if f.exponent == 1 {
                    f.label.clone()
                } else {
                    format!("{}^{}", f.label, f.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// Re-evaluates the product from scratch.
    pub fn evaluate(&self, alg: &GradedF2Algebra) -> TensorClass {
        let t = TensorSquare::new(alg);
        let mut acc = t.one();
        for f in &self.factors {
            let x = factor_element(alg, &t, &f.kind);
            for _ in 0..f.exponent {
                acc = t.mul(&acc, &x);
            }
        }
        acc
    }

    /// Whether the product is nonzero, contains the witness and is a product
    /// of `length` factors.
    pub fn verify(&self, alg: &GradedF2Algebra) -> bool {
        let p = self.evaluate(alg);
        let len: usize = self.factors.iter().map(|f| f.exponent).sum();
        len == self.length && !p.is_zero() && p.contains(self.witness.0, self.witness.1)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} != 0, witness {}", self.product_text(), self.witness_text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub length: usize,
    pub certificate: Option<Certificate>,
    pub strategy: Strategy,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

fn factor_element(alg: &GradedF2Algebra, t: &TensorSquare<'_>, kind: &FactorKind) -> TensorClass {
    match kind {
        FactorKind::Bar(u) => t.bar(&alg.from_coords(1, u.clone()).expect("degree-one coordinates")).unwrap(),
        FactorKind::Kernel { left, right } => {
            let l = t.basis_element(*left, 0);
            let b = t.add(&t.basis_element(0, *right), &t.basis_element(*right, 0));
            t.mul(&l, &b)
        }
        FactorKind::Norm { i, j } => t.add(&t.basis_element(*i, *j), &t.basis_element(*j, *i)),
    }
}

fn render_linear(alg: &GradedF2Algebra, u: &F2Vector) -> String {
    alg.render_class(&alg.from_coords(1, u.clone()).unwrap())
}

fn label(alg: &GradedF2Algebra, kind: &FactorKind) -> String {
    let m = |g: usize| alg.render_monomial(alg.global_monomial(g));
    match kind {
        FactorKind::Bar(u) => format!("bar({})", render_linear(alg, u)),
        FactorKind::Kernel { left, right } if *left == 0 => format!("bar({})", m(*right)),
        FactorKind::Kernel { left, right } => format!("({} (x) 1)bar({})", m(*left), m(*right)),
        FactorKind::Norm { i, j } => format!("N({}, {})", m(*i), m(*j)),
    }
}

/// A factor prepared for the search: multiplication by `bar(u)` has a cheap
/// form, other factors go through the general tensor product.
struct Candidate {
    kind: FactorKind,
    element: TensorClass,
    bar_matrix: Option<F2Matrix>,
}

fn candidates(alg: &GradedF2Algebra, strategy: Strategy, norm: bool) -> Vec<Candidate> {
    let t = TensorSquare::new(alg);
    let s = alg.dim(1);
    let mut kinds = Vec::new();
    match (strategy, norm) {
        (Strategy::Generators, _) => {
            for i in 0..s {
                kinds.push(FactorKind::Bar(F2Vector::unit(s, i)));
            }
        }
        (Strategy::Linear, _) => {
            // nonzero u in H^1, ordered by their bit strings (y1 first)
            for bits in (1u64..1 << s).rev() {
                kinds.push(FactorKind::Bar(F2Vector::from_bits((0..s).map(|i| bits >> (s - 1 - i) & 1 == 1))));
            }
        }
        (Strategy::Full, false) => {
            let v = alg.total_dim();
            for right in 1..v {
                for left in 0..v {
                    kinds.push(FactorKind::Kernel { left, right });
                }
            }
        }
        (Strategy::Full, true) => {
            let v = alg.total_dim();
            for i in 0..v {
                for j in i + 1..v {
                    kinds.push(FactorKind::Norm { i, j });
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    kinds
        .into_iter()
        .filter_map(|kind| {
            let element = factor_element(alg, &t, &kind);
            if element.is_zero() || !seen.insert(element.clone()) {
                return None;
            }
            let bar_matrix = match &kind {
                FactorKind::Bar(u) => Some(alg.left_matrix_of_class(&alg.from_coords(1, u.clone()).unwrap()).unwrap()),
                FactorKind::Kernel { left: 0, right } if alg.locate(*right).0 == 1 => Some(alg.left_matrix(*right).clone()),
                _ => None,
            };
            Some(Candidate {
                kind,
                element,
                bar_matrix,
            })
        })
        .collect()
}

struct Search<'a> {
    alg: &'a GradedF2Algebra,
    tensor: TensorSquare<'a>,
    cands: Vec<Candidate>,
    degrees: Vec<usize>,
    cap: usize,
    max_degree: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best_len: usize,
    best: Option<(Vec<usize>, TensorClass)>,
    exps: Vec<usize>,
}

impl Search<'_> {
    fn times(&mut self, acc: &TensorClass, c: usize) -> Option<TensorClass> {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return None;
        }
        self.nodes += 1;
        let cand = &self.cands[c];
        Some(match &cand.bar_matrix {
            Some(l) => self.tensor.mul_bar(acc, l),
            None => self.tensor.mul(acc, &cand.element),
        })
    }

    fn dfs(&mut self, idx: usize, acc: TensorClass, len: usize, degree: usize) {
        if len > self.best_len {
            self.best_len = len;
            self.best = Some((self.exps.clone(), acc.clone()));
        }
        // the tensor square vanishes above total degree 2n, so a product of
        // more than 2n positive-degree factors is zero
        if idx == self.cands.len() || self.best_len >= self.max_degree || self.exhausted {
            return;
        }
        // exponent zero first keeps the visiting order lexicographic
        self.dfs(idx + 1, acc.clone(), len, degree);
        let mut cur = acc;
        for e in 1..=self.cap {
            if self.exhausted || degree + e * self.degrees[idx] > self.max_degree {
                break;
            }
            match self.times(&cur, idx) {
                Some(next) if !next.is_zero() => cur = next,
                _ => break,
            }
            self.exps[idx] = e;
            self.dfs(idx + 1, cur.clone(), len + e, degree + e * self.degrees[idx]);
            self.exps[idx] = 0;
        }
    }
}

/// Picks the witness term: the most balanced bidegree, the lighter left
/// factor on ties, then the first term in global order.
fn pick_witness(t: &TensorSquare<'_>, p: &TensorClass) -> (usize, usize) {
    p.terms()
        .into_iter()
        .min_by_key(|&(i, j)| {
            let (a, b) = t.bidegree(i, j);
            (a.abs_diff(b), a, i, j)
        })
        .expect("nonzero product")
}

fn run(alg: &GradedF2Algebra, opts: &SearchOptions, norm: bool, seed: Option<&SearchResult>) -> SearchResult {
    let n = alg.max_nonzero_degree();
    let cands = candidates(alg, opts.strategy, norm);
    let degrees = cands
        .iter()
        .map(|c| {
            c.element
                .terms()
                .iter()
                .map(|&(i, j)| alg.locate(i).0 + alg.locate(j).0)
                .min()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    let mut search = Search {
        alg,
        tensor: TensorSquare::new(alg),
        exps: vec![0; cands.len()],
        cands,
        degrees,
        cap: opts.exponent_cap.unwrap_or(2 * n),
        max_degree: 2 * n,
        budget: opts.budget,
        nodes: 0,
        exhausted: false,
        best_len: seed.map_or(0, |s| s.length),
        best: None,
    };
    let one = search.tensor.one();
    search.dfs(0, one, 0, 0);

    let nodes = search.nodes + seed.map_or(0, |s| s.nodes);
    let exhausted = search.exhausted || seed.is_some_and(|s| s.budget_exhausted);
    let certificate = match search.best.take() {
        Some((exps, product)) => {
            let witness = pick_witness(&search.tensor, &product);
            let factors = search
                .cands
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e > 0)
                .map(|(c, &e)| Factor {
                    kind: c.kind.clone(),
                    label: label(search.alg, &c.kind),
                    exponent: e,
                })
                .collect();
            Some(Certificate {
                factors,
                witness,
                witness_text: search.tensor.render_term(witness.0, witness.1),
                length: search.best_len,
            })
        }
        None => seed.and_then(|s| s.certificate.clone()),
    };
    SearchResult {
        length: search.best_len,
        certificate,
        strategy: opts.strategy,
        nodes,
        budget_exhausted: exhausted,
    }
}

fn escalate(alg: &GradedF2Algebra, opts: &SearchOptions, norm: bool) -> SearchResult {
    // each strategy starts from the result of the weaker one, so results are
    // monotone in the strategy
    let mut result: Option<SearchResult> = None;
    for s in [Strategy::Generators, Strategy::Linear, Strategy::Full] {
        if s > opts.strategy {
            break;
        }
        let step = SearchOptions {
            strategy: s,
            ..opts.clone()
        };
        let remaining = opts.budget.saturating_sub(result.as_ref().map_or(0, |r| r.nodes));
        let step = SearchOptions {
            budget: remaining,
            ..step
        };
        result = Some(run(alg, &step, norm, result.as_ref()));
    }
    let mut r = result.expect("at least the generators strategy runs");
    r.strategy = opts.strategy;
    r
}

/// Certified lower bound for the zero-divisor cup-length of `alg`.
pub fn zcl_lower(alg: &GradedF2Algebra, opts: &SearchOptions) -> SearchResult {
    escalate(alg, opts, false)
}

/// Certified lower bound for the cup-length of the subring generated by norm
/// elements. For the `generators` and `linear` strategies the factors are
/// `bar(u)`, which are norm elements, so the result equals [`zcl_lower`].
pub fn norm_cl(alg: &GradedF2Algebra, opts: &SearchOptions) -> SearchResult {
    escalate(alg, opts, true)
}

/// Cup-length of an algebra generated in degree one: its top nonzero degree.
pub fn cup_length(alg: &GradedF2Algebra) -> usize {
    alg.max_nonzero_degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::BottMatrix;
    use crate::cohomology::cohomology_ring;

    fn ring(b: &BottMatrix) -> GradedF2Algebra {
        cohomology_ring(&b.polytope(), &b.to_characteristic()).unwrap().1
    }

    #[test]
    fn rp2_generators() {
        let a = ring(&BottMatrix::projective_product(&[2]).unwrap());
        let r = zcl_lower(&a, &SearchOptions::default());
        assert_eq!(r.length, 3);
        let c = r.certificate.unwrap();
        assert_eq!(c.to_string(), "bar(y1)^3 != 0, witness y1 (x) y1^2");
        assert!(c.verify(&a));
    }

    #[test]
    fn rp1_norm() {
        let a = ring(&BottMatrix::projective_product(&[1]).unwrap());
        let r = norm_cl(&a, &SearchOptions::default());
        assert_eq!(r.length, 1);
        assert_eq!(cup_length(&a), 1);
    }

    #[test]
    fn strategies_are_monotone() {
        let a = ring(&BottMatrix::real_bott(2, &[1]).unwrap());
        let mut last = 0;
        for s in [Strategy::Generators, Strategy::Linear, Strategy::Full] {
            let r = zcl_lower(&a, &SearchOptions { strategy: s, ..Default::default() });
            assert!(r.length >= last);
            assert!(r.length <= 4);
            assert!(r.certificate.unwrap().verify(&a));
            last = r.length;
        }
    }

    #[test]
    fn budget_is_reported() {
        let a = ring(&BottMatrix::real_bott(3, &[1, 0, 1]).unwrap());
        let r = zcl_lower(&a, &SearchOptions { budget: 3, ..Default::default() });
        assert!(r.budget_exhausted);
        assert!(r.nodes <= 3);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::Generators, Strategy::Linear, Strategy::Full] {
            assert_eq!(s.as_str().parse::<Strategy>().unwrap(), s);
        }
        assert!("best".parse::<Strategy>().is_err());
    }
}
