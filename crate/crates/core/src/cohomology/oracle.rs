//! Brute-force quotient dimensions, kept deliberately naive.
//!
//! Every product `mu * g` of a monomial with a generator is written out over
//! all monomials of its degree, in reverse-lexicographic order, and the whole
//! span is row-reduced with plain Gaussian elimination on `Vec<bool>` rows. It
//! shares nothing with [`GradedF2Algebra`](super::GradedF2Algebra) except the
//! polynomial type.

use std::collections::HashMap;

use super::poly::{Monomial, Polynomial};

fn monomials(vars: usize, d: usize) -> Vec<Vec<u8>> {
    if vars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(vars - 1, d - e) {
            rest.push(e as u8);
            out.push(rest);
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim` of each degree `0 ..= top` of `Z_2[y_1..y_vars] / (generators)`.
pub fn quotient_dims(vars: usize, generators: &[Polynomial], top: usize) -> Vec<usize> {
    (0..=top)
        .map(|d| {
            let mut cols = monomials(vars, d);
            // reverse lexicographic: compare exponent vectors from the last variable
            cols.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
            let index: HashMap<Vec<u8>, usize> =
                cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for g in generators {
                let Some(gd) = g.homogeneous_degree() else { continue };
                if gd > d {
                    continue;
                }
                for mu in monomials(vars, d - gd) {
                    let mu = Polynomial::monomial(Monomial::from_exponents(mu));
                    let mut row = vec![false; cols.len()];
                    for t in mu.mul(g).terms() {
                        row[index[t.exponents()]] ^= true;
                    }
                    rows.push(row);
                }
            }
            cols.len() - rank(rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_ring() {
        let g = Polynomial::monomial(Monomial::from_exponents(vec![3]));
        assert_eq!(quotient_dims(1, &[g], 4), vec![1, 1, 1, 0, 0]);
    }

    #[test]
    fn klein_relations() {
        let y = |e: &[u8]| Monomial::from_exponents(e.to_vec());
        let g1 = Polynomial::monomial(y(&[2, 0]));
        let g2 = Polynomial::monomial(y(&[1, 1])).add(&Polynomial::monomial(y(&[0, 2])));
        assert_eq!(quotient_dims(2, &[g1, g2], 3), vec![1, 2, 1, 0]);
    }
}
