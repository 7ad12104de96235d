//! Monomials and polynomials over `Z_2`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Exponent vector of a monomial in `y_1, .., y_s`.
///
/// Ordered graded-lexicographically with `y_1 > y_2 > ... > y_s`: higher total
/// degree first, then larger exponent of `y_1`, then of `y_2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u8>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Highest-index variable occurring in the monomial.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// `self / y_i`, if `y_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Variables with multiplicity, in increasing index order.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// Parses the default rendering (`1`, `y2`, `y1y3^2`) over `vars`
    /// variables named `y1 ..`.
    pub fn parse(text: &str, vars: usize) -> Option<Monomial> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut e = vec![0u8; vars];
        if text == "1" {
            return Some(Monomial(e));
        }
        let mut rest = text.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix('y')?;
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let idx: usize = rest[..end].parse().ok()?;
            rest = &rest[end..];
            let mut power = 1u8;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                power = r[..end].parse().ok()?;
                rest = &r[end..];
            }
            if idx == 0 || idx > vars {
                return None;
            }
            e[idx - 1] = e[idx - 1].checked_add(power)?;
        }
        Some(Monomial(e))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push_str(&names[i]),
                e => out.push_str(&format!("{}^{e}", names[i])),
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.0.len());
        write!(f, "{}", self.render(&names))
    }
}

/// Variable names `y1, .., ys`.
pub fn default_names(vars: usize) -> Vec<String> {
    (1..=vars).map(|i| format!("y{i}")).collect()
}

/// All monomials of degree `d` in `vars` variables, in descending grlex order.
pub fn monomials_of_degree(vars: usize, d: usize) -> Vec<Monomial> {
    MonomialsOfDegree::new(vars, d).collect()
}

/// Lazy version of [`monomials_of_degree`].
pub struct MonomialsOfDegree {
    next: Option<Vec<u8>>,
}

impl MonomialsOfDegree {
    pub fn new(vars: usize, d: usize) -> Self {
        let next = match vars {
            0 if d == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut e = vec![0u8; vars];
                e[0] = d as u8;
                Some(e)
            }
        };
        Self { next }
    }
}

impl Iterator for MonomialsOfDegree {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let e = self.next.take()?;
        let vars = e.len();
        // lex predecessor: move one unit from the last movable slot to its right
        if vars >= 2 {
            if let Some(i) = (0..vars - 1).rev().find(|&i| e[i] > 0) {
                let mut n = e.clone();
                let rest: u8 = n[i + 1..].iter().sum();
                n[i] -= 1;
                n[i + 1..].iter_mut().for_each(|x| *x = 0);
                n[i + 1] = rest + 1;
                self.next = Some(n);
            }
        }
        Some(Monomial(e))
    }
}

/// Number of monomials of degree `d` in `vars` variables, saturating.
pub fn monomial_count(vars: usize, d: usize) -> u64 {
    if vars == 0 {
        return u64::from(d == 0);
    }
    // C(d + vars - 1, vars - 1)
    let k = (vars - 1) as u64;
    let n = (d + vars - 1) as u64;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A polynomial over `Z_2`, stored as its set of monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.toggle(m);
        p
    }

    /// The linear form `sum_{i in support} y_i`.
    pub fn linear(vars: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for i in support {
            p.toggle(Monomial::var(vars, i));
        }
        p
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grlex order.
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for m in &other.terms {
            p.toggle(m.clone());
        }
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut p = Polynomial::zero();
        for a in &self.terms {
            for b in &other.terms {
                p.toggle(a.mul(b));
            }
        }
        p
    }

    /// Degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|m| m.render(names))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.terms.iter().next().map_or(0, Monomial::vars);
        write!(f, "{}", self.render(&default_names(vars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let m = |e: &[u8]| Monomial::from_exponents(e.to_vec());
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        let all = monomials_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(all[0], m(&[2, 0, 0]));
    }

    #[test]
    fn parse_inverts_render() {
        let names = default_names(4);
        for d in 0..4 {
            for m in monomials_of_degree(4, d) {
                assert_eq!(Monomial::parse(&m.render(&names), 4), Some(m));
            }
        }
        assert_eq!(Monomial::parse("y5", 4), None);
        assert_eq!(Monomial::parse("y1x2", 4), None);
        assert_eq!(Monomial::parse("y1 y2", 2), Monomial::parse("y1y2", 2));
    }

    #[test]
    fn counts_match_enumeration() {
        for vars in 0..5 {
            for d in 0..7 {
                let all = monomials_of_degree(vars, d);
                assert_eq!(all.len() as u64, monomial_count(vars, d));
                assert!(all.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn klein_generator_expansion() {
        // x_2 = y1 + y2, generator x_2 y2 = y1y2 + y2^2
        let x2 = Polynomial::linear(2, [0, 1]);
        let y2 = Polynomial::linear(2, [1]);
        let g = x2.mul(&y2);
        assert_eq!(g.render(&default_names(2)), "y1y2 + y2^2");
        assert_eq!(g.homogeneous_degree(), Some(2));
        // characteristic two: (y1 + y2)^2 = y1^2 + y2^2
        assert_eq!(x2.mul(&x2).render(&default_names(2)), "y1^2 + y2^2");
    }
}
