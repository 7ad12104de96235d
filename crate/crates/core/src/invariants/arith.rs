//! Integer helpers for the dimension-dependent lower bounds.

/// The unique `r` with `n <= 2^r - 1 < 2n`.
pub fn r_of(n: usize) -> usize {
    assert!(n >= 1, "r_of needs n >= 1");
    // 2^r - 1 >= n  <=>  2^r > n
    (usize::BITS - n.leading_zeros()) as usize
}

/// Whether `C(n, i)` is even for every `0 < i < n`.
///
/// By Lucas, `C(n, i)` is odd iff the bits of `i` are a subset of the bits of
/// `n`, so all middle coefficients are even iff `n` has a single set bit.
pub fn in_s(n: usize) -> bool {
    assert!(n >= 1, "in_s needs n >= 1");
    (1..n).all(|i| i & n != i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    /// Which of the four case hypotheses hold, numbered 1 to 4.
    pub cases: Vec<u8>,
    /// Best lower bound on TC implied by the applicable cases.
    pub bound: Option<usize>,
}

/// Case hypotheses for a non-product small cover over `Δ^{n1} x Δ^{n2}`.
///
/// 1. `n2 ∈ S`, `n2 > n1`: bound `2^{r1} + 2^{r2} - 1`.
/// 2. `n2 ∈ S`, `n2 | n1`: bound `2^r`, `r = r_of(n1 + n2)`.
/// 3. `n2 - 1 ∈ S`, `n2 > n1 + 1`: bound `2^r`.
/// 4. `n2 - 2 ∈ S`, `n2 > n1 + 2`: bound `2^r`.
pub fn tc_case_classifier(n1: usize, n2: usize) -> CaseReport {
    assert!(n1 >= 1 && n2 >= 1);
    let r = r_of(n1 + n2);
    let mut cases = Vec::new();
    let mut bound: Option<usize> = None;
    let mut take = |case: u8, b: usize| {
        cases.push(case);
        bound = Some(bound.map_or(b, |x| x.max(b)));
    };
    if in_s(n2) && n2 > n1 {
        take(1, (1 << r_of(n1)) + (1 << r_of(n2)) - 1);
    }
    if in_s(n2) && n1.is_multiple_of(n2) {
        take(2, 1 << r);
    }
    if n2 > 1 && in_s(n2 - 1) && n2 > n1 + 1 {
        take(3, 1 << r);
    }
    if n2 > 2 && in_s(n2 - 2) && n2 > n1 + 2 {
        take(4, 1 << r);
    }
    CaseReport { cases, bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial_parity_table(n: usize) -> bool {
        // Pascal's triangle mod 2
        let mut row = vec![true];
        for _ in 0..n {
            let mut next = vec![true; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] ^ row[i];
            }
            row = next;
        }
        row[1..n].iter().all(|&odd| !odd)
    }

    #[test]
    fn r_of_examples() {
        assert_eq!(r_of(3), 2);
        assert_eq!(r_of(4), 3);
        assert_eq!(r_of(1), 1);
        for n in 1..=1_000_000usize {
            let r = r_of(n);
            assert!(n < (1 << r) && (1 << r) - 1 < 2 * n);
            let candidates = (0..40).filter(|&r| n < (1usize << r) && (1usize << r) - 1 < 2 * n);
            if n % 9973 == 0 {
                assert_eq!(candidates.count(), 1);
            }
        }
    }

    #[test]
    fn in_s_matches_pascal() {
        assert!(in_s(4));
        assert!(!in_s(3));
        assert!(!in_s(6));
        for n in 1..=64 {
            assert_eq!(in_s(n), binomial_parity_table(n), "n = {n}");
            assert_eq!(in_s(n), n.is_power_of_two());
        }
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(tc_case_classifier(1, 2), CaseReport { cases: vec![1], bound: Some(5) });
        let c = tc_case_classifier(2, 2);
        assert!(c.cases.contains(&2));
        assert_eq!(c.bound, Some(8));
        let c = tc_case_classifier(1, 3);
        assert!(c.cases.contains(&3));
        assert_eq!(c.bound, Some(8));
        assert_eq!(tc_case_classifier(3, 1).cases, vec![2]);
        assert_eq!(tc_case_classifier(2, 3).cases, Vec::<u8>::new());
    }
}
