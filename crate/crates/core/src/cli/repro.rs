//! The reproduction suite: one row per checked claim, each comparing a
//! computed value against an expected one.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charfun::{enumerate_bott, validate_characteristic, BottMatrix, CharacteristicFunction};
use crate::cohomology::poly::Monomial;
use crate::cohomology::{
    build_presentation, cohomology_ring, oracle, reduce, GradedF2Algebra, TensorClass, TensorSquare,
};
use crate::complexes::{SimplePolytope, SimplicialComplex};
use crate::f2linalg::F2Vector;
use crate::invariants::arith::{r_of, tc_case_classifier};
use crate::invariants::zcl::{zcl_lower, SearchOptions};
use crate::invariants::{bounds_from_algebra, BoundsOptions, BoundsReport};

/// A pure tensor `a (x) b`, written with the default variable names.
pub type Term = [String; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct M3Expectation {
    pub bits: String,
    pub relations: Vec<String>,
    pub dims: Vec<usize>,
    /// Exponents of `bar(y_1) .. bar(y_3)` in the displayed product.
    pub exponents: Vec<usize>,
    pub expansion: Vec<Term>,
    pub witness: Term,
    pub zcl_at_least: usize,
    pub tc: [usize; 2],
    pub tcs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct M4Expectation {
    pub bits: String,
    pub expansion: Vec<Term>,
    pub witness: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RpExpectation {
    pub dims: Vec<usize>,
    pub tc: Option<usize>,
    pub tcd: Option<usize>,
    pub tcs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RzExpectation {
    pub name: String,
    pub value: usize,
}

/// Every expected value the suite compares against. Any field can be
/// overridden from a JSON file; the rest keep their built-in values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Expectations {
    pub rp_max: usize,
    pub m3_100: M3Expectation,
    pub m3_101: M3Expectation,
    pub m4_exponents: Vec<usize>,
    pub m4: Vec<M4Expectation>,
    pub m4_tc: [usize; 2],
    pub m4_tcs: usize,
    pub chain_range: [usize; 2],
    pub chain_n4_tc: [usize; 2],
    pub two_factor_max: usize,
    pub rp_products: Vec<RpExpectation>,
    pub structural_max: usize,
    pub rz: Vec<RzExpectation>,
    pub oracle_max_survivors: usize,
    pub oracle_max_dim: usize,
}

fn term(a: &str, b: &str) -> Term {
    [a.to_string(), b.to_string()]
}

/// `s (x) t + t (x) s` for every `t` in `ts`.
fn symmetric(s: &str, ts: &[&str]) -> Vec<Term> {
    ts.iter().flat_map(|t| [term(s, t), term(t, s)]).collect()
}

impl Default for Expectations {
    fn default() -> Self {
        let top = "y1y2y3y4";
        Self {
            rp_max: 8,
            m3_100: M3Expectation {
                bits: "100".into(),
                relations: vec!["y1^2".into(), "y1y2 + y2^2".into(), "y3^2".into()],
                dims: vec![1, 3, 3, 1],
                exponents: vec![0, 3, 1],
                expansion: vec![
                    term("y1y2", "y2y3"),
                    term("y2y3", "y1y2"),
                    term("y1y2y3", "y2"),
                    term("y2", "y1y2y3"),
                ],
                witness: term("y1y2", "y2y3"),
                zcl_at_least: 4,
                tc: [5, 7],
                tcs: None,
            },
            m3_101: M3Expectation {
                bits: "101".into(),
                relations: Vec::new(),
                dims: vec![1, 3, 3, 1],
                exponents: vec![0, 2, 3],
                expansion: symmetric("y1y2y3", &["y1y2", "y2y3"]),
                witness: term("y1y2", "y1y2y3"),
                zcl_at_least: 5,
                tc: [6, 7],
                tcs: Some(7),
            },
            m4_exponents: vec![0, 1, 3, 3],
            m4: vec![
                M4Expectation {
                    bits: "110110".into(),
                    expansion: symmetric(top, &["y1y2y3", "y1y3y4"]),
                    witness: term("y1y2y3", top),
                },
                M4Expectation {
                    bits: "101110".into(),
                    expansion: symmetric(top, &["y1y2y3", "y2y3y4", "y1y3y4"]),
                    witness: term("y1y2y3", top),
                },
                M4Expectation {
                    bits: "101011".into(),
                    expansion: symmetric(top, &["y1y2y3", "y2y3y4", "y1y2y4"]),
                    witness: term("y1y2y3", top),
                },
                M4Expectation {
                    bits: "101101".into(),
                    expansion: symmetric(top, &["y1y2y4", "y1y3y4"]),
                    witness: term("y1y2y4", top),
                },
                M4Expectation {
                    bits: "111110".into(),
                    expansion: symmetric(top, &["y2y3y4"]),
                    witness: term("y2y3y4", top),
                },
            ],
            m4_tc: [8, 9],
            m4_tcs: 9,
            chain_range: [3, 6],
            chain_n4_tc: [8, 9],
            two_factor_max: 6,
            rp_products: vec![
                RpExpectation {
                    dims: vec![1, 3],
                    tc: Some(5),
                    tcd: Some(5),
                    tcs: None,
                },
                RpExpectation {
                    dims: vec![2, 4],
                    tc: Some(11),
                    tcd: None,
                    tcs: None,
                },
                RpExpectation {
                    dims: vec![1],
                    tc: None,
                    tcd: None,
                    tcs: Some(3),
                },
            ],
            structural_max: 6,
            rz: vec![
                RzExpectation { name: "simplex-1".into(), value: 2 },
                RzExpectation { name: "simplex-2".into(), value: 3 },
                RzExpectation { name: "simplex-3".into(), value: 4 },
                RzExpectation { name: "simplex-4".into(), value: 5 },
                RzExpectation { name: "square".into(), value: 4 },
                RzExpectation { name: "cube".into(), value: 8 },
            ],
            oracle_max_survivors: 3,
            oracle_max_dim: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproRow {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
    pub millis: u128,
}

struct Outcome {
    expected: String,
    computed: String,
    passed: bool,
}

type Check = fn(&Expectations) -> Outcome;

const ROWS: &[(&str, &str, Check)] = &[
    ("rp-rings", "H*(RP^n) = Z_2[y]/(y^{n+1}) for n <= 8", rp_rings),
    ("m3-100", "M^3(1,0,0): relations, product expansion, zcl >= 4, TC in [5,7]", m3_100),
    ("m3-101", "M^3(1,0,1): product witness, TC in [6,7], TC^S = 7", m3_101),
    ("m4", "five M^4 matrices: expansions and witnesses, TC in [8,9], TC^S = 9", m4),
    ("chain", "chain Bott manifolds, 3 <= n <= 6", chain),
    ("two-factor-cases", "two-factor case bounds hold for every non-product matrix", two_factor_cases),
    ("rp-products", "exact values for products of projective spaces", rp_products),
    ("structural", "structural invariants for every Bott matrix with sum n_j <= 6", structural),
    ("equivariant", "equivariant categories equal vertex and maximal-simplex counts", equivariant),
    ("oracle", "graded dimensions agree with the brute-force reducer", oracle_equivalence),
];

/// Identifiers of all rows, in run order.
pub fn row_ids() -> Vec<&'static str> {
    ROWS.iter().map(|r| r.0).collect()
}

/// Runs every row whose identifier contains `filter`.
pub fn run(filter: Option<&str>, exp: &Expectations) -> Vec<ReproRow> {
    ROWS.iter()
        .filter(|(id, _, _)| filter.is_none_or(|f| id.contains(f)))
        .map(|(id, claim, check)| {
            let t = Instant::now();
            let o = check(exp);
            ReproRow {
                id: id.to_string(),
                claim: claim.to_string(),
                expected: o.expected,
                computed: o.computed,
                passed: o.passed,
                millis: t.elapsed().as_millis(),
            }
        })
        .collect()
}

fn outcome(expected: String, computed: String) -> Outcome {
    Outcome {
        passed: expected == computed,
        expected,
        computed,
    }
}

/// Row outcome for a sweep: passes iff nothing failed.
fn sweep(expected: &str, failures: Vec<String>, summary: String) -> Outcome {
    Outcome {
        expected: expected.to_string(),
        passed: failures.is_empty(),
        computed: if failures.is_empty() {
            summary
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    }
}

fn bott_bits(dims: &[usize], bits: &str) -> Option<BottMatrix> {
    let bits: Vec<u8> = bits.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    if bits.iter().any(|&b| b > 1) {
        return None;
    }
    let mut lower = Vec::new();
    let mut rest = bits.as_slice();
    for k in 1..dims.len() {
        for _ in 0..k {
            if rest.len() < dims[k] {
                return None;
            }
            lower.push(F2Vector::from_u8s(&rest[..dims[k]]));
            rest = &rest[dims[k]..];
        }
    }
    if !rest.is_empty() {
        return None;
    }
    BottMatrix::from_lower_blocks(dims, &lower).ok()
}

fn ring(b: &BottMatrix) -> GradedF2Algebra {
    cohomology_ring(&b.polytope(), &b.to_characteristic())
        .expect("normal-form Bott matrices are valid")
        .1
}

fn report(b: &BottMatrix, alg: &GradedF2Algebra) -> BoundsReport {
    bounds_from_algebra(&b.polytope(), alg, Some(b), &BoundsOptions::default())
}

/// `prod_j bar(y_j)^{e_j}`.
fn bar_product(alg: &GradedF2Algebra, exponents: &[usize]) -> TensorClass {
    let t = TensorSquare::new(alg);
    let mut acc = t.one();
    for (j, &e) in exponents.iter().enumerate() {
        let lu = alg.left_matrix_of_class(&alg.var(j)).expect("own class");
        for _ in 0..e {
            acc = t.mul_bar(&acc, &lu);
        }
    }
    acc
}

fn parse(alg: &GradedF2Algebra, text: &str) -> Result<Monomial, String> {
    Monomial::parse(text, alg.num_vars()).ok_or_else(|| format!("cannot parse monomial `{text}`"))
}

/// Sum of the given pure tensors, each factor reduced to normal form.
fn tensor_of(alg: &GradedF2Algebra, terms: &[Term]) -> Result<TensorClass, String> {
    let t = TensorSquare::new(alg);
    let mut acc = t.zero();
    for [a, b] in terms {
        let (a, b) = (parse(alg, a)?, parse(alg, b)?);
        acc = t.add(&acc, &t.pure(&alg.monomial_class(&a), &alg.monomial_class(&b)));
    }
    Ok(acc)
}

/// Global basis index of a monomial that is itself a basis element.
fn basis_index(alg: &GradedF2Algebra, text: &str) -> Result<usize, String> {
    let mu = parse(alg, text)?;
    let d = mu.degree();
    alg.basis(d)
        .iter()
        .position(|b| *b == mu)
        .map(|k| alg.offset(d) + k)
        .ok_or_else(|| format!("{text} is not a basis monomial"))
}

fn contains_term(alg: &GradedF2Algebra, p: &TensorClass, w: &Term) -> Result<bool, String> {
    Ok(p.contains(basis_index(alg, &w[0])?, basis_index(alg, &w[1])?))
}

fn sorted_terms(terms: &[Term]) -> Vec<String> {
    let set: BTreeSet<String> = terms.iter().map(|[a, b]| format!("{a} (x) {b}")).collect();
    set.into_iter().collect()
}

fn rendered_terms(alg: &GradedF2Algebra, p: &TensorClass) -> Vec<String> {
    let t = TensorSquare::new(alg);
    let set: BTreeSet<String> = p.terms().into_iter().map(|(i, j)| t.render_term(i, j)).collect();
    set.into_iter().collect()
}

fn interval(lo: usize, hi: usize) -> String {
    format!("[{lo}, {hi}]")
}

fn rp_rings(exp: &Expectations) -> Outcome {
    let mut computed = Vec::new();
    for n in 1..=exp.rp_max {
        let alg = ring(&BottMatrix::projective_product(&[n]).expect("n >= 1"));
        let y = alg.var(0);
        let dims_ok = (0..=n).all(|d| alg.dim(d) == 1) && alg.dim(n + 1) == 0;
        let top = !alg.pow(&y, n).expect("own class").is_zero();
        let vanish = alg.pow(&y, n + 1).expect("own class").is_zero();
        if !(dims_ok && top && vanish) {
            computed.push(format!("n={n}: dims {:?}, y^n != 0: {top}, y^(n+1) = 0: {vanish}", alg.dims()));
        }
    }
    let expected = format!("n = 1..{}: dims all 1 up to n, y^n != 0, y^(n+1) = 0", exp.rp_max);
    if computed.is_empty() {
        outcome(expected.clone(), expected)
    } else {
        outcome(expected, computed.join("; "))
    }
}

fn m3_row(e: &M3Expectation) -> Result<(String, String), String> {
    let b = bott_bits(&[1, 1, 1], &e.bits).ok_or("bad matrix bits")?;
    let (red, alg) = cohomology_ring(&b.polytope(), &b.to_characteristic()).map_err(|x| x.to_string())?;
    let p = bar_product(&alg, &e.exponents);
    let r = report(&b, &alg);
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    if !e.relations.is_empty() {
        let mut want = e.relations.clone();
        want.sort();
        let mut got = red.render_generators();
        got.sort();
        expected.push(format!("relations {}", want.join(", ")));
        computed.push(format!("relations {}", got.join(", ")));
    }
    expected.push(format!("dims {:?}", e.dims));
    computed.push(format!("dims {:?}", alg.dims()));
    // term-for-term: the displayed terms are basis elements here
    expected.push(format!("product = {}", sorted_terms(&e.expansion).join(" + ")));
    let same = tensor_of(&alg, &e.expansion)? == p;
    computed.push(if same {
        format!("product = {}", rendered_terms(&alg, &p).join(" + "))
    } else {
        format!("product differs: {}", rendered_terms(&alg, &p).join(" + "))
    });
    expected.push(format!("witness {} (x) {} present", e.witness[0], e.witness[1]));
    computed.push(if contains_term(&alg, &p, &e.witness)? {
        format!("witness {} (x) {} present", e.witness[0], e.witness[1])
    } else {
        "witness absent".to_string()
    });
    let zcl = r.zcl.length;
    expected.push(format!("zcl >= {}", e.zcl_at_least));
    computed.push(if zcl >= e.zcl_at_least {
        format!("zcl >= {}", e.zcl_at_least)
    } else {
        format!("zcl >= {zcl} only")
    });
    expected.push(format!("TC {}", interval(e.tc[0], e.tc[1])));
    computed.push(format!("TC {}", interval(r.tc.interval.lo, r.tc.interval.hi)));
    if let Some(tcs) = e.tcs {
        expected.push(format!("TC^S {tcs}"));
        computed.push(format!("TC^S {}", r.tcs.interval.render()));
    }
    Ok((expected.join("; "), computed.join("; ")))
}

fn from_result(r: Result<(String, String), String>) -> Outcome {
    match r {
        Ok((e, c)) => outcome(e, c),
        Err(msg) => Outcome {
            expected: "row runs".into(),
            computed: msg,
            passed: false,
        },
    }
}

fn m3_100(exp: &Expectations) -> Outcome {
    from_result(m3_row(&exp.m3_100))
}

fn m3_101(exp: &Expectations) -> Outcome {
    from_result(m3_row(&exp.m3_101))
}

fn m4(exp: &Expectations) -> Outcome {
    from_result((|| {
        let mut expected = Vec::new();
        let mut computed = Vec::new();
        for e in &exp.m4 {
            let b = bott_bits(&[1, 1, 1, 1], &e.bits).ok_or("bad matrix bits")?;
            let alg = ring(&b);
            let p = bar_product(&alg, &exp.m4_exponents);
            let r = report(&b, &alg);
            let want = format!(
                "{}: product as displayed, witness {} (x) {}, TC {}, TC^S {}",
                e.bits,
                e.witness[0],
                e.witness[1],
                interval(exp.m4_tc[0], exp.m4_tc[1]),
                exp.m4_tcs
            );
            // the displayed terms are not all basis monomials, so compare
            // after reducing both sides
            let same = tensor_of(&alg, &e.expansion)? == p;
            let has = contains_term(&alg, &p, &e.witness)?;
            let got = format!(
                "{}: {}, {}, TC {}, TC^S {}",
                e.bits,
                if same { "product as displayed" } else { "product differs" },
                if has {
                    format!("witness {} (x) {}", e.witness[0], e.witness[1])
                } else {
                    "witness absent".to_string()
                },
                interval(r.tc.interval.lo, r.tc.interval.hi),
                r.tcs.interval.render()
            );
            expected.push(want);
            computed.push(got);
        }
        Ok((expected.join("; "), computed.join("; ")))
    })())
}

fn chain_bits(n: usize) -> Vec<u8> {
    (1..n).flat_map(|k| (0..k).map(move |j| u8::from(j + 1 == k))).collect()
}

fn chain(exp: &Expectations) -> Outcome {
    let [lo, hi] = exp.chain_range;
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for n in lo..=hi {
        let b = BottMatrix::real_bott(n, &chain_bits(n)).expect("valid bits");
        let alg = ring(&b);
        let rel = (1..n).all(|j| {
            let lhs = alg.cup(&alg.var(j - 1), &alg.var(j)).expect("own classes");
            lhs == alg.pow(&alg.var(j), 2).expect("own class")
        });
        let top = !alg.pow(&alg.var(n - 1), n).expect("own class").is_zero();
        let target = (1usize << r_of(n)) - 1;
        let zcl = zcl_lower(&alg, &SearchOptions::default()).length;
        let r = report(&b, &alg);
        let mut want = format!("n={n}: relations hold, y_n^n != 0, zcl >= {target}, TC >= {}", target + 1);
        let mut got = format!(
            "n={n}: relations {}, y_n^n {}, zcl >= {}, TC >= {}",
            if rel { "hold" } else { "fail" },
            if top { "!= 0" } else { "= 0" },
            zcl.min(target),
            r.tc.interval.lo.min(target + 1)
        );
        if !rel || !top {
            got.push_str(" (structure)");
        }
        if n == 4 {
            want.push_str(&format!(", TC {}", interval(exp.chain_n4_tc[0], exp.chain_n4_tc[1])));
            got.push_str(&format!(", TC {}", interval(r.tc.interval.lo, r.tc.interval.hi)));
        }
        expected.push(want);
        computed.push(got);
    }
    outcome(expected.join("; "), computed.join("; "))
}

fn two_factor_cases(exp: &Expectations) -> Outcome {
    let mut pairs = Vec::new();
    for total in 2..=exp.two_factor_max {
        for n1 in 1..total {
            pairs.push((n1, total - n1));
        }
    }
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for (n1, n2) in pairs {
        let Some(bound) = tc_case_classifier(n1, n2).bound else {
            continue;
        };
        let e = enumerate_bott(&[n1, n2], 1 << 20).expect("small enumeration");
        let results: Vec<(String, usize, bool)> = e
            .filter(|b| !b.is_projective_product())
            .collect::<Vec<_>>()
            .par_iter()
            .map(|b| {
                let alg = ring(b);
                let truncated = [n1, n2].iter().enumerate().all(|(i, &nj)| {
                    alg.pow(&alg.var(i), nj + 1).expect("degree in range").is_zero()
                });
                (b.lower_bits(), zcl_lower(&alg, &SearchOptions::default()).length, truncated)
            })
            .collect();
        for (bits, zcl, truncated) in results {
            checked += 1;
            if zcl + 1 < bound {
                let note = if truncated {
                    format!(", ring is that of RP^{n1} x RP^{n2}")
                } else {
                    String::new()
                };
                failures.push(format!("({n1},{n2}) {bits}: zcl + 1 = {} < {bound}{note}", zcl + 1));
            }
        }
    }
    sweep(
        "zcl + 1 >= case bound for every matching matrix",
        failures,
        format!("zcl + 1 >= case bound for all {checked} matching matrices"),
    )
}

fn rp_products(exp: &Expectations) -> Outcome {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for e in &exp.rp_products {
        let b = BottMatrix::projective_product(&e.dims).expect("positive dims");
        let r = report(&b, &ring(&b));
        let show = |name: &str, want: Option<usize>, got: &crate::invariants::Interval| {
            want.map(|w| (format!("{name} = {w}"), format!("{name} = {}", got.render())))
        };
        for (w, g) in [
            show("TC", e.tc, &r.tc.interval),
            show("TC^D", e.tcd, &r.tcd.interval),
            show("TC^S", e.tcs, &r.tcs.interval),
        ]
        .into_iter()
        .flatten()
        {
            expected.push(format!("{:?}: {w}", e.dims));
            computed.push(format!("{:?}: {g}", e.dims));
        }
    }
    outcome(expected.join("; "), computed.join("; "))
}

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Failures of the structural checks for one matrix.
pub fn structural_failures(p: &SimplePolytope, b: &BottMatrix) -> Vec<String> {
    let lambda = b.to_characteristic();
    let mut out = Vec::new();
    match validate_characteristic(p, &lambda) {
        Ok(v) if v.is_valid() => {}
        other => {
            out.push(format!("characteristic function rejected: {other:?}"));
            return out;
        }
    }
    let alg = match cohomology_ring(p, &lambda) {
        Ok((_, a)) => a,
        Err(e) => return vec![e.to_string()],
    };
    let n = p.dim();
    let expected_total: usize = b.dims().iter().map(|d| d + 1).product();
    if p.vertex_count() != expected_total {
        out.push(format!("vertex count {} != {expected_total}", p.vertex_count()));
    }
    out.extend(alg.fundamental_checks(n, expected_total).failures);
    let mut product = alg.one();
    for (j, &nj) in b.dims().iter().enumerate() {
        let y = alg.pow(&alg.var(j), nj).expect("own class");
        if y.is_zero() {
            out.push(format!("y{}^{nj} = 0", j + 1));
        }
        product = alg.cup(&product, &y).expect("own classes");
    }
    if b.dims().len() == 2 && product.is_zero() {
        out.push("y1^n1 y2^n2 = 0".into());
    }
    out
}

fn structural(exp: &Expectations) -> Outcome {
    let mut count = 0u64;
    let mut failures = Vec::new();
    for total in 1..=exp.structural_max {
        for dims in compositions(total) {
            let p = SimplePolytope::product_of_simplices(&dims).expect("positive dims");
            let e = enumerate_bott(&dims, 1 << 20).expect("small enumeration");
            count += e.total();
            let bad: Vec<String> = (0..e.total())
                .into_par_iter()
                .filter_map(|i| {
                    let b = e.get(i);
                    let f = structural_failures(&p, &b);
                    (!f.is_empty()).then(|| format!("{dims:?} {}: {}", b.lower_bits(), f.join(", ")))
                })
                .collect();
            failures.extend(bad);
        }
    }
    sweep(
        "all structural checks hold",
        failures,
        format!("all structural checks hold for {count} matrices"),
    )
}

fn square_dual() -> SimplicialComplex {
    SimplicialComplex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).expect("square")
}

fn pentagon_dual() -> SimplicialComplex {
    SimplicialComplex::new(5, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]]).expect("pentagon")
}

/// Every valid characteristic function on a polygon, vectors drawn from the
/// nonzero elements of `Z_2^2`.
fn polygon_characteristics(p: &SimplePolytope) -> Vec<CharacteristicFunction> {
    let nonzero = [[1u8, 0], [0, 1], [1, 1]];
    let r = p.facet_count();
    (0..3usize.pow(r as u32))
        .filter_map(|mut code| {
            let vectors = (0..r)
                .map(|_| {
                    let v = F2Vector::from_u8s(&nonzero[code % 3]);
                    code /= 3;
                    v
                })
                .collect();
            let l = CharacteristicFunction::new(2, vectors).ok()?;
            validate_characteristic(p, &l).ok()?.is_valid().then_some(l)
        })
        .collect()
}

fn equivariant(exp: &Expectations) -> Outcome {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for e in &exp.rz {
        let k = match e.name.as_str() {
            "square" => square_dual(),
            "cube" => SimplePolytope::product_of_simplices(&[1, 1, 1]).expect("cube").dual().clone(),
            other => match other.strip_prefix("simplex-").and_then(|n| n.parse::<usize>().ok()) {
                Some(n) => SimplePolytope::product_of_simplices(&[n]).expect("simplex").dual().clone(),
                None => {
                    computed.push(format!("{other}: unknown complex"));
                    expected.push(format!("{other}: {}", e.value));
                    continue;
                }
            },
        };
        expected.push(format!("{}: {}", e.name, e.value));
        computed.push(format!("{}: {}", e.name, k.equivariant_cat_rzk()));
    }
    // small covers: the equivariant category is the vertex count, which also
    // equals the total Betti number
    let mut instances: Vec<(String, SimplePolytope, CharacteristicFunction, Option<BottMatrix>)> = Vec::new();
    for (dims, bits) in [(vec![1, 1, 1], "100"), (vec![1, 2], "11"), (vec![2, 2], "10"), (vec![3], "")] {
        let b = bott_bits(&dims, bits).expect("valid bits");
        instances.push((format!("bott {dims:?} {bits}"), b.polytope(), b.to_characteristic(), Some(b)));
    }
    for (name, k) in [("square", square_dual()), ("pentagon", pentagon_dual())] {
        let p = SimplePolytope::from_dual(2, k).expect("polygon");
        let l = polygon_characteristics(&p).remove(0);
        instances.push((name.to_string(), p, l, None));
    }
    for (name, p, l, b) in instances {
        let (_, alg) = cohomology_ring(&p, &l).expect("valid instance");
        let r = bounds_from_algebra(&p, &alg, b.as_ref(), &BoundsOptions::default());
        expected.push(format!("{name}: {} = {}", p.vertex_count(), p.vertex_count()));
        computed.push(format!("{name}: {} = {}", r.cat_equivariant.value, alg.total_dim()));
    }
    outcome(expected.join("; "), computed.join("; "))
}

fn oracle_equivalence(exp: &Expectations) -> Outcome {
    let mut instances: Vec<(String, SimplePolytope, CharacteristicFunction)> = Vec::new();
    for n in 1..=exp.oracle_max_dim {
        for dims in compositions(n) {
            if dims.len() > exp.oracle_max_survivors {
                continue;
            }
            let p = SimplePolytope::product_of_simplices(&dims).expect("positive dims");
            for b in enumerate_bott(&dims, 1 << 20).expect("small enumeration") {
                instances.push((format!("{dims:?} {}", b.lower_bits()), p.clone(), b.to_characteristic()));
            }
        }
    }
    for (name, k) in [("square", square_dual()), ("pentagon", pentagon_dual())] {
        let p = SimplePolytope::from_dual(2, k).expect("polygon");
        if p.facet_count() - p.dim() > exp.oracle_max_survivors {
            continue;
        }
        for (i, l) in polygon_characteristics(&p).into_iter().enumerate() {
            instances.push((format!("{name} #{i}"), p.clone(), l));
        }
    }
    let count = instances.len();
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|(name, p, l)| {
            let pres = build_presentation(p, l).ok()?;
            let red = reduce(&pres).ok()?;
            let (_, alg) = cohomology_ring(p, l).ok()?;
            let want = oracle::quotient_dims(red.num_vars(), &red.generators, p.dim() + 1);
            let mut got = alg.dims();
            got.truncate(p.dim() + 2);
            got.resize(p.dim() + 2, 0);
            (want != got).then(|| format!("{name}: engine {got:?}, oracle {want:?}"))
        })
        .collect();
    sweep(
        "engine dims = oracle dims",
        failures,
        format!("engine dims = oracle dims on {count} instances"),
    )
}
