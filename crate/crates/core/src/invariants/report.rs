use serde::Serialize;
use thiserror::Error;

use super::external::{ExternalTable, ExternalValue};
use super::zcl::{norm_cl, zcl_lower, SearchOptions, SearchResult};
use crate::charfun::{BottMatrix, CharacteristicFunction};
use crate::cohomology::{cohomology_ring, CohomologyError, GradedF2Algebra};
use crate::complexes::SimplePolytope;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("not a product of real projective spaces")]
    NotProjectiveProduct,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// A closed interval, with the exact value when it is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub exact: Option<usize>,
}

impl Interval {
    fn new(lo: usize, hi: usize) -> Self {
        let exact = (lo == hi).then_some(lo);
        Self { lo, hi, exact }
    }

    pub fn render(&self) -> String {
        match self.exact {
            Some(v) if self.lo == self.hi => v.to_string(),
            Some(v) => format!("[{}, {}] (exact {v})", self.lo, self.hi),
            None => format!("[{}, {}]", self.lo, self.hi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactEntry {
    pub value: usize,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptionalEntry {
    pub value: Option<usize>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalEntry {
    #[serde(flatten)]
    pub interval: Interval,
    /// One line per bound that contributed.
    pub provenance: Vec<String>,
    pub certificate: Option<String>,
    /// A value imported from the literature, reported next to the computed
    /// interval rather than merged into it.
    pub external: Option<ExternalValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub length: usize,
    pub strategy: String,
    pub certificate: Option<String>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

impl From<&SearchResult> for SearchSummary {
    fn from(r: &SearchResult) -> Self {
        Self {
            length: r.length,
            strategy: r.strategy.as_str().to_string(),
            certificate: r.certificate.as_ref().map(|c| c.to_string()),
            nodes: r.nodes,
            budget_exhausted: r.budget_exhausted,
        }
    }
}

/// All invariants of one small cover. Every count is non-normalized: a
/// contractible space has category 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub dim: usize,
    pub cup_length: usize,
    pub cat: ExactEntry,
    pub cat_equivariant: ExactEntry,
    pub cat_equivariant_rz: ExactEntry,
    pub cat1: OptionalEntry,
    pub tc: IntervalEntry,
    pub tcs: IntervalEntry,
    pub tcd: IntervalEntry,
    pub zcl: SearchSummary,
    pub norm_cl: SearchSummary,
    /// Set when a search stopped early; intervals remain valid but may not
    /// be the best the strategy can reach.
    pub budget_exhausted: bool,
    /// Disagreements between imported values and computed intervals.
    pub conflicts: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BoundsOptions {
    pub search: SearchOptions,
    pub assert_rz_simply_connected: bool,
    pub external: ExternalTable,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            search: SearchOptions::default(),
            assert_rz_simply_connected: false,
            external: ExternalTable::builtin(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RpProductTc {
    Exact { value: usize, rule: String },
    Interval { lo: usize, hi: usize },
}

fn all_in(dims: &[usize], set: &[usize]) -> bool {
    dims.iter().all(|d| set.contains(d))
}

/// TC of `RP^{n_1} x .. x RP^{n_m}`, exact where the factor values and the
/// product inequality pin it down. `zcl` is a certified zero-divisor
/// cup-length of the product.
pub fn rp_product_tc(dims: &[usize], zcl: usize, table: &ExternalTable) -> RpProductTc {
    let n: usize = dims.iter().sum();
    let m = dims.len();
    let known: Option<Vec<usize>> = dims.iter().map(|&d| table.rp_tc(d).map(|v| v.value)).collect();
    if let Some(values) = &known {
        let upper = values.iter().sum::<usize>() - (m - 1);
        if all_in(dims, &[1, 3, 7]) {
            return RpProductTc::Exact {
                value: n + 1,
                rule: "every factor is RP^1, RP^3 or RP^7: cat = n + 1 <= TC <= sum TC(RP^{n_j}) - (m - 1) = n + 1".into(),
            };
        }
        if dims.iter().all(|d| d.is_power_of_two()) {
            return RpProductTc::Exact {
                value: upper,
                rule: "every factor has dimension a power of two: TC = sum 2n_j - (m - 1)".into(),
            };
        }
    }
    let hi: usize = dims
        .iter()
        .map(|&d| table.rp_tc(d).map_or(2 * d + 1, |v| v.value))
        .sum::<usize>()
        - (m - 1);
    RpProductTc::Interval {
        lo: (n + 1).max(zcl + 1),
        hi: hi.min(2 * n + 1),
    }
}

/// Assembles every invariant for the small cover `M(P, lambda)`. Pass the Bott
/// matrix when the input came as one; it enables the projective-product and
/// external-table refinements.
pub fn bounds_report(
    polytope: &SimplePolytope,
    lambda: &CharacteristicFunction,
    bott: Option<&BottMatrix>,
    opts: &BoundsOptions,
) -> Result<BoundsReport, InvariantError> {
    let (_, alg) = cohomology_ring(polytope, lambda)?;
    Ok(bounds_from_algebra(polytope, &alg, bott, opts))
}

pub fn bounds_from_algebra(
    polytope: &SimplePolytope,
    alg: &GradedF2Algebra,
    bott: Option<&BottMatrix>,
    opts: &BoundsOptions,
) -> BoundsReport {
    let n = polytope.dim();
    let vertices = polytope.vertex_count();
    let zcl = zcl_lower(alg, &opts.search);
    let ncl = norm_cl(alg, &opts.search);
    let budget_exhausted = zcl.budget_exhausted || ncl.budget_exhausted;
    let mut conflicts = Vec::new();

    let cat = ExactEntry {
        value: n + 1,
        provenance: "cat of an n-dimensional small cover is n + 1".into(),
    };
    let cat_equivariant = ExactEntry {
        value: vertices,
        provenance: format!("equivariant cat of a small cover equals the vertex count of P ({vertices})"),
    };
    let cat_equivariant_rz = ExactEntry {
        value: polytope.dual().equivariant_cat_rzk(),
        provenance: "equivariant cat of the real moment-angle complex equals the number of maximal simplices".into(),
    };

    // TC
    let mut tc = Interval::new((n + 1).max(zcl.length + 1), 2 * n + 1);
    let mut tc_prov = vec![
        format!("lower: max(cat, zcl + 1) = max({}, {})", n + 1, zcl.length + 1),
        format!("upper: 2 dim + 1 = {}", 2 * n + 1),
    ];
    let projective = bott.filter(|b| b.is_projective_product());
    if let Some(b) = projective {
        match rp_product_tc(b.dims(), zcl.length, &opts.external) {
            RpProductTc::Exact { value, rule } => {
                tc = Interval::new(value, value);
                tc_prov.push(format!("product of projective spaces: {rule}"));
            }
            RpProductTc::Interval { lo, hi } => {
                tc = Interval::new(tc.lo.max(lo), tc.hi.min(hi));
                tc_prov.push(format!(
                    "product of projective spaces: TC <= sum TC(RP^{{n_j}}) - (m - 1) = {hi}"
                ));
            }
        }
    }
    let tc_external = bott.and_then(|b| opts.external.bott_tc(b));
    if let Some(ext) = &tc_external {
        if ext.value < tc.lo || ext.value > tc.hi {
            conflicts.push(format!(
                "imported TC = {} lies outside the computed interval [{}, {}]",
                ext.value, tc.lo, tc.hi
            ));
        } else {
            tc.exact = Some(ext.value);
            tc_prov.push(format!("exact value {} imported: {}", ext.value, ext.source));
        }
    }
    let tc_best_lo = tc.exact.unwrap_or(tc.lo);

    // TC^S
    let tcs = Interval::new(tc_best_lo.max(ncl.length + 2).min(2 * n + 1), 2 * n + 1);
    let tcs_prov = vec![
        format!(
            "lower: max(TC, norm cup-length + 2) = max({tc_best_lo}, {})",
            ncl.length + 2
        ),
        format!("upper: 2 dim + 1 = {}", 2 * n + 1),
        format!(
            "norm cup-length searched with the {} strategy; bar(u) factors are norm elements",
            ncl.strategy.as_str()
        ),
    ];

    // cat_1 and TC^D
    let cat1 = if polytope.product_dims().is_some() {
        OptionalEntry {
            value: Some(n + 1),
            provenance: "cat_1 = n + 1 for small covers over products of simplices".into(),
        }
    } else if opts.assert_rz_simply_connected {
        OptionalEntry {
            value: Some(n + 1),
            provenance: "cat_1 = n + 1 given the asserted simple connectivity of the real moment-angle complex".into(),
        }
    } else {
        OptionalEntry {
            value: None,
            provenance: "unavailable: needs a simply connected real moment-angle complex (assert it to enable)".into(),
        }
    };
    let tcd_hi = tc.exact.map_or(tc.hi, |e| e.min(tc.hi));
    let tcd_lo = cat1.value.unwrap_or(1);
    let mut tcd_prov = vec![
        match cat1.value {
            Some(v) => format!("lower: cat_1 = {v} <= TC^D"),
            None => "lower: trivial bound 1".into(),
        },
        format!("upper: TC^D <= TC <= {tcd_hi}"),
    ];
    if projective.is_some_and(|b| all_in(b.dims(), &[1, 3, 7])) {
        tcd_prov.push("projective product with factors RP^1, RP^3, RP^7: TC^D = n + 1".into());
    }
    let tcd = Interval::new(tcd_lo, tcd_hi);

    BoundsReport {
        dim: n,
        cup_length: alg.max_nonzero_degree(),
        cat,
        cat_equivariant,
        cat_equivariant_rz,
        cat1,
        tc: IntervalEntry {
            interval: tc,
            provenance: tc_prov,
            certificate: zcl.certificate.as_ref().map(|c| c.to_string()),
            external: tc_external,
        },
        tcs: IntervalEntry {
            interval: tcs,
            provenance: tcs_prov,
            certificate: ncl.certificate.as_ref().map(|c| c.to_string()),
            external: None,
        },
        tcd: IntervalEntry {
            interval: tcd,
            provenance: tcd_prov,
            certificate: None,
            external: None,
        },
        zcl: SearchSummary::from(&zcl),
        norm_cl: SearchSummary::from(&ncl),
        budget_exhausted,
        conflicts,
    }
}

/// [`rp_product_tc`] for a Bott matrix, rejecting non-products.
pub fn rp_product_tc_for(b: &BottMatrix, zcl: usize, table: &ExternalTable) -> Result<RpProductTc, InvariantError> {
    if !b.is_projective_product() {
        return Err(InvariantError::NotProjectiveProduct);
    }
    Ok(rp_product_tc(b.dims(), zcl, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(b: &BottMatrix) -> BoundsReport {
        bounds_report(&b.polytope(), &b.to_characteristic(), Some(b), &BoundsOptions::default()).unwrap()
    }

    #[test]
    fn rp_products() {
        let t = ExternalTable::builtin();
        assert!(matches!(rp_product_tc(&[1, 3], 0, &t), RpProductTc::Exact { value: 5, .. }));
        assert!(matches!(rp_product_tc(&[2, 4], 0, &t), RpProductTc::Exact { value: 11, .. }));
        assert!(matches!(rp_product_tc(&[1], 0, &t), RpProductTc::Exact { value: 2, .. }));
        // RP^5 has no imported value: 2n + 1 bounds its factor
        assert_eq!(rp_product_tc(&[1, 5], 6, &t), RpProductTc::Interval { lo: 7, hi: 12 });
        assert_eq!(rp_product_tc(&[1, 3], 0, &ExternalTable::empty()), RpProductTc::Interval { lo: 5, hi: 9 });
        let klein = BottMatrix::real_bott(2, &[1]).unwrap();
        assert_eq!(rp_product_tc_for(&klein, 3, &t), Err(InvariantError::NotProjectiveProduct));
    }

    #[test]
    fn three_dimensional_klein_bottle() {
        let r = report(&BottMatrix::real_bott(3, &[1, 1, 0]).unwrap());
        assert_eq!(r.cat.value, 4);
        assert_eq!(r.cat_equivariant.value, 8);
        assert_eq!(r.tc.interval.hi, 7);
        assert_eq!(r.tc.interval.exact, Some(6));
        assert_eq!(r.tcs.interval.exact, Some(7));
        assert!(r.conflicts.is_empty());
    }

    #[test]
    fn torus_cube() {
        let r = report(&BottMatrix::projective_product(&[1, 1, 1]).unwrap());
        assert_eq!(r.cat.value, 4);
        assert_eq!(r.tc.interval.exact, Some(4));
        assert_eq!(r.cat1.value, Some(4));
        assert_eq!(r.tcd.interval.exact, Some(4));
    }

    #[test]
    fn general_polytope_cat1_needs_assertion() {
        use crate::complexes::SimplicialComplex;
        use crate::f2linalg::F2Vector;
        let k = SimplicialComplex::new(5, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]]).unwrap();
        let p = SimplePolytope::from_dual(2, k).unwrap();
        let v = |b: &[u8]| F2Vector::from_u8s(b);
        let l = CharacteristicFunction::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        let mut opts = BoundsOptions::default();
        let r = bounds_report(&p, &l, None, &opts).unwrap();
        assert_eq!(r.cat1.value, None);
        assert_eq!(r.tcd.interval.lo, 1);
        assert_eq!(r.cat_equivariant.value, 5);
        opts.assert_rz_simply_connected = true;
        let r = bounds_report(&p, &l, None, &opts).unwrap();
        assert_eq!(r.cat1.value, Some(3));
        assert!(r.tcd.interval.lo <= r.tcd.interval.hi);
    }
}
