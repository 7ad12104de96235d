//! Report documents and their two renderings.

use std::fmt::Write as _;

use serde::Serialize;

use super::input::InputDocument;
use crate::cohomology::{DJPresentation, FundamentalReport, GradedF2Algebra, ReducedPresentation};
use crate::invariants::{BoundsReport, IntervalEntry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub stanley_reisner: Vec<String>,
    pub linear_forms: Vec<String>,
    pub survivors: Vec<String>,
    pub substitution: Vec<String>,
    pub relations: Vec<String>,
}

impl Presentation {
    pub fn new(pres: &DJPresentation, red: &ReducedPresentation) -> Self {
        Self {
            stanley_reisner: pres.render_monomial_ideal(),
            linear_forms: pres.render_linear_forms(),
            survivors: red.render_survivors(),
            substitution: red.render_substitution(),
            relations: red.render_generators(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fundamental {
    pub top_dim: usize,
    pub pairing_ranks: Vec<usize>,
    pub total_dim: usize,
    pub expected_total: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl From<FundamentalReport> for Fundamental {
    fn from(r: FundamentalReport) -> Self {
        Self {
            passed: r.passed(),
            top_dim: r.top_dim,
            pairing_ranks: r.pairing_ranks,
            total_dim: r.total_dim,
            expected_total: r.expected_total,
            failures: r.failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub dims: Vec<usize>,
    /// Basis monomials per degree, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    pub fundamental: Fundamental,
}

impl CohomologySummary {
    /// Degrees `0 ..= max_degree` (all of them by default).
    pub fn new(alg: &GradedF2Algebra, n: usize, vertices: usize, print_basis: bool, max_degree: Option<usize>) -> Self {
        let top = max_degree.map_or(n, |d| d.min(n));
        Self {
            dims: (0..=top).map(|d| alg.dim(d)).collect(),
            basis: print_basis.then(|| (0..=top).map(|d| alg.render_basis(d)).collect()),
            fundamental: alg.fundamental_checks(n, vertices).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub cohomology_ms: u128,
    pub bounds_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub input: InputDocument,
    pub valid: bool,
    /// Facets that meet but carry dependent vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsReport>,
    pub budget_exceeded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock times; only present when asked for, so that reports stay
    /// byte-stable otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn new(input: InputDocument) -> Self {
        Self {
            input,
            valid: false,
            violation: None,
            presentation: None,
            cohomology: None,
            bounds: None,
            budget_exceeded: false,
            error: None,
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "valid: {}", if self.valid { "yes" } else { "no" });
        if let Some(p) = &self.presentation {
            let _ = writeln!(w, "stanley-reisner: {}", list(&p.stanley_reisner));
            let _ = writeln!(w, "linear forms: {}", list(&p.linear_forms));
            let _ = writeln!(w, "survivors: {}", list(&p.survivors));
            let _ = writeln!(w, "substitution: {}", list(&p.substitution));
            let _ = writeln!(w, "relations: {}", list(&p.relations));
        }
        if let Some(c) = &self.cohomology {
            let dims: Vec<String> = c.dims.iter().map(usize::to_string).collect();
            let _ = writeln!(w, "dims: ({})", dims.join(", "));
            if let Some(basis) = &c.basis {
                for (d, b) in basis.iter().enumerate() {
                    let _ = writeln!(w, "  H^{d}: {}", list(b));
                }
            }
            let f = &c.fundamental;
            let ranks: Vec<String> = f.pairing_ranks.iter().map(usize::to_string).collect();
            let _ = writeln!(
                w,
                "fundamental: {} (top dim {}, pairing ranks {}, total {} of {})",
                if f.passed { "ok" } else { "FAILED" },
                f.top_dim,
                ranks.join(" "),
                f.total_dim,
                f.expected_total
            );
            for failure in &f.failures {
                let _ = writeln!(w, "  {failure}");
            }
        }
        if let Some(b) = &self.bounds {
            write_bounds(w, b);
        }
        if self.budget_exceeded {
            let _ = writeln!(w, "budget exceeded: results are partial");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(w, "error: {e}");
        }
        if let Some(t) = &self.timing {
            let _ = write!(w, "timing: cohomology {} ms", t.cohomology_ms);
            if let Some(b) = t.bounds_ms {
                let _ = write!(w, ", bounds {b} ms");
            }
            let _ = writeln!(w);
        }
        out
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

fn write_bounds(w: &mut String, b: &BoundsReport) {
    let _ = writeln!(w, "dim: {}", b.dim);
    let _ = writeln!(w, "cup-length: {}", b.cup_length);
    let _ = writeln!(w, "cat: {}  ({})", b.cat.value, b.cat.provenance);
    let _ = writeln!(w, "cat equivariant: {}  ({})", b.cat_equivariant.value, b.cat_equivariant.provenance);
    let _ = writeln!(
        w,
        "cat equivariant (real moment-angle complex): {}  ({})",
        b.cat_equivariant_rz.value, b.cat_equivariant_rz.provenance
    );
    match b.cat1.value {
        Some(v) => {
            let _ = writeln!(w, "cat_1: {v}  ({})", b.cat1.provenance);
        }
        None => {
            let _ = writeln!(w, "cat_1: unknown  ({})", b.cat1.provenance);
        }
    }
    write_interval(w, "TC", &b.tc);
    write_interval(w, "TC^S", &b.tcs);
    write_interval(w, "TC^D", &b.tcd);
    let _ = writeln!(
        w,
        "zcl >= {} ({} strategy, {} nodes{})",
        b.zcl.length,
        b.zcl.strategy,
        b.zcl.nodes,
        if b.zcl.budget_exhausted { ", budget exhausted" } else { "" }
    );
    let _ = writeln!(
        w,
        "norm cup-length >= {} ({} strategy, {} nodes{})",
        b.norm_cl.length,
        b.norm_cl.strategy,
        b.norm_cl.nodes,
        if b.norm_cl.budget_exhausted { ", budget exhausted" } else { "" }
    );
    for c in &b.conflicts {
        let _ = writeln!(w, "conflict: {c}");
    }
}

fn write_interval(w: &mut String, name: &str, e: &IntervalEntry) {
    let _ = writeln!(w, "{name}: {}", e.interval.render());
    for p in &e.provenance {
        let _ = writeln!(w, "  {p}");
    }
    if let Some(c) = &e.certificate {
        let _ = writeln!(w, "  certificate: {c}");
    }
    if let Some(x) = &e.external {
        let _ = writeln!(w, "  imported: {} ({})", x.value, x.source);
    }
}
