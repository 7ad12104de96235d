use proptest::prelude::*;

use smallcover::charfun::{enumerate_bott, validate_characteristic, BottMatrix};
use smallcover::cli::input::{bott_document, InputDocument, InputOptions, LambdaSpec, PolytopeSpec};
use smallcover::cohomology::{cohomology_ring, CohomologyClass, GradedF2Algebra};
use smallcover::f2linalg::F2Vector;
use smallcover::invariants::zcl::{cup_length, zcl_lower, SearchOptions, Strategy as Search};
use smallcover::invariants::{bounds_from_algebra, BoundsOptions};

fn arb_dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=4).prop_filter("at most six", |d| d.iter().sum::<usize>() <= 6)
}

fn arb_bott() -> impl Strategy<Value = BottMatrix> {
    arb_dims().prop_flat_map(|dims| {
        let total = enumerate_bott(&dims, 1 << 20).unwrap().total();
        (Just(dims), 0..total).prop_map(|(dims, i)| enumerate_bott(&dims, 1 << 20).unwrap().get(i))
    })
}

fn ring(b: &BottMatrix) -> GradedF2Algebra {
    cohomology_ring(&b.polytope(), &b.to_characteristic()).unwrap().1
}

fn arb_class(alg: &GradedF2Algebra, seed: u64) -> CohomologyClass {
    let n = alg.top_degree();
    let d = (seed % (n as u64 + 1)) as usize;
    let dim = alg.dim(d);
    let coords = F2Vector::from_bits((0..dim).map(|k| seed >> (8 + k % 48) & 1 == 1));
    alg.from_coords(d, coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cup_is_commutative_and_associative(b in arb_bott(), s1: u64, s2: u64, s3: u64) {
        let alg = ring(&b);
        let (x, y, z) = (arb_class(&alg, s1), arb_class(&alg, s2), arb_class(&alg, s3));
        prop_assert_eq!(alg.cup(&x, &y).unwrap(), alg.cup(&y, &x).unwrap());
        let left = alg.cup(&alg.cup(&x, &y).unwrap(), &z).unwrap();
        let right = alg.cup(&x, &alg.cup(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn generators_reach_their_factor_dimension(b in arb_bott()) {
        let alg = ring(&b);
        for (j, &nj) in b.dims().iter().enumerate() {
            prop_assert!(!alg.pow(&alg.var(j), nj).unwrap().is_zero());
        }
        let total: usize = b.dims().iter().map(|d| d + 1).product();
        prop_assert_eq!(alg.total_dim(), total);
    }

    #[test]
    fn certificates_verify_and_bounds_are_ordered(b in arb_bott()) {
        let alg = ring(&b);
        let n = b.dims().iter().sum::<usize>();
        let r = zcl_lower(&alg, &SearchOptions::default());
        if let Some(c) = &r.certificate {
            prop_assert!(c.verify(&alg));
        }
        prop_assert!(r.length >= cup_length(&alg));
        prop_assert!(r.length <= 2 * n);
        let report = bounds_from_algebra(&b.polytope(), &alg, Some(&b), &BoundsOptions::default());
        for e in [&report.tc, &report.tcs, &report.tcd] {
            prop_assert!(e.interval.lo <= e.interval.hi);
        }
        prop_assert!(report.tc.interval.lo > n);
        prop_assert!(report.tc.interval.hi <= 2 * n + 1);
    }

    #[test]
    fn normal_forms_are_valid(b in arb_bott()) {
        prop_assert!(validate_characteristic(&b.polytope(), &b.to_characteristic()).unwrap().is_valid());
        let (again, _) = b.normalize().unwrap();
        prop_assert_eq!(again.lower_bits(), b.lower_bits());
    }

    #[test]
    fn documents_round_trip(dims in arb_dims(), bits: u64, strategy in 0u8..3, cap in prop::option::of(1usize..20)) {
        let mut k = 0;
        let mut blocks = Vec::new();
        for j in 1..dims.len() {
            for _ in 0..j {
                blocks.push((0..dims[j]).map(|_| { k += 1; (bits >> (k % 64) & 1) as u8 }).collect());
            }
        }
        let mut doc = bott_document(&dims, blocks);
        doc.options = InputOptions {
            strategy: [Search::Generators, Search::Linear, Search::Full][strategy as usize],
            exponent_cap: cap,
            ..InputOptions::default()
        };
        let text = doc.render();
        prop_assert_eq!(InputDocument::parse(&text).unwrap(), doc.clone());
        prop_assert!(doc.resolve().is_ok());
    }
}

#[test]
fn explicit_document_round_trips() {
    let doc = InputDocument {
        polytope: PolytopeSpec::DualComplex {
            n: 2,
            facets: 5,
            maximal_simplices: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
        },
        lambda: LambdaSpec::Explicit {
            n: 2,
            vectors: vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 1]],
        },
        options: InputOptions::default(),
    };
    assert_eq!(InputDocument::parse(&doc.render()).unwrap(), doc);
    let inst = doc.resolve().unwrap();
    let (_, alg) = cohomology_ring(&inst.polytope, &inst.lambda).unwrap();
    // a non-orientable surface of Euler characteristic -1
    assert_eq!(alg.dims(), vec![1, 3, 1]);
}
