mod common;

use common::*;
use frobsub_core::algebra::{int, rat, MPoly, RatFunc, Rational};
use frobsub_core::frobenius::{
    infer_diagonal_euler, product_with_line, reconstruct_prepotential, Tables,
};
use frobsub_core::natural::{
    analyze, classify_hypersurface, corollary_diagnostics, induced_structure, theorem_a_verdict,
    HypersurfaceCase, Verdict,
};

fn constant(r: &Option<RatFunc>) -> Option<Rational> {
    r.as_ref().and_then(RatFunc::constant_value)
}

#[test]
fn family_roots_are_natural() {
    let a = b3();
    for (k, geodesic) in [(int(0), true), (rat(-1, 2), false), (rat(3, 2), false)] {
        let emb = b3_member(k.clone());
        let analysis = analyze(&emb, &a).unwrap();
        let report = &analysis.report;
        assert_eq!(report.verdict, Verdict::Natural, "k2 = {k}: {report:#?}");
        assert_eq!(report.diagnostics.totally_geodesic, geodesic);
        assert!(report.diagnostics.e_tangent);
        assert_eq!(report.diagnostics.d_relation_holds, Some(true));
        assert_eq!(constant(&report.lambda), Some(int(0)));
        assert_eq!(constant(&report.d_n), Some(rat(4, 3)));
        assert_eq!(report.diagnostics.lemma_c_holds, Some(true));

        let (structure, oracle) = induced_structure(&emb, &a, &analysis.geometry);
        assert!(oracle.passed, "k2 = {k}: {oracle:#?}");
        assert_eq!(constant(&oracle.d_n), Some(rat(4, 3)));
        assert!(structure.is_some());
    }
}

#[test]
fn non_root_fails_closure() {
    let a = b3();
    let emb = b3_member(int(1));
    let analysis = analyze(&emb, &a).unwrap();
    assert_eq!(analysis.report.verdict, Verdict::NotNatural);
    assert!(!analysis.report.closure.passed);
    assert!(analysis.report.unit_parallel.passed);
    let (structure, oracle) = induced_structure(&emb, &a, &analysis.geometry);
    assert!(!oracle.passed && structure.is_none());
}

#[test]
fn closure_residuals_carry_the_family_factors() {
    let analysis = analyze(&b3_family(), &b3()).unwrap();
    let ring = analysis.geometry.ring().clone();
    let factor = poly("k2*(2*k2 - 3)*(2*k2 + 1)", &ring);
    for (_, r) in &analysis.closure.residuals {
        if r.is_zero() {
            continue;
        }
        assert!(r.is_polynomial());
        assert!(r.numer().div_exact(&factor).is_some(), "{r}");
    }
}

#[test]
fn identity_embedding_reproduces_the_ambient() {
    let a = b3();
    let emb = frobsub_core::geometry::Embedding::identity(&strings(&["s1", "s2", "s3"]));
    let analysis = analyze(&emb, &a).unwrap();
    assert_eq!(analysis.report.verdict, Verdict::Natural);
    assert_eq!(constant(&analysis.report.lambda), Some(int(0)));
    assert_eq!(constant(&analysis.report.d_n), Some(rat(4, 3)));
    let (structure, oracle) = induced_structure(&emb, &a, &analysis.geometry);
    assert!(oracle.passed);
    let structure = structure.unwrap();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let expected = a.upper().get(i, j, k).to_string().replace('t', "s");
                assert_eq!(structure.product[i][j][k].to_string(), expected);
            }
        }
    }
}

#[test]
fn accepted_member_has_quasi_homogeneous_potential() {
    let a = b3();
    let emb = b3_member(rat(3, 2));
    let analysis = analyze(&emb, &a).unwrap();
    let ring = analysis.geometry.ring().clone();
    let lowered = analysis.closure.c_n_lower.clone().unwrap();
    let tables = Tables::from_fn(2, |i, j, k| {
        lowered[i][j][k].as_poly().expect("polynomial tables").clone()
    });
    let f = reconstruct_prepotential(&tables, &ring).unwrap();
    assert_eq!(f.vars().names(), ["tau1", "tau2"]);
    let metric = ints(&[&[0, 1], &[1, 0]]);
    let unit = vec![MPoly::one(&ring), MPoly::zero(&ring)];
    let euler = infer_diagonal_euler(&f, &metric, &unit).unwrap();
    assert_eq!(euler.d, rat(4, 3));
    assert_eq!(euler.weights, vec![int(1), rat(1, 3)]);
}

#[test]
fn hypersurface_cases() {
    let a = b3();
    let emb = b3_member(rat(-1, 2));
    let analysis = analyze(&emb, &a).unwrap();
    let class = classify_hypersurface(&emb, &a, &analysis).unwrap();
    assert_eq!(class.case, HypersurfaceCase::UnitTangent);
    assert_eq!(class.via, Some("euler-tangent"));
    assert!(class.consistent);

    let emb = b3_member(int(0));
    let analysis = analyze(&emb, &a).unwrap();
    let class = classify_hypersurface(&emb, &a, &analysis).unwrap();
    assert_eq!(class.via, Some("totally-geodesic"));
    assert!(class.consistent);

    let diag = corollary_diagnostics(&emb, &a, &analysis);
    assert_eq!(diag.skipped.as_deref(), Some("unit is tangent"));
}

#[test]
fn line_product_slice() {
    let p = product_with_line(&one_dim()).unwrap();
    let emb = embedding(&["s"], &[], &["s", "1"]);
    let analysis = analyze(&emb, &p).unwrap();
    let report = &analysis.report;
    assert_eq!(report.verdict, Verdict::Natural, "{report:#?}");
    assert!(!report.diagnostics.e_tangent);
    let class = classify_hypersurface(&emb, &p, &analysis).unwrap();
    assert_eq!(class.case, HypersurfaceCase::UnitTransversal);
    assert!(class.consistent);
    assert_eq!(class.lemma_2_1_holds, Some(true));
    let diag = corollary_diagnostics(&emb, &p, &analysis);
    assert!(diag.passed(), "{diag:#?}");
    assert_eq!(diag.mu.unwrap().constant_value(), Some(int(1)));
    let (_, oracle) = induced_structure(&emb, &p, &analysis.geometry);
    assert!(oracle.passed);
}

#[test]
fn codimension_two_counterexample() {
    let p = product_with_line(&b3()).unwrap();
    let emb = embedding(
        &["tau1", "tau2"],
        &[],
        &["tau1 - 1/6*tau2^3", "-1/2*tau2^2", "tau2", "1"],
    );
    let analysis = analyze(&emb, &p).unwrap();
    let report = &analysis.report;
    assert_eq!(report.verdict, Verdict::Natural, "{report:#?}");
    assert!(!report.diagnostics.e_tangent);
    assert!(!report.diagnostics.euler_tangent);
    assert!(!report.diagnostics.totally_geodesic);
    assert!(classify_hypersurface(&emb, &p, &analysis).is_err());
}

#[test]
fn degenerate_metric_is_a_hypothesis_failure() {
    let emb = embedding(&["s"], &[], &["s", "0", "0"]);
    let report = theorem_a_verdict(&emb, &b3());
    assert_eq!(report.verdict, Verdict::HypothesisFailed);
    assert!(!report.nondegenerate);
}

#[test]
fn curved_metric_is_a_hypothesis_failure() {
    // G = [[2v, u], [u, 1]]
    let emb = embedding(&["u", "v"], &[], &["u*v", "v", "u"]);
    let report = theorem_a_verdict(&emb, &b3());
    assert!(report.nondegenerate);
    assert!(!report.flat);
    assert_eq!(report.verdict, Verdict::HypothesisFailed);
}
