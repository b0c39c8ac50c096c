mod common;

use common::*;
use frobsub_core::algebra::{int, rat, RatFunc, Rational};
use frobsub_core::geometry::{shape_operator, Embedding};
use frobsub_core::natural::{analyze, classify_hypersurface, induced_structure, Verdict};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![
        int(0),
        int(1),
        int(-1),
        int(2),
        rat(1, 2),
        rat(-1, 2),
        rat(3, 2),
        rat(1, 3),
    ])
}

fn univariate(x: &str, cs: &[Rational]) -> String {
    cs.iter()
        .enumerate()
        .map(|(e, c)| format!("({c})*{x}^{e}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Curves and graph-type surfaces in B3.
fn b3_embedding() -> impl Strategy<Value = Embedding> {
    let curve = prop::collection::vec(prop::collection::vec(coeff(), 3), 3).prop_map(|cs| {
        let map: Vec<String> = cs.iter().map(|c| univariate("tau", c)).collect();
        let map: Vec<&str> = map.iter().map(String::as_str).collect();
        embedding(&["tau"], &[], &map)
    });
    let graph = (
        prop::collection::vec(coeff(), 4),
        prop::collection::vec(coeff(), 3),
        coeff(),
    )
        .prop_map(|(f, g, c)| {
            let t1 = format!("tau1 + {}", univariate("tau2", &f));
            let t2 = univariate("tau2", &g);
            let t3 = format!("tau2 + ({c})");
            embedding(&["tau1", "tau2"], &[], &[&t1, &t2, &t3])
        });
    prop_oneof![curve, graph]
}

fn basis(ring: &frobsub_core::algebra::Vars, m: usize, i: usize) -> Vec<RatFunc> {
    (0..m)
        .map(|j| RatFunc::constant(ring, if i == j { int(1) } else { int(0) }))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn induced_geometry_invariants(emb in b3_embedding()) {
        let ambient = b3();
        let Ok(analysis) = analyze(&emb, &ambient) else { return Ok(()) };
        let geom = &analysis.geometry;
        prop_assert!(geom.projector_laws().passed());
        let m = geom.m();
        for i in 0..m {
            let v = basis(geom.ring(), m, i);
            let split = geom.split(&v).unwrap();
            // v = J a + normal, normal ⊥ TN
            let rebuilt = geom.push_forward(&split.tangential);
            for k in 0..m {
                prop_assert_eq!(&(&rebuilt[k] + &split.normal[k]), &v[k]);
            }
            for alpha in 0..geom.n() {
                prop_assert!(geom.ambient_inner(&split.normal, &geom.tangent(alpha)).is_zero());
            }
            let shape = shape_operator(geom, &split.normal).unwrap();
            prop_assert!(shape.duality.passed);
        }
        // h symmetric and normal.
        for a in 0..geom.n() {
            for b in 0..geom.n() {
                prop_assert_eq!(&geom.second_fundamental[a][b], &geom.second_fundamental[b][a]);
                for g in 0..geom.n() {
                    prop_assert!(geom
                        .ambient_inner(&geom.second_fundamental[a][b], &geom.tangent(g))
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn criterion_agrees_with_oracle(emb in b3_embedding()) {
        let ambient = b3();
        let Ok(analysis) = analyze(&emb, &ambient) else { return Ok(()) };
        if !analysis.report.flat {
            prop_assert_eq!(analysis.report.verdict, Verdict::HypothesisFailed);
            return Ok(());
        }
        let (_, oracle) = induced_structure(&emb, &ambient, &analysis.geometry);
        prop_assert_eq!(analysis.report.verdict == Verdict::Natural, oracle.passed);
        if analysis.closure.check.passed {
            prop_assert_eq!(analysis.report.diagnostics.lemma_c_holds, Some(true));
        }
        if analysis.report.verdict == Verdict::Natural {
            let d = analysis.report.d.clone().unwrap();
            let lambda = analysis.report.lambda.as_ref().and_then(RatFunc::constant_value).unwrap();
            let d_n = oracle.d_n.as_ref().and_then(RatFunc::constant_value);
            prop_assert_eq!(d_n, Some(&d + &(lambda * int(2))));
        }
        if emb.codimension() == 1 {
            let class = classify_hypersurface(&emb, &ambient, &analysis).unwrap();
            prop_assert!(class.consistent);
            prop_assert_ne!(class.lemma_2_1_holds, Some(false));
        }
    }
}
