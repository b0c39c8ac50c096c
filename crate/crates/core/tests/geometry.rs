mod common;

use common::*;
use frobsub_core::algebra::{int, rat, MPoly, RatFunc, RatMatrix, Vars};
use frobsub_core::geometry::{
    christoffel, induced_geometry, pullback_field, riemann, shape_operator, Embedding,
    GeometryError,
};

#[test]
fn family_metric_is_constant_and_flat() {
    let geom = induced_geometry(&b3_family(), &b3()).unwrap();
    let expected = RatMatrix::from_rationals(geom.ring(), &ints(&[&[0, 1], &[1, 0]]));
    assert_eq!(geom.metric, expected);
    assert!(geom.christoffel.is_zero());
    assert!(geom.flat);
    assert_eq!(geom.jacobian.rank(), 2);
    assert!(geom.projector_laws().passed());
}

#[test]
fn coordinate_plane_is_totally_geodesic() {
    let geom = induced_geometry(&b3_member(int(0)), &b3()).unwrap();
    assert!(geom.totally_geodesic());
    for k in [rat(-1, 2), rat(3, 2)] {
        assert!(!induced_geometry(&b3_member(k), &b3()).unwrap().totally_geodesic());
    }
}

#[test]
fn polar_plane_christoffel_and_curvature() {
    let vars = Vars::new(["r", "theta"]);
    let g = RatMatrix::from_polys(
        &vars,
        2,
        2,
        vec![
            MPoly::one(&vars),
            MPoly::zero(&vars),
            MPoly::zero(&vars),
            poly("r^2", &vars),
        ],
    );
    let gamma = christoffel(&g, &g.inverse().unwrap(), 2);
    let r = RatFunc::from_poly(poly("r", &vars));
    assert_eq!(gamma.get(1, 0, 1), &r.recip());
    assert_eq!(gamma.get(0, 1, 1), &-&r);
    assert!(riemann(&gamma, &vars).is_zero());
}

#[test]
fn curved_metric_is_detected() {
    // dr² + r dθ² has Gaussian curvature 1/(4r²)
    let vars = Vars::new(["r", "theta"]);
    let g = RatMatrix::from_polys(
        &vars,
        2,
        2,
        vec![
            MPoly::one(&vars),
            MPoly::zero(&vars),
            MPoly::zero(&vars),
            poly("r", &vars),
        ],
    );
    let gamma = christoffel(&g, &g.inverse().unwrap(), 2);
    let curvature = riemann(&gamma, &vars);
    assert!(!curvature.is_zero());
    // antisymmetry in the last pair
    assert_eq!(curvature.get(0, 1, 0, 1), &-curvature.get(0, 1, 1, 0));
}

#[test]
fn unit_pulls_back_to_first_coordinate_field() {
    let a = b3();
    let emb = b3_family();
    let geom = induced_geometry(&emb, &a).unwrap();
    let split = pullback_field(&emb, &geom, a.unit()).unwrap();
    assert!(split.tangent);
    assert_eq!(split.tangential, vec![RatFunc::one(geom.ring()), RatFunc::zero(geom.ring())]);
}

#[test]
fn euler_field_is_tangent_on_the_family() {
    let a = b3();
    let emb = b3_family();
    let geom = induced_geometry(&emb, &a).unwrap();
    let split = pullback_field(&emb, &geom, a.euler()).unwrap();
    assert!(split.tangent);
}

#[test]
fn tangential_fields_have_no_normal_part() {
    let geom = induced_geometry(&b3_member(int(1)), &b3()).unwrap();
    let v: Vec<RatFunc> = vec![
        RatFunc::from_poly(poly("tau2^2 + 3", geom.ring())),
        RatFunc::from_poly(poly("tau1", geom.ring())),
    ];
    let split = geom.split(&geom.push_forward(&v)).unwrap();
    assert!(split.tangent);
    assert_eq!(split.tangential, v);
}

#[test]
fn weingarten_duality_for_a_normal_field() {
    let geom = induced_geometry(&b3_member(int(1)), &b3()).unwrap();
    let ring = geom.ring().clone();
    let x: Vec<RatFunc> = ["tau1*tau2", "tau2^3 - 1", "2*tau1 + tau2^2"]
        .iter()
        .map(|s| RatFunc::from_poly(poly(s, &ring)))
        .collect();
    let xi = geom.normal_part(&x);
    assert!(xi.iter().any(|c| !c.is_zero()));
    let shape = shape_operator(&geom, &xi).unwrap();
    assert!(shape.duality.passed, "{:?}", shape.duality);
}

#[test]
fn non_normal_field_is_rejected() {
    let geom = induced_geometry(&b3_member(int(1)), &b3()).unwrap();
    let t = geom.tangent(0);
    assert!(matches!(
        shape_operator(&geom, &t),
        Err(GeometryError::NotNormal(_))
    ));
}

#[test]
fn shape_operator_vanishes_on_totally_geodesic_member() {
    let a = b3();
    let geom = induced_geometry(&b3_member(int(0)), &a).unwrap();
    let ring = geom.ring().clone();
    let x: Vec<RatFunc> = ["1", "tau2", "tau1"]
        .iter()
        .map(|s| RatFunc::from_poly(poly(s, &ring)))
        .collect();
    let xi = geom.normal_part(&x);
    let shape = shape_operator(&geom, &xi).unwrap();
    assert!(shape.matrix.is_zero());
}

#[test]
fn degenerate_and_rank_deficient_embeddings() {
    let a = b3();
    let null_line = embedding(&["s"], &[], &["s", "0", "0"]);
    assert!(matches!(
        induced_geometry(&null_line, &a),
        Err(GeometryError::Degenerate)
    ));
    let collapsed = embedding(&["u", "v"], &[], &["u + v", "0", "1"]);
    assert!(matches!(
        induced_geometry(&collapsed, &a),
        Err(GeometryError::RankDeficient { rank: 1, expected: 2 })
    ));
}

#[test]
fn identity_embedding_has_full_projector() {
    let a = b3();
    let emb = Embedding::identity(&strings(&["s1", "s2", "s3"]));
    let geom = induced_geometry(&emb, &a).unwrap();
    assert_eq!(geom.projector, RatMatrix::identity(geom.ring(), 3));
    assert!(geom.totally_geodesic());
}
