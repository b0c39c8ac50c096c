#![allow(dead_code)]

use frobsub_core::algebra::{int, MPoly, Rational, Vars};
use frobsub_core::frobenius::{infer_diagonal_euler, AmbientManifold};
use frobsub_core::parser::{parse_polynomial, parse_vector_field};

pub const B3_F: &str =
    "1/2*t1^2*t3 + 1/2*t1*t2^2 + 1/6*t2^3*t3 + 1/6*t2^2*t3^3 + 1/210*t3^7";

pub fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect()
}

pub fn poly(text: &str, vars: &Vars) -> MPoly {
    parse_polynomial(text, vars).unwrap()
}

pub fn field(text: &str, vars: &Vars) -> Vec<MPoly> {
    parse_vector_field(text, vars).unwrap()
}

pub fn b3_vars() -> Vars {
    Vars::new(["t1", "t2", "t3"])
}

pub fn b3_metric() -> Vec<Vec<Rational>> {
    ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
}

pub fn b3_with_prepotential(f: &str) -> AmbientManifold {
    let vars = b3_vars();
    let f = poly(f, &vars);
    let unit = field("d_t1", &vars);
    let euler = field("t1*d_t1 + 2/3*t2*d_t2 + 1/3*t3*d_t3", &vars);
    AmbientManifold::from_prepotential(f, b3_metric(), unit, euler).unwrap()
}

pub fn b3() -> AmbientManifold {
    let vars = b3_vars();
    let f = poly(B3_F, &vars);
    let unit = field("d_t1", &vars);
    let inferred = infer_diagonal_euler(&f, &b3_metric(), &unit).unwrap();
    AmbientManifold::from_prepotential(f, b3_metric(), unit, inferred.field).unwrap()
}

pub fn one_dim() -> AmbientManifold {
    let vars = Vars::new(["t"]);
    AmbientManifold::from_prepotential(
        poly("1/6*t^3", &vars),
        ints(&[&[1]]),
        field("d_t", &vars),
        field("t*d_t", &vars),
    )
    .unwrap()
}

pub fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn embedding(sub: &[&str], params: &[&str], map: &[&str]) -> frobsub_core::geometry::Embedding {
    let mut names = strings(sub);
    names.extend(strings(params));
    let ring = Vars::new(names);
    let map = map.iter().map(|m| poly(m, &ring)).collect();
    frobsub_core::geometry::Embedding::new(&strings(sub), &strings(params), map).unwrap()
}

pub fn b3_family() -> frobsub_core::geometry::Embedding {
    embedding(
        &["tau1", "tau2"],
        &["k2"],
        &["tau1 - 2/3*k2^2*tau2^3", "k2*tau2^2", "tau2"],
    )
}

pub fn b3_member(k: Rational) -> frobsub_core::geometry::Embedding {
    b3_family().specialize(&[("k2".to_string(), k)]).unwrap()
}
