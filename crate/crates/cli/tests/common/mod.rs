#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use frobsub_core::algebra::{rat, MPoly, Rational, Vars};
use frobsub_core::frobenius::{product_with_line, AmbientManifold};
use frobsub_core::geometry::Embedding;
use frobsub_core::parser::parse_polynomial;
use frobsub_cli::{load_manifest, Manifest};

pub fn manifest_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../manifests")
        .join(name)
}

pub fn bundled(name: &str) -> Manifest {
    load_manifest(&manifest_path(name)).unwrap()
}

/// Runs the CLI in-process with the bundled manifest directory resolved.
pub fn cli(args: &[&str]) -> frobsub_cli::Run {
    let mut full = vec!["frobsub".to_string()];
    for a in args {
        if a.ends_with(".toml") && !a.contains('/') {
            full.push(manifest_path(a).display().to_string());
        } else {
            full.push(a.to_string());
        }
    }
    frobsub_cli::run(full)
}

pub fn embedding(sub: &[&str], params: &[&str], map: &[String]) -> Embedding {
    let mut names: Vec<String> = sub.iter().map(|s| s.to_string()).collect();
    names.extend(params.iter().map(|s| s.to_string()));
    let ring = Vars::new(names);
    let map = map.iter().map(|m| parse_polynomial(m, &ring).unwrap()).collect();
    let sub: Vec<String> = sub.iter().map(|s| s.to_string()).collect();
    let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
    Embedding::new(&sub, &params, map).unwrap()
}

pub struct Case {
    pub name: String,
    pub ambient: &'static str,
    pub embedding: Embedding,
}

pub struct Ambients {
    pub b3: AmbientManifold,
    pub plane: AmbientManifold,
    pub b3_line: AmbientManifold,
}

impl Ambients {
    pub fn load() -> Self {
        let one_dim = bundled("one_dim.toml").ambient;
        Ambients {
            b3: bundled("b3.toml").ambient,
            plane: product_with_line(&one_dim).unwrap(),
            b3_line: bundled("b3_times_line_codim2.toml").ambient,
        }
    }

    pub fn get(&self, name: &str) -> &AmbientManifold {
        match name {
            "b3" => &self.b3,
            "plane" => &self.plane,
            "b3-line" => &self.b3_line,
            other => panic!("unknown ambient {other}"),
        }
    }
}

const COEFFS: [(i64, i64); 9] = [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (1, 3), (3, 2)];

fn coeff(rng: &mut ChaCha8Rng) -> String {
    let (p, q) = *COEFFS.choose(rng).unwrap();
    if q == 1 {
        format!("({p})")
    } else {
        format!("({p}/{q})")
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> String {
    loop {
        let c = coeff(rng);
        if c != "(0)" {
            return c;
        }
    }
}

/// `c0 + c1 x + ... + c_d x^d`.
fn univariate(rng: &mut ChaCha8Rng, x: &str, degree: u32) -> String {
    let mut terms = vec![coeff(rng)];
    for e in 1..=degree {
        terms.push(format!("{}*{x}^{e}", coeff(rng)));
    }
    terms.join(" + ")
}

/// The bundled submanifolds plus the deterministic family members.
pub fn bundled_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let family = bundled("b3_family.toml").submanifold.unwrap();
    for k in [rat(-1, 2), rat(0, 1), rat(3, 2), rat(1, 1), rat(2, 1), rat(-1, 1)] {
        cases.push(Case {
            name: format!("b3-family k2={k}"),
            ambient: "b3",
            embedding: family.specialize(&[("k2".into(), k)]).unwrap(),
        });
    }
    cases.push(Case {
        name: "product-line".into(),
        ambient: "plane",
        embedding: bundled("product_line.toml").submanifold.unwrap(),
    });
    cases.push(Case {
        name: "b3-line codim2".into(),
        ambient: "b3-line",
        embedding: bundled("b3_times_line_codim2.toml").submanifold.unwrap(),
    });
    cases
}

/// Low-degree random embeddings into B3 and the two-dimensional product.
pub fn random_cases(rng: &mut ChaCha8Rng, count: usize) -> Vec<Case> {
    let mut cases = Vec::new();
    for i in 0..count {
        let kind = i % 8;
        let (ambient, sub, map): (&str, Vec<&str>, Vec<String>) = match kind {
            // Polynomial curve in B3.
            0 => (
                "b3",
                vec!["tau"],
                (0..3).map(|_| univariate(rng, "tau", 2)).collect(),
            ),
            // Affine line in B3.
            1 => (
                "b3",
                vec!["tau"],
                (0..3).map(|_| univariate(rng, "tau", 1)).collect(),
            ),
            // Affine plane in B3.
            2 => (
                "b3",
                vec!["tau1", "tau2"],
                (0..3)
                    .map(|_| format!("{} + {}*tau1 + {}*tau2", coeff(rng), coeff(rng), coeff(rng)))
                    .collect(),
            ),
            // Graph over (t1, t3) with t2 a function of t3.
            3 => (
                "b3",
                vec!["tau1", "tau2"],
                vec![
                    format!("tau1 + {}", univariate(rng, "tau2", 3)),
                    univariate(rng, "tau2", 2),
                    format!("tau2 + {}", coeff(rng)),
                ],
            ),
            // Members shaped like the bundled family.
            4 => {
                let k = coeff(rng);
                let c = coeff(rng);
                (
                    "b3",
                    vec!["tau1", "tau2"],
                    vec![
                        format!("tau1 - 2/3*{k}^2*tau2^3 + {c}"),
                        format!("{k}*tau2^2"),
                        "tau2".into(),
                    ],
                )
            }
            // Lines along the unit direction.
            5 => (
                "b3",
                vec!["tau"],
                vec![format!("{}*tau + {}", nonzero(rng), coeff(rng)), coeff(rng), coeff(rng)],
            ),
            // Curves in the product plane.
            6 => (
                "plane",
                vec!["tau"],
                (0..2).map(|_| univariate(rng, "tau", 2)).collect(),
            ),
            // Lines in the product plane.
            _ => (
                "plane",
                vec!["tau"],
                (0..2).map(|_| univariate(rng, "tau", 1)).collect(),
            ),
        };
        let embedding = embedding(&sub, &[], &map);
        cases.push(Case {
            name: format!("random-{i} [{ambient}] ({})", map.join(", ")),
            ambient,
            embedding,
        });
    }
    cases
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn is_zero_poly(p: &MPoly) -> bool {
    p.is_zero()
}
