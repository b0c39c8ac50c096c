use super::GeometryError;
use crate::algebra::{MPoly, RatMatrix, RatFunc, Rational, Vars};

/// `t^i = t^i(τ; k)` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    n: usize,
    params: usize,
    ring: Vars,
    map: Vec<MPoly>,
}

impl Embedding {
    /// `map` components are reindexed onto `sub_coords ++ params`.
    pub fn new(
        sub_coords: &[String],
        params: &[String],
        map: Vec<MPoly>,
    ) -> Result<Self, GeometryError> {
        let mut names = sub_coords.to_vec();
        names.extend(params.iter().cloned());
        let ring = Vars::new(names);
        if ring.names().iter().enumerate().any(|(i, a)| ring.names()[..i].contains(a)) {
            return Err(GeometryError::Dimension(
                "submanifold coordinates and parameters must be distinct".into(),
            ));
        }
        if sub_coords.len() > map.len() {
            return Err(GeometryError::Dimension(format!(
                "{} submanifold coordinates but only {} ambient components",
                sub_coords.len(),
                map.len()
            )));
        }
        let map = map
            .into_iter()
            .map(|p| p.reindex(&ring))
            .collect::<Result<_, _>>()?;
        Ok(Embedding {
            n: sub_coords.len(),
            params: params.len(),
            ring,
            map,
        })
    }

    /// Submanifold dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension.
    pub fn m(&self) -> usize {
        self.map.len()
    }

    pub fn codimension(&self) -> usize {
        self.m() - self.n
    }

    pub fn ring(&self) -> &Vars {
        &self.ring
    }

    pub fn sub_coords(&self) -> &[String] {
        &self.ring.names()[..self.n]
    }

    pub fn params(&self) -> &[String] {
        &self.ring.names()[self.n..]
    }

    pub fn param_count(&self) -> usize {
        self.params
    }

    pub fn map(&self) -> &[MPoly] {
        &self.map
    }

    /// Composes an ambient polynomial with the embedding.
    pub fn pullback(&self, p: &MPoly) -> MPoly {
        let images: Vec<Option<MPoly>> = self.map.iter().cloned().map(Some).collect();
        p.compose(&images, &self.ring)
    }

    pub fn jacobian(&self) -> RatMatrix {
        RatMatrix::from_fn(&self.ring, self.m(), self.n, |i, a| {
            RatFunc::from_poly(self.map[i].differentiate(a))
        })
    }

    /// Substitutes values for some parameters, dropping them from the ring.
    pub fn specialize(&self, values: &[(String, Rational)]) -> Result<Embedding, GeometryError> {
        let mut map = self.map.clone();
        for (name, value) in values {
            let index = self
                .params()
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| {
                    GeometryError::Dimension(format!("unknown parameter `{name}`"))
                })?;
            map = map
                .iter()
                .map(|p| p.eval_var(self.n + index, value))
                .collect();
        }
        let remaining: Vec<String> = self
            .params()
            .iter()
            .filter(|p| !values.iter().any(|(name, _)| name == *p))
            .cloned()
            .collect();
        Embedding::new(self.sub_coords(), &remaining, map)
    }

    /// The identity parametrization `t^i = τ^i` with the given names.
    pub fn identity(sub_coords: &[String]) -> Embedding {
        let ring = Vars::new(sub_coords.to_vec());
        let map = (0..ring.len()).map(|i| MPoly::var(&ring, i)).collect();
        Embedding {
            n: ring.len(),
            params: 0,
            ring,
            map,
        }
    }
}
