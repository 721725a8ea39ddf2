//! Tangential tensor fields on `Sⁿ` in ambient components.

use super::points::SpherePoint;
use super::poly::{ScaledPoint, SpherePoly};
use crate::algebra::Q;
use crate::error::Result;

/// Components `T[a₁…a_m]`, `a_s ∈ 0..N`, stored with slot 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientTensorField {
    nvars: usize,
    rank: usize,
    comps: Vec<SpherePoly>,
}

impl AmbientTensorField {
    pub fn scalar(f: SpherePoly) -> Self {
        AmbientTensorField { nvars: f.nvars(), rank: 0, comps: vec![f] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ambient dimension `N = n + 1`.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[SpherePoly] {
        &self.comps
    }

    pub fn component(&self, idx: &[usize]) -> &SpherePoly {
        &self.comps[self.flat(idx)]
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &a| acc * self.nvars + a)
    }

    /// Stride of slot `s` in the flat layout.
    fn stride(&self, s: usize) -> usize {
        self.nvars.pow((self.rank - 1 - s) as u32)
    }

    /// `P = δ − x xᵀ` applied to slot `s`, then reduced modulo the sphere.
    fn project_slot(&mut self, s: usize) -> Result<()> {
        let n = self.nvars;
        let stride = self.stride(s);
        for base in 0..self.comps.len() {
            if !(base / stride).is_multiple_of(n) {
                continue;
            }
            let mut dot = SpherePoly::zero(n);
            for b in 0..n {
                dot = dot.add(&self.comps[base + b * stride].mul_var(b))?;
            }
            let dot = dot.reduce_sphere()?;
            for a in 0..n {
                let i = base + a * stride;
                self.comps[i] = self.comps[i].sub(&dot.mul_var(a))?.reduce_sphere()?;
            }
        }
        Ok(())
    }

    /// `∇T`: new slot first, ambient partials of each component, then every slot projected.
    pub fn covariant_derivative(&self) -> Result<AmbientTensorField> {
        let mut comps = Vec::with_capacity(self.comps.len() * self.nvars);
        for c in 0..self.nvars {
            for t in &self.comps {
                comps.push(t.partial(c)?);
            }
        }
        let mut out = AmbientTensorField { nvars: self.nvars, rank: self.rank + 1, comps };
        for s in 0..out.rank {
            out.project_slot(s)?;
        }
        Ok(out)
    }

    /// Slot `s` contracted with the position vector, reduced modulo the sphere; zero when tangential.
    pub fn position_contraction(&self, s: usize) -> Result<Vec<SpherePoly>> {
        let n = self.nvars;
        let stride = self.stride(s);
        let mut out = Vec::new();
        for base in 0..self.comps.len() {
            if !(base / stride).is_multiple_of(n) {
                continue;
            }
            let mut dot = SpherePoly::zero(n);
            for b in 0..n {
                dot = dot.add(&self.comps[base + b * stride].mul_var(b))?;
            }
            out.push(dot.reduce_sphere()?);
        }
        Ok(out)
    }

    pub fn is_tangential(&self) -> Result<bool> {
        for s in 0..self.rank {
            if !self.position_contraction(s)?.iter().all(SpherePoly::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All components evaluated at `q`.
    pub fn eval(&self, q: &SpherePoint) -> EvaluatedTensor {
        let max_deg = self
            .comps
            .iter()
            .flat_map(|c| c.terms().map(|(m, _)| super::poly::mono_degree(m, self.nvars)))
            .max()
            .unwrap_or(0);
        let point = ScaledPoint::new(q.coords(), max_deg as usize);
        EvaluatedTensor {
            nvars: self.nvars,
            rank: self.rank,
            values: self.comps.iter().map(|c| c.eval(&point)).collect(),
        }
    }
}

/// A tensor's components at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluatedTensor {
    pub nvars: usize,
    pub rank: usize,
    pub values: Vec<Q>,
}

impl EvaluatedTensor {
    /// `T(v₁, …, v_m)`, contracting slot 0 first.
    pub fn apply(&self, vectors: &[Vec<Q>]) -> Q {
        assert_eq!(vectors.len(), self.rank);
        let mut cur = self.values.clone();
        for v in vectors {
            let chunk = cur.len() / self.nvars;
            cur = (0..chunk).map(|r| (0..self.nvars).map(|a| &cur[a * chunk + r] * &v[a]).sum()).collect();
        }
        cur.into_iter().next().expect("rank-0 remainder")
    }
}

/// `∇^0 f, ∇^1 f, …` computed on demand.
#[derive(Clone, Debug)]
pub struct DerivativeTower {
    levels: Vec<AmbientTensorField>,
}

impl DerivativeTower {
    pub fn new(f: SpherePoly) -> Self {
        DerivativeTower { levels: vec![AmbientTensorField::scalar(f)] }
    }

    pub fn get(&mut self, m: usize) -> Result<&AmbientTensorField> {
        while self.levels.len() <= m {
            let next = self.levels.last().expect("nonempty").covariant_derivative()?;
            self.levels.push(next);
        }
        Ok(&self.levels[m])
    }
}
