//! Rational points on the unit sphere.

use num_traits::{One, Zero};

use crate::algebra::{q_frac, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoint {
    coords: Vec<Q>,
}

impl SpherePoint {
    /// Checks `Σ x_i² = 1` exactly.
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        let norm: Q = coords.iter().map(|c| c * c).sum();
        if !norm.is_one() {
            return Err(Error::Parse(format!("point has squared norm {norm}, not 1")));
        }
        Ok(SpherePoint { coords })
    }

    /// Inverse stereographic projection of `u ∈ ℚⁿ` from the pole `(0, …, 0, 1)`.
    pub fn from_stereographic(u: &[Q]) -> Self {
        let s: Q = u.iter().map(|c| c * c).sum();
        let denom = &s + Q::one();
        let mut coords: Vec<Q> = u.iter().map(|c| Q::from_integer(2.into()) * c / &denom).collect();
        coords.push((&s - Q::one()) / &denom);
        SpherePoint { coords }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Dimension `n` of the sphere the point lies on.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Deterministic points on `Sⁿ` in general position (no zero coordinates).
pub fn sphere_points(n: usize, count: usize) -> Vec<SpherePoint> {
    const SEEDS: [(i64, i64); 9] = [(1, 2), (2, 3), (-1, 3), (3, 4), (-2, 5), (1, 5), (4, 3), (-3, 7), (5, 2)];
    let mut out = Vec::with_capacity(count);
    let mut offset = 0;
    while out.len() < count {
        // each pass over the seeds is scaled so later passes give new points
        let pass = (offset / SEEDS.len()) as i64 + 1;
        let u: Vec<Q> = (0..n)
            .map(|i| {
                let (a, b) = SEEDS[(offset + 2 * i) % SEEDS.len()];
                q_frac(a * pass, b)
            })
            .collect();
        offset += 1;
        let p = SpherePoint::from_stereographic(&u);
        if p.coords.iter().all(|c| !c.is_zero()) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_unit() {
        for n in 2..=4 {
            for p in sphere_points(n, 4) {
                assert_eq!(p.n(), n);
                SpherePoint::new(p.coords().to_vec()).unwrap();
            }
        }
        assert!(SpherePoint::new(vec![q_frac(1, 2), q_frac(1, 2)]).is_err());
        let p = SpherePoint::new(vec![q_frac(3, 5), q_frac(0, 1), q_frac(4, 5)]).unwrap();
        assert_eq!(p.n(), 2);
    }

    #[test]
    fn many_points_are_distinct() {
        for n in 1..=4 {
            let pts = sphere_points(n, 30);
            assert_eq!(pts.len(), 30);
            for (i, a) in pts.iter().enumerate() {
                assert!(pts[i + 1..].iter().all(|b| b != a));
            }
        }
    }
}
