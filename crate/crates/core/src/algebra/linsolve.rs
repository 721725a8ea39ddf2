//! Exact square linear systems over `ℚ(n, θ, K)`.

use super::field::FieldElem;
use super::mpoly::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<FieldElem>>,
    pub rhs: Vec<FieldElem>,
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<FieldElem>>, rhs: Vec<FieldElem>) -> Self {
        assert_eq!(matrix.len(), rhs.len());
        assert!(matrix.iter().all(|r| r.len() == rhs.len()), "system must be square");
        LinearSystem { matrix, rhs }
    }

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// `A x - b` for each equation.
    pub fn residuals(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let lhs = row.iter().zip(x).fold(FieldElem::zero(), |acc, (a, xi)| &acc + &(a * xi));
                &lhs - b
            })
            .collect()
    }

    pub fn map_entries(&self, mut f: impl FnMut(&FieldElem) -> Result<FieldElem>) -> Result<LinearSystem> {
        let matrix =
            self.matrix.iter().map(|r| r.iter().map(&mut f).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let rhs = self.rhs.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(LinearSystem { matrix, rhs })
    }
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = a.gcd(b);
    &a.div_exact(&g).unwrap() * b
}

fn pick_pivot(rows: impl Iterator<Item = (usize, Option<u32>)>) -> Option<usize> {
    rows.filter_map(|(r, deg)| deg.map(|d| (d, r))).min().map(|(_, r)| r)
}

/// Fraction-free (Bareiss) elimination over the polynomial ring, then
/// back-substitution in the fraction field.
pub fn solve_linear(sys: &LinearSystem) -> Result<Vec<FieldElem>> {
    let n = sys.size();
    // clear denominators row by row
    let mut a: Vec<Vec<MPoly>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let entries: Vec<&FieldElem> = row.iter().chain(std::iter::once(b)).collect();
            let l = entries.iter().fold(MPoly::one(), |l, e| lcm(&l, e.den()));
            entries.iter().map(|e| &e.num().clone() * &l.div_exact(e.den()).unwrap()).collect()
        })
        .collect();

    let mut prev = MPoly::one();
    for col in 0..n {
        let pivot =
            pick_pivot((col..n).map(|r| (r, if a[r][col].is_zero() { None } else { a[r][col].total_degree() })));
        let Some(p) = pivot else {
            return Err(Error::SingularSystem {
                kernel: kernel_certificate(&a, col).iter().map(|x| x.to_string()).collect(),
            });
        };
        a.swap(col, p);
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..=n {
                let v = &(&pivot_row[col] * &row[j]) - &(&factor * &pivot_row[j]);
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[col] = MPoly::zero();
        }
        prev = a[col][col].clone();
    }

    let mut x = vec![FieldElem::zero(); n];
    for i in (0..n).rev() {
        let mut acc = FieldElem::from_poly(a[i][n].clone());
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc = &acc - &(&FieldElem::from_poly(a[i][j].clone()) * &x[j]);
            }
        }
        x[i] = FieldElem::new(acc.num().clone(), acc.den() * &a[i][i]);
    }
    Ok(x)
}

/// A nonzero kernel vector when column `col` has no pivot after elimination.
fn kernel_certificate(a: &[Vec<MPoly>], col: usize) -> Vec<FieldElem> {
    let n = a.len();
    let mut v = vec![FieldElem::zero(); n];
    v[col] = FieldElem::one();
    for i in (0..col).rev() {
        let mut acc = -&FieldElem::from_poly(a[i][col].clone());
        for j in i + 1..col {
            acc = &acc - &(&FieldElem::from_poly(a[i][j].clone()) * &v[j]);
        }
        v[i] = &acc / &FieldElem::from_poly(a[i][i].clone());
    }
    v
}

/// Gauss-Jordan elimination directly in the fraction field.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear_naive(sys: &LinearSystem) -> Result<Vec<FieldElem>> {
    let n = sys.size();
    let mut a: Vec<Vec<FieldElem>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::SingularSystem { kernel: vec![] });
        };
        a.swap(col, p);
        let inv = a[col][col].recip()?;
        for j in col..=n {
            a[col][j] = &a[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let v = &a[r][j] - &(&f * &a[col][j]);
                    a[r][j] = v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solution set `particular + span(kernel)` of a possibly singular system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<FieldElem>,
    pub kernel: Vec<Vec<FieldElem>>,
}

/// Reduced row echelon form in the fraction field; free unknowns are set to zero
/// in the particular solution.
#[allow(clippy::needless_range_loop)]
pub fn solve_affine(sys: &LinearSystem) -> Result<AffineSolution> {
    let n = sys.size();
    let mut a: Vec<Vec<FieldElem>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].recip()?;
        for j in col..=n {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=n {
                    a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    let mut particular = vec![FieldElem::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = a[row][n].clone();
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![FieldElem::zero(); n];
            v[free] = FieldElem::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -&a[row][free];
            }
            v
        })
        .collect();
    Ok(AffineSolution { particular, kernel })
}
