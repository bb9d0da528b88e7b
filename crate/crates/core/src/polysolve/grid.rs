//! Exhaustive enumeration of operators with entries from a finite grid.
//!
//! Candidates are numbered in mixed radix with entry `(1,1)` most
//! significant, so increasing codes are lexicographic in grid order.
//! Real grids with concrete real constants run on scaled `i64`
//! arithmetic; anything else falls back to exact Gaussian rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::Budget;
use crate::algebra::Algebra;
use crate::error::SolveError;
use crate::exactnum::{GaussRat, Scalar};
use crate::operators::Operator;

/// `{-1, 0, 1/2, 1, 2}`: the values `{-1, 0, 1, 1/2, 2}`, already closed
/// under `x ↦ 1 - x`.
pub fn default_grid() -> Vec<GaussRat> {
    let mut g: Vec<GaussRat> = [(-1, 1), (0, 1), (1, 1), (1, 2), (2, 1)]
        .iter()
        .map(|&(p, q)| GaussRat::frac(p, q))
        .collect();
    let closure: Vec<GaussRat> = g.iter().map(|x| &GaussRat::one() - x).collect();
    g.extend(closure);
    g.sort();
    g.dedup();
    g
}

/// Grid solutions stored as candidate codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolutions {
    pub dim: usize,
    pub grid: Vec<GaussRat>,
    pub codes: Vec<u64>,
}

impl GridSolutions {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Grid indices of entry `(i,j)` in row-major order.
    pub fn digits(&self, code: u64) -> Vec<usize> {
        decode(code, self.grid.len(), self.dim * self.dim)
    }

    pub fn entries(&self, code: u64) -> Vec<GaussRat> {
        self.digits(code).into_iter().map(|d| self.grid[d].clone()).collect()
    }

    pub fn operator(&self, k: usize) -> Operator {
        Operator::from_gauss(self.dim, self.entries(self.codes[k]))
    }

    pub fn operators(&self) -> impl Iterator<Item = Operator> + '_ {
        (0..self.codes.len()).map(|k| self.operator(k))
    }
}

fn decode(mut code: u64, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % base as u64) as usize;
        code /= base as u64;
    }
    out
}

/// All operators with entries in `grid` satisfying the Rota-Baxter
/// relation of the given weight, in lexicographic order of the (sorted,
/// deduplicated) grid.
pub fn grid_enumerate(a: &Algebra, weight: &Scalar, grid: &[GaussRat], budget: &Budget) -> Result<Vec<Operator>, SolveError> {
    Ok(grid_enumerate_indices(a, weight, grid, budget)?.operators().collect())
}

pub fn grid_enumerate_indices(
    a: &Algebra,
    weight: &Scalar,
    grid: &[GaussRat],
    budget: &Budget,
) -> Result<GridSolutions, SolveError> {
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    let n = a.dim();
    let cells = (n * n) as u32;
    let candidates = (grid.len() as u128).checked_pow(cells).unwrap_or(u128::MAX);
    if candidates > budget.grid || candidates > u64::MAX as u128 {
        return Err(SolveError::GridBudgetExceeded {
            candidates,
            budget: budget.grid,
        });
    }
    let total = candidates as u64;
    let constants = a.concrete_table()?;
    let lam = weight.as_constant().ok_or_else(|| {
        SolveError::Scalar(crate::error::ScalarError::Parse(format!("weight {} is not concrete", weight)))
    })?;
    let codes = match IntProblem::new(n, &constants, &lam, &grid) {
        Some(p) => (0..total)
            .into_par_iter()
            .filter(|&code| p.check(&decode(code, grid.len(), n * n)))
            .collect(),
        None => {
            let sparse = sparse_constants(n, &constants);
            (0..total)
                .into_par_iter()
                .filter(|&code| {
                    let r: Vec<GaussRat> = decode(code, grid.len(), n * n)
                        .into_iter()
                        .map(|d| grid[d].clone())
                        .collect();
                    exact_check(n, &sparse, &lam, &r)
                })
                .collect()
        }
    };
    Ok(GridSolutions { dim: n, grid, codes })
}

fn sparse_constants<T: Clone + Zero>(n: usize, c: &[T]) -> Vec<(usize, usize, usize, T)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &c[(i * n + j) * n + k];
                if !v.is_zero() {
                    out.push((i, j, k, v.clone()));
                }
            }
        }
    }
    out
}

/// Integer form of the residual, scaled by `D^2 E F` where `D`, `E`, `F`
/// clear the denominators of grid values, constants and the weight.
struct IntProblem {
    n: usize,
    sparse: Vec<(usize, usize, usize, i64)>,
    values: Vec<i64>,
    f: i64,
    dl: i64,
}

fn common_denominator(values: &[&GaussRat]) -> Option<BigInt> {
    let mut l = BigInt::one();
    for v in values {
        if !v.is_real() {
            return None;
        }
        l = l.lcm(v.re().denom());
    }
    Some(l)
}

fn scaled(v: &GaussRat, by: &BigInt) -> Option<i64> {
    let x = v.re() * num_rational::BigRational::from_integer(by.clone());
    if !x.is_integer() {
        return None;
    }
    let i = x.to_integer().to_i64()?;
    if i.unsigned_abs() > 1 << 20 {
        return None;
    }
    Some(i)
}

impl IntProblem {
    fn new(n: usize, constants: &[GaussRat], lam: &GaussRat, grid: &[GaussRat]) -> Option<Self> {
        let d = common_denominator(&grid.iter().collect::<Vec<_>>())?;
        let e = common_denominator(&constants.iter().collect::<Vec<_>>())?;
        let f = common_denominator(&[lam])?;
        let values = grid.iter().map(|v| scaled(v, &d)).collect::<Option<Vec<_>>>()?;
        let sparse = sparse_constants(n, constants)
            .into_iter()
            .map(|(i, j, k, c)| Some((i, j, k, scaled(&c, &e)?)))
            .collect::<Option<Vec<_>>>()?;
        let f_i = f.to_i64()?;
        let l = scaled(lam, &f)?;
        let d_i = d.to_i64()?;
        Some(IntProblem {
            n,
            sparse,
            values,
            f: f_i,
            dl: d_i.checked_mul(l)?,
        })
    }

    /// `F (R(e_i)R(e_j) - R(R(e_i)e_j + e_iR(e_j))) + D L R(e_i e_j)` on
    /// scaled integers, pair by pair with early exit.
    fn check(&self, digits: &[usize]) -> bool {
        let n = self.n;
        let r: Vec<i128> = digits.iter().map(|&d| self.values[d] as i128).collect();
        let (f, dl) = (self.f as i128, self.dl as i128);
        let mut quad = vec![0i128; n];
        let mut inner = vec![0i128; n];
        for i in 0..n {
            for j in 0..n {
                quad.iter_mut().for_each(|x| *x = 0);
                inner.iter_mut().for_each(|x| *x = 0);
                for &(k, l, m, cv) in &self.sparse {
                    let cv = cv as i128;
                    quad[m] += cv * r[i * n + k] * r[j * n + l];
                    // argument of R, scaled so that one application of R
                    // produces the F and D L factors
                    if l == j {
                        inner[m] -= f * cv * r[i * n + k];
                    }
                    if k == i {
                        inner[m] -= f * cv * r[j * n + l];
                    }
                    if k == i && l == j {
                        inner[m] += dl * cv;
                    }
                }
                for m in 0..n {
                    let mut v = f * quad[m];
                    for (t, &x) in inner.iter().enumerate() {
                        if x != 0 {
                            v += x * r[t * n + m];
                        }
                    }
                    if v != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn exact_check(n: usize, sparse: &[(usize, usize, usize, GaussRat)], lam: &GaussRat, r: &[GaussRat]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut a = vec![GaussRat::zero(); n];
            let mut tmp = vec![GaussRat::zero(); n];
            let mut b = vec![GaussRat::zero(); n];
            for (k, l, m, cv) in sparse {
                a[*m] += &(&(cv * &r[i * n + k]) * &r[j * n + l]);
                if *l == j {
                    tmp[*m] += &(cv * &r[i * n + k]);
                }
                if *k == i {
                    tmp[*m] += &(cv * &r[j * n + l]);
                }
                if *k == i && *l == j {
                    b[*m] += cv;
                }
            }
            for t in 0..n {
                let coef = &(lam * &b[t]) - &tmp[t];
                if coef.is_zero() {
                    continue;
                }
                for m in 0..n {
                    a[m] += &(&coef * &r[t * n + m]);
                }
            }
            if a.iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
    }
    true
}
