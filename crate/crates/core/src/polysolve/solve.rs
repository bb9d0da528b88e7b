//! The Rota-Baxter polynomial system and exact solving of zero-dimensional
//! systems by lex elimination and back-substitution.

use std::collections::BTreeSet;
use std::fmt;

use super::univariate::{gaussian_roots, UniPoly};
use super::{buchberger, Budget, MonomialOrder, PolySystem};
use crate::algebra::Algebra;
use crate::error::SolveError;
use crate::exactnum::{Assignment, Poly, Scalar, Symbol};
use crate::operators::entry_symbol_name;

/// The system `Σ (C_kl^m r_ik r_jl + λ C_ij^k r_km - C_kj^l r_ik r_lm -
/// C_il^k r_jl r_km) = 0`, one generator per `(i, j, m)` in that order, in
/// the unknowns `r11, r12, ..., rnn` (row-major).
///
/// Built directly from the structure constants, independently of the
/// residual code in `operators`. Symbolic structure constants become
/// additional variables; recorded denominators are cleared.
pub fn generate_system(a: &Algebra, weight: &Scalar) -> PolySystem {
    let n = a.dim();
    let r = |i: usize, j: usize| Poly::var(&entry_symbol_name("r", i, j));
    let c = |i: usize, j: usize, k: usize| a.constant(i, j, k);
    let mut generators = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    for l in 0..n {
                        if !c(k, l, m).is_zero() {
                            acc = &acc + &(c(k, l, m) * &Scalar::from_poly(&r(i, k) * &r(j, l)));
                        }
                        if !c(k, j, l).is_zero() {
                            acc = &acc - &(c(k, j, l) * &Scalar::from_poly(&r(i, k) * &r(l, m)));
                        }
                        if !c(i, l, k).is_zero() {
                            acc = &acc - &(c(i, l, k) * &Scalar::from_poly(&r(j, l) * &r(k, m)));
                        }
                    }
                    if !c(i, j, k).is_zero() {
                        acc = &acc + &(&(weight * c(i, j, k)) * &Scalar::from_poly(r(k, m)));
                    }
                }
                generators.push(acc.numerator().clone());
            }
        }
    }
    let variables: Vec<Symbol> = (0..n * n)
        .map(|k| Symbol::new(&entry_symbol_name("r", k / n, k % n)))
        .collect();
    PolySystem::with_variables(variables, generators)
}

/// Result of [`solve_zero_dim`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDimResult {
    /// All common zeros (empty when the system is inconsistent).
    Points(Vec<Assignment>),
    /// Infinitely many zeros; carries the lex Gröbner basis.
    NotZeroDimensional { basis: Vec<Poly> },
    /// Finitely many zeros, but some eliminant has roots outside `Q(i)`.
    NonRational { eliminants: Vec<Poly> },
}

impl fmt::Display for ZeroDimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroDimResult::Points(p) => write!(f, "{} solution point(s)", p.len()),
            ZeroDimResult::NotZeroDimensional { .. } => write!(f, "not zero-dimensional"),
            ZeroDimResult::NonRational { eliminants } => {
                let e: Vec<String> = eliminants.iter().map(|p| p.to_string()).collect();
                write!(f, "non-rational roots: {}", e.join("; "))
            }
        }
    }
}

/// Solves a system with finitely many zeros over the Gaussian rationals.
///
/// Uses a lex basis with `variables[0]` largest: the eliminant in the last
/// variable is split into linear factors, each root is substituted, and the
/// remaining system is solved recursively.
pub fn solve_zero_dim(system: &PolySystem, budget: &Budget) -> Result<ZeroDimResult, SolveError> {
    let gens: Vec<Poly> = system.nonzero_generators().cloned().collect();
    let out = solve_rec(&system.variables, gens, budget, false)?;
    Ok(match out {
        ZeroDimResult::Points(mut points) => {
            let key = |p: &Assignment| -> Vec<_> { system.variables.iter().map(|v| p.get(v).cloned()).collect() };
            points.sort_by_key(key);
            points.dedup();
            ZeroDimResult::Points(points)
        }
        other => other,
    })
}

/// The zeros in `Q(i)` of a zero-dimensional system, skipping branches
/// whose coordinates leave `Q(i)`. Empty when the system has infinitely
/// many zeros.
pub fn rational_points(system: &PolySystem, budget: &Budget) -> Result<Vec<Assignment>, SolveError> {
    let gens: Vec<Poly> = system.nonzero_generators().cloned().collect();
    Ok(match solve_rec(&system.variables, gens, budget, true)? {
        ZeroDimResult::Points(points) => points,
        _ => Vec::new(),
    })
}

fn solve_rec(vars: &[Symbol], gens: Vec<Poly>, budget: &Budget, partial: bool) -> Result<ZeroDimResult, SolveError> {
    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(ZeroDimResult::Points(Vec::new()));
    }
    if vars.is_empty() {
        return Ok(ZeroDimResult::Points(vec![Assignment::new()]));
    }
    let used: BTreeSet<Symbol> = gens.iter().flat_map(|g| g.variables()).collect();
    if vars.iter().any(|v| !used.contains(v)) {
        return Ok(ZeroDimResult::NotZeroDimensional { basis: gens });
    }
    let gb = buchberger(
        &PolySystem::with_variables(vars.to_vec(), gens),
        MonomialOrder::Lex,
        budget,
    )?;
    if gb.is_unit() {
        return Ok(ZeroDimResult::Points(Vec::new()));
    }
    if !gb.is_zero_dimensional() {
        return Ok(ZeroDimResult::NotZeroDimensional {
            basis: gb.polys().to_vec(),
        });
    }
    let last = vars.last().unwrap();
    let only_last: BTreeSet<Symbol> = [last.clone()].into_iter().collect();
    let eliminant = gb
        .restricted_to(&only_last)
        .into_iter()
        .next()
        .expect("zero-dimensional lex basis has a univariate eliminant");
    let uni = UniPoly::from_poly(&eliminant, last).expect("univariate");
    let (roots, rest) = gaussian_roots(&uni, budget.root_candidates)?;
    if rest.degree() > 0 && !partial {
        return Ok(ZeroDimResult::NonRational {
            eliminants: vec![eliminant],
        });
    }
    let mut points = Vec::new();
    let mut irrational = Vec::new();
    for root in roots {
        let at: Assignment = [(last.clone(), root.clone())].into_iter().collect();
        let sub: Vec<Poly> = gb.polys().iter().map(|g| g.substitute(&at)).collect();
        match solve_rec(&vars[..vars.len() - 1], sub, budget, partial)? {
            ZeroDimResult::Points(ps) => {
                for mut p in ps {
                    p.insert(last.clone(), root.clone());
                    points.push(p);
                }
            }
            ZeroDimResult::NonRational { eliminants } => irrational.extend(eliminants),
            ZeroDimResult::NotZeroDimensional { basis } => {
                return Ok(ZeroDimResult::NotZeroDimensional { basis });
            }
        }
    }
    if !irrational.is_empty() && !partial {
        return Ok(ZeroDimResult::NonRational { eliminants: irrational });
    }
    Ok(ZeroDimResult::Points(points))
}
