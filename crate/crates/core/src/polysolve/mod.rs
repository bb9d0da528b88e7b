//! Polynomial systems: generation of the Rota-Baxter system from structure
//! constants, Gröbner bases, ideal membership, zero-dimensional solving,
//! exhaustive grid enumeration and table-completeness cover reports.

mod cover;
mod grid;
mod groebner;
mod solve;
mod univariate;

use std::collections::BTreeSet;

pub use cover::{classification_cover, CoverReport};
pub use grid::{default_grid, grid_enumerate, grid_enumerate_indices, GridSolutions};
pub use groebner::{buchberger, ideal_member, GroebnerBasis, MonomialOrder};
pub use solve::{generate_system, rational_points, solve_zero_dim, ZeroDimResult};
pub use univariate::{gaussian_roots, UniPoly};

use crate::exactnum::{Poly, Symbol};

/// Default number of S-pair reductions allowed per basis computation.
pub const DEFAULT_REDUCTIONS: u64 = 100_000;
/// Default cap on grid candidates: five values in each of nine entries.
pub const DEFAULT_GRID: u128 = 1_953_125;
/// Default cap on candidate divisors tried while splitting eliminants.
pub const DEFAULT_ROOT_CANDIDATES: u64 = 1_000_000;

/// Resource caps for the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub reductions: u64,
    pub grid: u128,
    pub root_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            reductions: DEFAULT_REDUCTIONS,
            grid: DEFAULT_GRID,
            root_candidates: DEFAULT_ROOT_CANDIDATES,
        }
    }
}

impl Budget {
    /// Default budget with the reduction cap taken from `RBALG_BUDGET`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(n) = std::env::var("RBALG_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|n| *n > 0)
        {
            b.reductions = n;
        }
        b
    }

    pub fn with_reductions(mut self, reductions: u64) -> Self {
        self.reductions = reductions;
        self
    }
}

/// A finite list of polynomials over an explicit, ordered variable list.
/// `variables[0]` is the largest variable for every monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub variables: Vec<Symbol>,
    pub generators: Vec<Poly>,
}

impl PolySystem {
    /// Variables are collected from the generators in name order.
    pub fn from_generators(generators: Vec<Poly>) -> Self {
        let vars: BTreeSet<Symbol> = generators.iter().flat_map(|g| g.variables()).collect();
        PolySystem {
            variables: vars.into_iter().collect(),
            generators,
        }
    }

    /// Uses the given variable order; symbols missing from it are appended
    /// in name order as smallest variables.
    pub fn with_variables(variables: Vec<Symbol>, generators: Vec<Poly>) -> Self {
        let mut vars = variables;
        let extra: BTreeSet<Symbol> = generators
            .iter()
            .flat_map(|g| g.variables())
            .filter(|s| !vars.contains(s))
            .collect();
        vars.extend(extra);
        PolySystem {
            variables: vars,
            generators,
        }
    }

    pub fn nonzero_generators(&self) -> impl Iterator<Item = &Poly> {
        self.generators.iter().filter(|g| !g.is_zero())
    }

    pub fn push(&mut self, g: Poly) {
        for s in g.variables() {
            if !self.variables.contains(&s) {
                self.variables.push(s);
            }
        }
        self.generators.push(g);
    }
}
