//! Completeness check of a list of operator families against exhaustive
//! grid enumeration.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{grid_enumerate_indices, Budget, GridSolutions};
use crate::algebra::Algebra;
use crate::error::SolveError;
use crate::exactnum::{Assignment, GaussRat, Scalar, Symbol};
use crate::operators::{family_member, Operator, OperatorFamily};

/// Which grid solutions each family explains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub total: usize,
    /// `(family name, number of grid solutions it contains)`.
    pub hits: Vec<(String, usize)>,
    /// Grid solutions contained in no family.
    pub unmatched: Vec<Operator>,
    /// Families containing no grid solution.
    pub never_hit: Vec<String>,
}

impl CoverReport {
    pub fn complete(&self) -> bool {
        self.unmatched.is_empty()
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid solutions: {}", self.total)?;
        for (name, n) in &self.hits {
            writeln!(f, "  family {}: {} hit(s)", name, n)?;
        }
        writeln!(f, "unmatched: {}", self.unmatched.len())?;
        for r in &self.unmatched {
            writeln!(f, "  {}", r)?;
        }
        if !self.never_hit.is_empty() {
            writeln!(f, "families never hit: {}", self.never_hit.join(", "))?;
        }
        Ok(())
    }
}

enum Pat {
    Const(GaussRat),
    Sym(Symbol),
    Other(Scalar),
}

/// Structural matcher: constant entries compare, bare-symbol entries bind,
/// everything else is evaluated once all parameters are bound. Falls back
/// to [`family_member`] when the operator leaves parameters unbound.
struct Matcher<'a> {
    family: &'a OperatorFamily,
    pats: Vec<Pat>,
    params: usize,
    plain: bool,
}

impl<'a> Matcher<'a> {
    fn new(family: &'a OperatorFamily) -> Self {
        let pats: Vec<Pat> = family
            .operator
            .entries()
            .iter()
            .map(|e| {
                if let Some(c) = e.as_constant() {
                    Pat::Const(c)
                } else if let Some(s) = e.as_symbol() {
                    Pat::Sym(s.clone())
                } else {
                    Pat::Other(e.clone())
                }
            })
            .collect();
        let plain = family.relations.is_empty()
            && family.exclusions.is_empty()
            && pats.iter().all(|p| !matches!(p, Pat::Other(_)));
        Matcher {
            family,
            params: family.parameters().len(),
            pats,
            plain,
        }
    }

    fn matches(&self, entries: &[GaussRat]) -> bool {
        let mut bound: Vec<(&Symbol, &GaussRat)> = Vec::new();
        for (p, v) in self.pats.iter().zip(entries) {
            match p {
                Pat::Const(c) => {
                    if c != v {
                        return false;
                    }
                }
                Pat::Sym(s) => match bound.iter().find(|(t, _)| *t == s) {
                    Some((_, w)) => {
                        if *w != v {
                            return false;
                        }
                    }
                    None => bound.push((s, v)),
                },
                Pat::Other(_) => {}
            }
        }
        if self.plain && bound.len() == self.params {
            return true;
        }
        if bound.len() == self.params {
            let point: Assignment = bound.into_iter().map(|(s, v)| (s.clone(), v.clone())).collect();
            return self.family.admits(&point)
                && self
                    .pats
                    .iter()
                    .zip(entries)
                    .all(|(p, v)| match p {
                        Pat::Other(e) => matches!(e.eval(&point), Ok(x) if &x == v),
                        _ => true,
                    });
        }
        let dim = self.family.operator.dim();
        family_member(self.family, &Operator::from_gauss(dim, entries.to_vec())).is_some()
    }
}

/// Enumerates the weight-1 grid solutions of `a` and matches each against
/// the families.
pub fn classification_cover(
    a: &Algebra,
    families: &[OperatorFamily],
    grid: &[GaussRat],
    budget: &Budget,
) -> Result<CoverReport, SolveError> {
    let sols = grid_enumerate_indices(a, &Scalar::one(), grid, budget)?;
    Ok(cover_solutions(&sols, families))
}

/// Matches precomputed grid solutions against the families.
pub fn cover_solutions(sols: &GridSolutions, families: &[OperatorFamily]) -> CoverReport {
    let matchers: Vec<Matcher> = families.iter().map(Matcher::new).collect();
    let masks: Vec<Vec<bool>> = sols
        .codes
        .par_iter()
        .map(|&code| {
            let entries = sols.entries(code);
            matchers.iter().map(|m| m.matches(&entries)).collect()
        })
        .collect();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unmatched = Vec::new();
    for (k, mask) in masks.iter().enumerate() {
        let mut any = false;
        for (f, hit) in mask.iter().enumerate() {
            if *hit {
                *counts.entry(f).or_default() += 1;
                any = true;
            }
        }
        if !any {
            unmatched.push(sols.operator(k));
        }
    }
    let hits: Vec<(String, usize)> = families
        .iter()
        .enumerate()
        .map(|(f, fam)| (fam.name.clone(), counts.get(&f).copied().unwrap_or(0)))
        .collect();
    let never_hit = hits.iter().filter(|(_, n)| *n == 0).map(|(name, _)| name.clone()).collect();
    CoverReport {
        total: sols.len(),
        hits,
        unmatched,
        never_hit,
    }
}
