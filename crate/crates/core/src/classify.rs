//! Isomorphism testing for algebras of dimension at most three and
//! normalization of algebras to catalog labels.
//!
//! An isomorphism `T: A -> B` is a matrix whose row `i` is `T(e_i)`. The
//! search first compares basis-independent invariants, then tries small
//! seeded matrices row by row, and finally decides the transport system
//! `T(x·y) = T(x)·T(y)`, `u·det T = 1` with a Gröbner basis over `C`.
//! Witnesses are extracted by fixing unknowns to seed values one at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{Algebra, LieInvariants};
use crate::catalog;
use crate::constructions::induced_pre_lie;
use crate::error::ClassifyError;
use crate::exactnum::{Assignment, GaussRat, Poly, Scalar, Symbol};
use crate::linalg::{self, det_poly};
use crate::operators::{entry_symbol_name, fmt_assignment, Operator, OperatorFamily};
use crate::polysolve::{
    buchberger, gaussian_roots, rational_points, solve_zero_dim, Budget, GroebnerBasis, MonomialOrder, PolySystem, UniPoly, ZeroDimResult,
};

/// Basis-independent data used as a fast negative test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoInvariants {
    pub dim: usize,
    pub commutative: bool,
    pub associative: bool,
    /// Rank of `x -> L_x`.
    pub mult_rank: usize,
    /// `dim A·A`.
    pub square_dim: usize,
    /// `dim A^k` for `k = 1..=dim+1`, with `A^k` spanned by `A^i A^j`, `i+j=k`.
    pub power_dims: Vec<usize>,
    pub left_annihilator_dim: usize,
    pub right_annihilator_dim: usize,
    /// Ranks of `(x,y) -> tr(L_x L_y)` and `tr(R_x R_y)`.
    pub left_trace_form_rank: usize,
    pub right_trace_form_rank: usize,
    /// Whether `x -> tr L_x` and `x -> tr R_x` are nonzero.
    pub left_trace_nonzero: bool,
    pub right_trace_nonzero: bool,
    /// Ranks of `L_x`, `R_x` for a generic element `x`.
    pub generic_left_rank: usize,
    pub generic_right_rank: usize,
    /// Which coefficients of the characteristic polynomials of `L_x`, `R_x`
    /// (generic `x`) vanish identically, from degree 0 up.
    pub left_charpoly_zeros: Vec<bool>,
    pub right_charpoly_zeros: Vec<bool>,
    /// `dim Der(A)`.
    pub derivation_dim: usize,
    /// Lie invariants of the commutator algebra, when it is Lie.
    pub commutator: Option<LieInvariants>,
}

impl IsoInvariants {
    /// Names of the fields on which two records differ.
    pub fn differences(&self, other: &IsoInvariants) -> Vec<&'static str> {
        let mut out = Vec::new();
        macro_rules! cmp {
            ($($f:ident),*) => {$(
                if self.$f != other.$f {
                    out.push(stringify!($f));
                }
            )*};
        }
        cmp!(
            dim,
            commutative,
            associative,
            mult_rank,
            square_dim,
            power_dims,
            left_annihilator_dim,
            right_annihilator_dim,
            left_trace_form_rank,
            right_trace_form_rank,
            left_trace_nonzero,
            right_trace_nonzero,
            generic_left_rank,
            generic_right_rank,
            left_charpoly_zeros,
            right_charpoly_zeros,
            derivation_dim,
            commutator
        );
        out
    }
}

impl fmt::Display for IsoInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        writeln!(f, "commutative {}, associative {}", self.commutative, self.associative)?;
        writeln!(f, "mult rank {}, dim A·A {}, powers {:?}", self.mult_rank, self.square_dim, self.power_dims)?;
        writeln!(
            f,
            "annihilators: left {}, right {}",
            self.left_annihilator_dim, self.right_annihilator_dim
        )?;
        writeln!(
            f,
            "trace forms: left rank {}, right rank {}; traces nonzero: left {}, right {}",
            self.left_trace_form_rank, self.right_trace_form_rank, self.left_trace_nonzero, self.right_trace_nonzero
        )?;
        writeln!(
            f,
            "generic ranks: left {}, right {}",
            self.generic_left_rank, self.generic_right_rank
        )?;
        writeln!(f, "dim Der {}", self.derivation_dim)?;
        match &self.commutator {
            Some(l) => write!(f, "commutator: {}", l),
            None => write!(f, "commutator: not Lie"),
        }
    }
}

fn require_concrete(a: &Algebra) -> Result<Vec<GaussRat>, ClassifyError> {
    a.concrete_constants()
        .ok_or_else(|| ClassifyError::NotConcrete(format!("{:?}", a.parameters())))
}

fn require_dim(a: &Algebra) -> Result<usize, ClassifyError> {
    let n = a.dim();
    if n > 3 {
        return Err(ClassifyError::UnsupportedDimension(n));
    }
    Ok(n)
}

/// Concrete multiplication of coordinate vectors.
fn mul_vec(c: &[GaussRat], n: usize, x: &[GaussRat], y: &[GaussRat]) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for (k, o) in out.iter_mut().enumerate() {
                let cc = &c[(i * n + j) * n + k];
                if !cc.is_zero() {
                    *o += &(&xy * cc);
                }
            }
        }
    }
    out
}

fn span_products(c: &[GaussRat], n: usize, a: &linalg::Matrix, b: &linalg::Matrix) -> linalg::Matrix {
    let mut rows = Vec::new();
    for x in a {
        for y in b {
            rows.push(mul_vec(c, n, x, y));
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    linalg::row_space(&rows)
}

/// `M[j][k]` = coefficient of `e_k` in `e_i e_j` (left) or `e_j e_i` (right).
fn mult_matrix(c: &[GaussRat], n: usize, i: usize, left: bool) -> linalg::Matrix {
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if left {
                        c[(i * n + j) * n + k].clone()
                    } else {
                        c[(j * n + i) * n + k].clone()
                    }
                })
                .collect()
        })
        .collect()
}

fn generic_matrix(c: &[GaussRat], n: usize, left: bool) -> Vec<Vec<Poly>> {
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(&format!("_x{}", i + 1))).collect();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let mut acc = Poly::zero();
                    for (i, x) in xs.iter().enumerate() {
                        let cc = if left {
                            &c[(i * n + j) * n + k]
                        } else {
                            &c[(j * n + i) * n + k]
                        };
                        if !cc.is_zero() {
                            acc = &acc + &x.scale(cc);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn generic_rank(m: &[Vec<Poly>]) -> usize {
    let n = m.len();
    for k in (1..=n).rev() {
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
                if !det_poly(&minor).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn charpoly_zeros(m: &[Vec<Poly>]) -> Vec<bool> {
    let n = m.len();
    let z = Symbol::new("_z");
    let shifted: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = -&m[i][j];
                    if i == j {
                        &base + &Poly::symbol(z.clone())
                    } else {
                        base
                    }
                })
                .collect()
        })
        .collect();
    let coeffs = det_poly(&shifted).coefficients_in(&z);
    (0..=n).map(|d| coeffs.get(d).is_none_or(|p| p.is_zero())).collect()
}

fn annihilator_dim(c: &[GaussRat], n: usize, left: bool) -> usize {
    // x with x·e_j = 0 (left) or e_j·x = 0 (right) for all j
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push(
                (0..n)
                    .map(|i| {
                        if left {
                            c[(i * n + j) * n + k].clone()
                        } else {
                            c[(j * n + i) * n + k].clone()
                        }
                    })
                    .collect::<Vec<_>>(),
            );
        }
    }
    n - linalg::rank(&rows)
}

fn trace_form_rank(c: &[GaussRat], n: usize, left: bool) -> (usize, bool) {
    let ms: Vec<linalg::Matrix> = (0..n).map(|i| mult_matrix(c, n, i, left)).collect();
    let form: linalg::Matrix = (0..n)
        .map(|i| (0..n).map(|j| linalg::trace(&linalg::mat_mul(&ms[i], &ms[j]))).collect())
        .collect();
    let nonzero = ms.iter().any(|m| !linalg::trace(m).is_zero());
    (linalg::rank(&form), nonzero)
}

fn derivation_dim(c: &[GaussRat], n: usize) -> usize {
    // D(e_i e_j) = D(e_i) e_j + e_i D(e_j), unknown d_km at column k*n+m
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![GaussRat::zero(); n * n];
                for k in 0..n {
                    row[k * n + m] += &c[(i * n + j) * n + k];
                }
                for p in 0..n {
                    row[i * n + p] -= &c[(p * n + j) * n + m];
                    row[j * n + p] -= &c[(i * n + p) * n + m];
                }
                rows.push(row);
            }
        }
    }
    n * n - linalg::rank(&rows)
}

/// Invariants of a concrete algebra of dimension at most three.
pub fn iso_invariants(a: &Algebra) -> Result<IsoInvariants, ClassifyError> {
    let n = require_dim(a)?;
    let c = require_concrete(a)?;
    let full = linalg::identity(n);
    let mut powers: Vec<linalg::Matrix> = vec![full.clone()];
    for k in 2..=n + 1 {
        let mut rows = Vec::new();
        for i in 1..k {
            rows.extend(span_products(&c, n, &powers[i - 1], &powers[k - i - 1]));
        }
        powers.push(if rows.is_empty() { Vec::new() } else { linalg::row_space(&rows) });
    }
    let left_ann = annihilator_dim(&c, n, true);
    let (ltr, lnz) = trace_form_rank(&c, n, true);
    let (rtr, rnz) = trace_form_rank(&c, n, false);
    let gl = generic_matrix(&c, n, true);
    let gr = generic_matrix(&c, n, false);
    let commutator = a.commutator_algebra().ok().and_then(|l| l.lie_invariants().ok());
    Ok(IsoInvariants {
        dim: n,
        commutative: a.is_commutative(),
        associative: a.is_associative(),
        mult_rank: n - left_ann,
        square_dim: powers[1].len(),
        power_dims: powers.iter().map(|p| p.len()).collect(),
        left_annihilator_dim: left_ann,
        right_annihilator_dim: annihilator_dim(&c, n, false),
        left_trace_form_rank: ltr,
        right_trace_form_rank: rtr,
        left_trace_nonzero: lnz,
        right_trace_nonzero: rnz,
        generic_left_rank: generic_rank(&gl),
        generic_right_rank: generic_rank(&gr),
        left_charpoly_zeros: charpoly_zeros(&gl),
        right_charpoly_zeros: charpoly_zeros(&gr),
        derivation_dim: derivation_dim(&c, n),
        commutator,
    })
}

/// An isomorphism `A -> B`, with values of `B`'s parameters when `B` is
/// symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub transform: Operator,
    pub parameters: Assignment,
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T = {}", self.transform)?;
        if !self.parameters.is_empty() {
            write!(f, " at {}", fmt_assignment(&self.parameters))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Witness(IsoWitness),
    /// Proven: invariants differ or the transport system has no zero.
    NotIsomorphic(String),
    /// Isomorphic over `C` (the transport ideal is proper) but no witness
    /// with Gaussian-rational entries was found.
    NoRationalWitness(String),
}

/// Search settings for [`find_isomorphism`].
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub budget: Budget,
    /// Values tried for matrix entries.
    pub seeds: Vec<GaussRat>,
    /// Cap on row candidates examined by the seeded backtracking.
    pub node_cap: u64,
}

impl Default for IsoSearch {
    fn default() -> Self {
        IsoSearch {
            budget: Budget::from_env(),
            seeds: default_seeds(),
            node_cap: 2_000,
        }
    }
}

/// `0, 1, -1, 2, -2, 1/2, -1/2, i, -i`.
pub fn default_seeds() -> Vec<GaussRat> {
    vec![
        GaussRat::from_int(0),
        GaussRat::from_int(1),
        GaussRat::from_int(-1),
        GaussRat::from_int(2),
        GaussRat::from_int(-2),
        GaussRat::frac(1, 2),
        GaussRat::frac(-1, 2),
        GaussRat::i(),
        -GaussRat::i(),
    ]
}

/// Whether `t` transports the constants of `a` exactly onto those of `b`.
pub fn transports(a: &Algebra, b: &Algebra, t: &Operator) -> bool {
    let n = a.dim();
    if b.dim() != n || t.dim() != n {
        return false;
    }
    let (Some(ca), Some(cb), Some(te)) = (a.concrete_constants(), b.concrete_constants(), t.concrete_entries()) else {
        return false;
    };
    let rows: Vec<Vec<GaussRat>> = te.chunks(n).map(|r| r.to_vec()).collect();
    if linalg::rank(&rows) < n {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| pair_holds(&ca, &cb, n, &rows, i, j)))
}

fn pair_holds(ca: &[GaussRat], cb: &[GaussRat], n: usize, rows: &[Vec<GaussRat>], i: usize, j: usize) -> bool {
    let mut lhs = vec![GaussRat::zero(); n];
    for (k, row) in rows.iter().enumerate().take(n) {
        let c = &ca[(i * n + j) * n + k];
        if !c.is_zero() {
            for m in 0..n {
                lhs[m] += &(c * &row[m]);
            }
        }
    }
    lhs == mul_vec(cb, n, &rows[i], &rows[j])
}

fn seeded_search(ca: &[GaussRat], cb: &[GaussRat], n: usize, seeds: &[GaussRat], cap: u64) -> Option<Operator> {
    let mut cands: Vec<Vec<usize>> = Vec::new();
    let total = seeds.len().pow(n as u32);
    for code in 0..total {
        let digits: Vec<usize> = (0..n).map(|p| code / seeds.len().pow(p as u32) % seeds.len()).collect();
        if digits.iter().all(|&d| seeds[d].is_zero()) {
            continue;
        }
        cands.push(digits);
    }
    cands.sort_by_key(|d| (d.iter().filter(|&&x| !seeds[x].is_zero()).count(), d.iter().rev().copied().collect::<Vec<_>>()));
    let cands: Vec<Vec<GaussRat>> = cands.iter().map(|d| d.iter().map(|&x| seeds[x].clone()).collect()).collect();
    // pairs checkable once rows 0..=r are fixed
    let support_max = |i: usize, j: usize| {
        (0..n)
            .filter(|&k| !ca[(i * n + j) * n + k].is_zero())
            .fold(i.max(j), usize::max)
    };
    let mut nodes = 0u64;
    let mut rows: Vec<Vec<GaussRat>> = Vec::new();

    fn rec(
        r: usize,
        n: usize,
        rows: &mut Vec<Vec<GaussRat>>,
        cands: &[Vec<GaussRat>],
        ca: &[GaussRat],
        cb: &[GaussRat],
        nodes: &mut u64,
        cap: u64,
        support_max: &dyn Fn(usize, usize) -> usize,
    ) -> bool {
        if r == n {
            return true;
        }
        for cand in cands {
            *nodes += 1;
            if *nodes > cap {
                return false;
            }
            rows.push(cand.clone());
            let ok = linalg::rank(rows) == r + 1
                && (0..=r).all(|i| {
                    (0..=r).all(|j| support_max(i, j) != r || pair_holds(ca, cb, n, rows, i, j))
                });
            if ok && rec(r + 1, n, rows, cands, ca, cb, nodes, cap, support_max) {
                return true;
            }
            rows.pop();
        }
        false
    }
    if rec(0, n, &mut rows, &cands, ca, cb, &mut nodes, cap, &support_max) {
        return Some(Operator::from_gauss(n, rows.concat()));
    }
    None
}

fn t_symbol(i: usize, j: usize) -> Symbol {
    Symbol::new(&entry_symbol_name("t", i, j))
}

/// Transport system for `A -> B`, with `u·det T - 1` and one `w·p - 1` per
/// exclusion (including denominators of `B`'s constants).
fn transport_system(a: &Algebra, ca: &[GaussRat], b: &Algebra, exclusions: &[Poly]) -> PolySystem {
    let n = a.dim();
    let t = |i: usize, j: usize| Poly::symbol(t_symbol(i, j));
    let mut gens = Vec::new();
    let mut excl: Vec<Poly> = exclusions.to_vec();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut lhs = Poly::zero();
                for k in 0..n {
                    let c = &ca[(i * n + j) * n + k];
                    if !c.is_zero() {
                        lhs = &lhs + &t(k, m).scale(c);
                    }
                }
                let mut rhs = Scalar::zero();
                for p in 0..n {
                    for q in 0..n {
                        let c = b.constant(p, q, m);
                        if !c.is_zero() {
                            rhs = &rhs + &(c * &Scalar::from_poly(&t(i, p) * &t(j, q)));
                        }
                    }
                }
                for (atom, _) in rhs.denominator_atoms() {
                    if !excl.contains(atom) {
                        excl.push(atom.clone());
                    }
                }
                let eq = &Scalar::from_poly(lhs) - &rhs;
                if !eq.is_zero() {
                    gens.push(eq.numerator().clone());
                }
            }
        }
    }
    let tm: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| t(i, j)).collect()).collect();
    let u = Poly::var("_u");
    gens.push(&(&u * &det_poly(&tm)) - &Poly::one());
    for (k, p) in excl.iter().enumerate() {
        let w = Poly::var(&format!("_w{}", k));
        gens.push(&(&w * p) - &Poly::one());
    }
    let mut vars: Vec<Symbol> = (0..n * n).map(|k| t_symbol(k / n, k % n)).collect();
    vars.extend(b.parameters());
    PolySystem::with_variables(vars, gens)
}

/// Decides whether `a` (concrete) and `b` are isomorphic. `b` may carry
/// symbolic constants; `b_exclusions` are conditions on its parameters that
/// must not vanish.
pub fn find_isomorphism(
    a: &Algebra,
    b: &Algebra,
    b_exclusions: &[Poly],
    search: &IsoSearch,
) -> Result<IsoOutcome, ClassifyError> {
    let n = require_dim(a)?;
    if b.dim() != n {
        return Ok(IsoOutcome::NotIsomorphic(format!("dimensions {} and {} differ", n, b.dim())));
    }
    let ca = require_concrete(a)?;
    if let Some(cb) = b.concrete_constants() {
        let (ia, ib) = (iso_invariants(a)?, iso_invariants(b)?);
        let diff = ia.differences(&ib);
        if !diff.is_empty() {
            return Ok(IsoOutcome::NotIsomorphic(format!("invariants differ: {}", diff.join(", "))));
        }
        if let Some(t) = seeded_search(&ca, &cb, n, &search.seeds, search.node_cap) {
            return Ok(IsoOutcome::Witness(IsoWitness {
                transform: t,
                parameters: Assignment::new(),
            }));
        }
    }
    let system = transport_system(a, &ca, b, b_exclusions);
    let gb = buchberger(&system, MonomialOrder::DegRevLex, &search.budget).map_err(|e| {
        ClassifyError::Inconclusive(format!("transport system: {}", e))
    })?;
    if gb.is_unit() {
        return Ok(IsoOutcome::NotIsomorphic(
            "transport system has no solution (Gröbner basis is {1})".into(),
        ));
    }
    extract_witness(a, b, &system, gb.polys().to_vec(), search)
}

/// Cap on basis computations during witness extraction.
const EXTRACTION_CALLS: usize = 400;

/// Fixes unknowns (parameters first, then `t`'s) to seed values until the
/// system is zero-dimensional with a Gaussian-rational point. Choices that
/// only lead to irrational points are revisited with up to two deviations
/// from the first feasible seed.
fn extract_witness(
    a: &Algebra,
    b: &Algebra,
    system: &PolySystem,
    gens: Vec<Poly>,
    search: &IsoSearch,
) -> Result<IsoOutcome, ClassifyError> {
    let n = a.dim();
    let params = b.parameters();
    let mut order: Vec<Symbol> = params.clone();
    order.extend((0..n * n).map(|k| t_symbol(k / n, k % n)));
    let mut state = Extraction {
        variables: &system.variables,
        order: &order,
        search,
        calls: 0,
        last: None,
    };
    let root = state.basis(gens)?;
    let mut found = None;
    for discrepancies in 0..=2 {
        found = state.descend(0, &root, discrepancies)?;
        if found.is_some() || state.calls >= EXTRACTION_CALLS {
            break;
        }
    }
    match found {
        Some(p) => {
            let entries: Vec<GaussRat> = (0..n * n).map(|k| p[&t_symbol(k / n, k % n)].clone()).collect();
            let transform = Operator::from_gauss(n, entries);
            let parameters: Assignment = params.iter().map(|s| (s.clone(), p[s].clone())).collect();
            let target = b.substitute(&parameters)?;
            if !transports(a, &target, &transform) {
                return Err(ClassifyError::Inconclusive(format!(
                    "candidate witness {} fails the transport check",
                    transform
                )));
            }
            Ok(IsoOutcome::Witness(IsoWitness { transform, parameters }))
        }
        None => Ok(IsoOutcome::NoRationalWitness(match state.last {
            Some(ZeroDimResult::NonRational { eliminants }) => {
                let e: Vec<String> = eliminants.iter().map(|p| p.to_string()).collect();
                format!(
                    "isomorphic over C; remaining eliminants have no Gaussian-rational roots: {}",
                    e.join("; ")
                )
            }
            _ => "isomorphic over C; no seed value extends the partial witness".into(),
        })),
    }
}

struct Extraction<'a> {
    variables: &'a [Symbol],
    order: &'a [Symbol],
    search: &'a IsoSearch,
    calls: usize,
    last: Option<ZeroDimResult>,
}

impl Extraction<'_> {
    fn basis(&mut self, gens: Vec<Poly>) -> Result<GroebnerBasis, ClassifyError> {
        self.calls += 1;
        buchberger(
            &PolySystem::with_variables(self.variables.to_vec(), gens),
            MonomialOrder::DegRevLex,
            &self.search.budget,
        )
        .map_err(|e| ClassifyError::Inconclusive(format!("witness extraction: {}", e)))
    }

    /// Limited-discrepancy search: the first feasible seed at each level is
    /// free, any later one spends one of `left` discrepancies.
    fn descend(&mut self, from: usize, gb: &GroebnerBasis, left: usize) -> Result<Option<Assignment>, ClassifyError> {
        let next = (from..self.order.len())
            .find(|&k| !gb.normal_form(&Poly::symbol(self.order[k].clone())).is_constant());
        let Some(k) = next.filter(|_| !gb.is_zero_dimensional()) else {
            let sys = PolySystem::with_variables(self.variables.to_vec(), gb.polys().to_vec());
            let sol = solve_zero_dim(&sys, &self.search.budget).map_err(|e| ClassifyError::Inconclusive(e.to_string()))?;
            if let ZeroDimResult::Points(points) = &sol {
                if let Some(p) = points.first() {
                    return Ok(Some(p.clone()));
                }
            }
            if let ZeroDimResult::NonRational { .. } = &sol {
                let partial = rational_points(&sys, &self.search.budget).map_err(|e| ClassifyError::Inconclusive(e.to_string()))?;
                if let Some(p) = partial.into_iter().next() {
                    return Ok(Some(p));
                }
            }
            self.last = Some(sol);
            return Ok(None);
        };
        let v = Poly::symbol(self.order[k].clone());
        let mut feasible = 0;
        for s in &self.search.seeds {
            if self.calls >= EXTRACTION_CALLS || (feasible > 0 && left == 0) {
                break;
            }
            let mut trial = gb.polys().to_vec();
            trial.push(&v - &Poly::constant(s.clone()));
            let child = self.basis(trial)?;
            if child.is_unit() {
                continue;
            }
            let cost = usize::from(feasible > 0);
            feasible += 1;
            if let Some(p) = self.descend(k + 1, &child, left - cost)? {
                return Ok(Some(p));
            }
        }
        if feasible == 0 && self.calls < EXTRACTION_CALLS {
            // no seed fits: leave the unknown to the final solve
            return self.descend(k + 1, gb, left);
        }
        Ok(None)
    }
}

/// A witness `T: A -> B` if `a` and `b` (both concrete) are isomorphic,
/// `None` when they provably are not.
pub fn is_isomorphic(a: &Algebra, b: &Algebra) -> Result<Option<Operator>, ClassifyError> {
    match find_isomorphism(a, b, &[], &IsoSearch::default())? {
        IsoOutcome::Witness(w) => Ok(Some(w.transform)),
        IsoOutcome::NotIsomorphic(_) => Ok(None),
        IsoOutcome::NoRationalWitness(msg) => Err(ClassifyError::Inconclusive(msg)),
    }
}

struct Candidate {
    label: String,
    algebra: Algebra,
    exclusions: Vec<Poly>,
    invariants: Option<IsoInvariants>,
}

fn candidates() -> &'static [Candidate] {
    static CANDS: OnceLock<Vec<Candidate>> = OnceLock::new();
    CANDS.get_or_init(|| {
        catalog::labels()
            .into_iter()
            .filter_map(|l| {
                let e = catalog::load_unverified(&l).ok()?;
                let invariants = e.algebra.is_concrete().then(|| iso_invariants(&e.algebra).ok()).flatten();
                Some(Candidate {
                    label: l,
                    algebra: e.algebra,
                    exclusions: e.parameter_exclusions,
                    invariants,
                })
            })
            .collect()
    })
}

/// A catalog label isomorphic to the input, with the witness (absent when
/// only an isomorphism over `C` without Gaussian-rational witness exists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub label: String,
    pub witness: Option<IsoWitness>,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        match &self.witness {
            Some(w) => write!(f, " via {}", w),
            None => write!(f, " (over C, no rational witness)"),
        }
    }
}

/// Every catalog label isomorphic to `a`, searched in table order; with
/// `first_only` the search stops at the first match.
pub fn catalog_matches(a: &Algebra, search: &IsoSearch, first_only: bool) -> Result<Vec<Normalization>, ClassifyError> {
    require_dim(a)?;
    let inv = iso_invariants(a)?;
    let mut out = Vec::new();
    let mut inconclusive = Vec::new();
    // concrete candidates first: they are cheap to rule out
    let ordered = candidates()
        .iter()
        .filter(|c| c.algebra.dim() == a.dim())
        .filter(|c| c.invariants.is_some())
        .chain(candidates().iter().filter(|c| c.algebra.dim() == a.dim() && c.invariants.is_none()));
    for c in ordered {
        if let Some(ci) = &c.invariants {
            if ci != &inv {
                continue;
            }
        }
        match find_isomorphism(a, &c.algebra, &c.exclusions, search) {
            Ok(IsoOutcome::Witness(w)) => out.push(Normalization {
                label: c.label.clone(),
                witness: Some(w),
            }),
            Ok(IsoOutcome::NoRationalWitness(_)) => out.push(Normalization {
                label: c.label.clone(),
                witness: None,
            }),
            Ok(IsoOutcome::NotIsomorphic(_)) => {}
            Err(ClassifyError::Inconclusive(msg)) => inconclusive.push(format!("{}: {}", c.label, msg)),
            Err(e) => return Err(e),
        }
        if first_only && !out.is_empty() {
            return Ok(out);
        }
    }
    if out.is_empty() && !inconclusive.is_empty() {
        return Err(ClassifyError::Inconclusive(inconclusive.join("; ")));
    }
    Ok(out)
}

/// The catalog label isomorphic to `a`, or `None` when no label matches
/// (then [`iso_invariants`] describes the algebra).
pub fn normalize_to_catalog(a: &Algebra) -> Result<Option<Normalization>, ClassifyError> {
    Ok(catalog_matches(a, &IsoSearch::default(), true)?.into_iter().next())
}

/// Label of the induced pre-Lie algebra at one point of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub point: Assignment,
    /// Chosen generically (as opposed to from the small grid).
    pub generic: bool,
    /// First matching label in table order.
    pub label: Option<String>,
    pub witness: Option<IsoWitness>,
    /// Every matching label; more than one only for coincident labels.
    pub all_labels: Vec<String>,
    pub induced_associative: bool,
    pub induced_commutative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyNormalization {
    pub family: String,
    pub targets: Vec<String>,
    pub results: Vec<Specialization>,
}

impl FamilyNormalization {
    pub fn generic_labels(&self) -> BTreeSet<Option<String>> {
        self.results.iter().filter(|s| s.generic).map(|s| s.label.clone()).collect()
    }

    /// All generic specializations normalize to the same label.
    pub fn generic_agrees(&self) -> bool {
        self.generic_labels().len() == 1
    }

    /// Every specialization normalizes to one of the claimed targets, up to
    /// [`catalog::COINCIDENT_LABELS`].
    pub fn within_targets(&self) -> bool {
        self.results.iter().all(|s| {
            matches!(&s.label, Some(l) if self.targets.iter().any(|t| catalog::same_class(l, t)))
        })
    }

    /// Label to number of specializations reaching it.
    pub fn strata(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for s in &self.results {
            *m.entry(s.label.clone().unwrap_or_else(|| "?".into())).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for FamilyNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strata: Vec<String> = self.strata().iter().map(|(l, k)| format!("{} x{}", l, k)).collect();
        write!(
            f,
            "{}: claimed {{{}}}; found {}",
            self.family,
            self.targets.join(", "),
            strata.join(", ")
        )?;
        if !self.generic_agrees() {
            write!(f, " (stratified at generic points)")?;
        }
        Ok(())
    }
}

const GENERIC_VALUES: [(i64, i64); 12] = [
    (3, 1),
    (-2, 1),
    (5, 1),
    (1, 3),
    (7, 1),
    (-5, 2),
    (11, 1),
    (2, 7),
    (-13, 1),
    (17, 5),
    (19, 1),
    (-23, 3),
];

/// Cap on recursive calls of the sampler per point.
const SAMPLE_CALLS: usize = 4000;

/// Generic values first, then fractions of small height other than 0 and
/// ±1, so that radicands of slack relations get a chance to be squares.
fn sample_values(offset: usize) -> Vec<GaussRat> {
    let k = GENERIC_VALUES.len();
    let mut vals: Vec<GaussRat> = (0..k)
        .map(|j| {
            let (p, q) = GENERIC_VALUES[(j + offset * 5) % k];
            GaussRat::frac(p, q)
        })
        .collect();
    for h in 2..=12i64 {
        for q in 1..=h {
            for p in [h, -h].into_iter().chain((-h + 1..h).filter(|_| q == h)) {
                let v = GaussRat::frac(p, q);
                if p != 0 && num_integer::gcd(p, q) == 1 && !vals.contains(&v) {
                    vals.push(v);
                }
            }
        }
    }
    vals
}

fn ordered_parameters(f: &OperatorFamily) -> Vec<Symbol> {
    let mut ps = f.parameters();
    let deg = |s: &Symbol| f.relations.iter().map(|r| r.degree_in(s)).max().unwrap_or(0);
    ps.sort_by(|a, b| deg(b).cmp(&deg(a)).then_with(|| a.cmp(b)));
    ps
}

struct Sampler<'a> {
    f: &'a OperatorFamily,
    params: Vec<Symbol>,
    values: Vec<GaussRat>,
    budget: &'a Budget,
    calls: usize,
}

impl Sampler<'_> {
    fn run(&mut self, assign: &mut Assignment) -> Option<Assignment> {
        self.calls += 1;
        if self.calls > SAMPLE_CALLS {
            return None;
        }
        let rels: Vec<Poly> = self
            .f
            .relations
            .iter()
            .map(|r| r.substitute(assign))
            .filter(|r| !r.is_zero())
            .collect();
        if rels.iter().any(|r| r.is_constant()) {
            return None;
        }
        let rest: Vec<Symbol> = self.params.iter().filter(|p| !assign.contains_key(*p)).cloned().collect();
        if rest.is_empty() {
            return self.f.admits(assign).then(|| assign.clone());
        }
        if !rels.is_empty() {
            let sys = PolySystem::with_variables(rest.clone(), rels);
            let gb = buchberger(&sys, MonomialOrder::DegRevLex, self.budget).ok()?;
            if gb.is_unit() {
                return None;
            }
            if gb.is_zero_dimensional() {
                if let Ok(ZeroDimResult::Points(points)) = solve_zero_dim(&sys, self.budget) {
                    for p in points {
                        let mut full = assign.clone();
                        full.extend(p);
                        if full.len() == self.params.len() && self.f.admits(&full) {
                            return Some(full);
                        }
                    }
                }
                return None;
            }
            // a variable constrained on its own only takes its roots
            for v in &rest {
                let only: BTreeSet<Symbol> = [v.clone()].into();
                if let Some(p) = gb.restricted_to(&only).first() {
                    let roots = UniPoly::from_poly(p, v)
                        .and_then(|u| gaussian_roots(&u, self.budget.root_candidates).ok())
                        .map(|(r, _)| r)
                        .unwrap_or_default();
                    return self.branch(assign, v, &roots);
                }
            }
        }
        let v = rest[0].clone();
        let values = self.values.clone();
        self.branch(assign, &v, &values)
    }

    fn branch(&mut self, assign: &mut Assignment, v: &Symbol, values: &[GaussRat]) -> Option<Assignment> {
        for x in values {
            assign.insert(v.clone(), x.clone());
            if let Some(p) = self.run(assign) {
                return Some(p);
            }
            assign.remove(v);
        }
        None
    }
}

/// Up to `count` distinct generic points of the family's parameter set.
pub fn generic_points(f: &OperatorFamily, count: usize, budget: &Budget) -> Vec<Assignment> {
    let params = ordered_parameters(f);
    let mut out: Vec<Assignment> = Vec::new();
    if params.is_empty() {
        if f.admits(&Assignment::new()) {
            out.push(Assignment::new());
        }
        return out;
    }
    for offset in 0..count * 3 {
        if out.len() == count {
            break;
        }
        let mut sampler = Sampler {
            f,
            params: params.clone(),
            values: sample_values(offset),
            budget,
            calls: 0,
        };
        if let Some(p) = sampler.run(&mut Assignment::new()) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Up to `count` points of the family with parameters in `{0, 1, -1, 2}`,
/// spread over the grid.
pub fn grid_points(f: &OperatorFamily, count: usize) -> Vec<Assignment> {
    let params = f.parameters();
    let vals = [0i64, 1, -1, 2];
    let total = vals.len().pow(params.len() as u32);
    let mut out = Vec::new();
    if params.is_empty() {
        return out;
    }
    // walk the grid with a stride coprime to its size
    let stride = (0..)
        .map(|k| 7 + 2 * k)
        .find(|s: &usize| num_integer::gcd(*s, total) == 1)
        .unwrap_or(1);
    for step in 0..total {
        if out.len() == count {
            break;
        }
        let code = (step * stride) % total;
        let point: Assignment = params
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), GaussRat::from_int(vals[code / vals.len().pow(k as u32) % vals.len()])))
            .collect();
        if f.admits(&point) {
            out.push(point);
        }
    }
    out
}

/// Normalizes the weight-1 induced pre-Lie algebra of `f` on `a` at
/// `generic` generic points and up to `grid` small grid points. A family
/// without targets on a labelled commutative algebra is expected to
/// reproduce that label.
pub fn normalize_family(
    a: &Algebra,
    f: &OperatorFamily,
    generic: usize,
    grid: usize,
    search: &IsoSearch,
) -> Result<FamilyNormalization, ClassifyError> {
    let mut pts: Vec<(Assignment, bool)> = generic_points(f, generic, &search.budget)
        .into_iter()
        .map(|p| (p, true))
        .collect();
    for p in grid_points(f, grid) {
        if !pts.iter().any(|(q, _)| q == &p) {
            pts.push((p, false));
        }
    }
    if pts.is_empty() {
        return Err(ClassifyError::Inconclusive(format!("no admissible point found for {}", f.name)));
    }
    let one = Scalar::one();
    let results = pts
        .into_par_iter()
        .map(|(point, is_generic)| {
            let r = f.specialize(&point)?;
            let induced = induced_pre_lie(a, &r, &one)?;
            let all = catalog_matches(&induced, search, false)?;
            let all_labels = all.iter().map(|n| n.label.clone()).collect();
            let m = all.into_iter().next();
            Ok(Specialization {
                point,
                generic: is_generic,
                label: m.as_ref().map(|n| n.label.clone()),
                witness: m.and_then(|n| n.witness),
                all_labels,
                induced_associative: induced.is_associative(),
                induced_commutative: induced.is_commutative(),
            })
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    // on a commutative algebra the induced product is -xy, isomorphic to A
    let targets = match (f.targets.is_empty() && a.is_commutative(), a.label()) {
        (true, Some(l)) => vec![l.to_string()],
        _ => f.targets.clone(),
    };
    Ok(FamilyNormalization {
        family: f.name.clone(),
        targets,
        results,
    })
}
