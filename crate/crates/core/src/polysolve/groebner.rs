//! Buchberger's algorithm over `Q(i)` with the normal selection strategy,
//! the coprime-leading-monomial criterion and the chain criterion.
//!
//! Polynomials are converted to a dense exponent-vector form over an
//! explicit variable list (`variables[0]` is the largest variable).
//! Terms are kept in ascending order so the leading term is the last one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use super::{Budget, PolySystem};
use crate::error::SolveError;
use crate::exactnum::{GaussRat, Monomial, Poly, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
        }
    }
}

pub(crate) type Exps = Vec<u16>;

pub(crate) fn cmp_exps(a: &[u16], b: &[u16], order: MonomialOrder) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::DegRevLex => {
            let da: u32 = a.iter().map(|&e| e as u32).sum();
            let db: u32 = b.iter().map(|&e| e as u32).sum();
            match da.cmp(&db) {
                Ordering::Equal => {
                    for k in (0..a.len()).rev() {
                        if a[k] != b[k] {
                            return b[k].cmp(&a[k]);
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            }
        }
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Dense polynomial, terms ascending under the ring order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DPoly {
    pub(crate) terms: Vec<(Exps, GaussRat)>,
}

impl DPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead(&self) -> &(Exps, GaussRat) {
        self.terms.last().expect("nonzero polynomial")
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero");
                for (_, c) in self.terms.iter_mut() {
                    *c = &*c * &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * other`
    fn sub_scaled(&self, c: &GaussRat, shift: &[u16], other: &DPoly, order: MonomialOrder) -> DPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| add_exps(&other.terms[k].0, shift);
        let mut next_other = if j < other.terms.len() { Some(shifted(j)) } else { None };
        while i < self.terms.len() || next_other.is_some() {
            match (self.terms.get(i), next_other.as_ref()) {
                (Some((ea, ca)), Some(eb)) => match cmp_exps(ea, eb, order) {
                    Ordering::Less => {
                        out.push((ea.clone(), ca.clone()));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((eb.clone(), -(c * &other.terms[j].1)));
                        j += 1;
                        next_other = if j < other.terms.len() { Some(shifted(j)) } else { None };
                    }
                    Ordering::Equal => {
                        let v = ca - &(c * &other.terms[j].1);
                        if !v.is_zero() {
                            out.push((ea.clone(), v));
                        }
                        i += 1;
                        j += 1;
                        next_other = if j < other.terms.len() { Some(shifted(j)) } else { None };
                    }
                },
                (Some((ea, ca)), None) => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                (None, Some(eb)) => {
                    out.push((eb.clone(), -(c * &other.terms[j].1)));
                    j += 1;
                    next_other = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
                (None, None) => unreachable!(),
            }
        }
        DPoly { terms: out }
    }
}

/// Polynomial ring context: variable list and monomial order.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub(crate) vars: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    pub(crate) order: MonomialOrder,
}

impl Ring {
    pub(crate) fn new(vars: Vec<Symbol>, order: MonomialOrder) -> Self {
        let index = vars.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Ring { vars, index, order }
    }

    pub(crate) fn encode(&self, p: &Poly) -> DPoly {
        let n = self.vars.len();
        let mut terms: Vec<(Exps, GaussRat)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (s, k) in m.factors() {
                    let idx = self.index[s];
                    e[idx] = *k as u16;
                }
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| cmp_exps(&a.0, &b.0, self.order));
        DPoly { terms }
    }

    pub(crate) fn decode(&self, d: &DPoly) -> Poly {
        Poly::from_terms(d.terms.iter().map(|(e, c)| {
            let m = Monomial::from_pairs(
                e.iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| (self.vars[i].clone(), *k as u32)),
            );
            (m, c.clone())
        }))
    }

    fn contains_all(&self, p: &Poly) -> bool {
        p.variables().iter().all(|s| self.index.contains_key(s))
    }

    /// Fully reduces `p` modulo `basis`.
    pub(crate) fn reduce(&self, p: &DPoly, basis: &[DPoly]) -> DPoly {
        let mut p = p.clone();
        let mut rem: Vec<(Exps, GaussRat)> = Vec::new();
        while let Some((lm, lc)) = p.terms.last().cloned() {
            match basis.iter().find(|g| divides(&g.lead().0, &lm)) {
                Some(g) => {
                    let (gm, gc) = g.lead();
                    let shift = sub_exps(&lm, gm);
                    let c = &lc * &gc.inv().expect("nonzero");
                    p = p.sub_scaled(&c, &shift, g, self.order);
                }
                None => {
                    p.terms.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        DPoly { terms: rem }
    }

    fn s_poly(&self, f: &DPoly, g: &DPoly) -> DPoly {
        let (fm, fc) = f.lead();
        let (gm, gc) = g.lead();
        let l = lcm_exps(fm, gm);
        let a = fc.inv().expect("nonzero");
        let b = gc.inv().expect("nonzero");
        let zero = DPoly { terms: Vec::new() };
        let left = zero.sub_scaled(&-a, &sub_exps(&l, fm), f, self.order);
        left.sub_scaled(&b, &sub_exps(&l, gm), g, self.order)
    }
}

/// A reduced Gröbner basis together with the ring it lives in.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    dense: Vec<DPoly>,
    basis: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn variables(&self) -> &[Symbol] {
        &self.ring.vars
    }

    pub fn polys(&self) -> &[Poly] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the ideal is the whole ring (no common zeros).
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.is_constant() && !p.is_zero())
    }

    /// Leading monomials in dense form.
    pub fn leading_exponents(&self) -> Vec<Vec<u16>> {
        self.dense.iter().map(|g| g.lead().0.clone()).collect()
    }

    /// Remainder of `p` under multivariate division by the basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        if self.ring.contains_all(p) {
            let d = self.ring.encode(p);
            return self.ring.decode(&self.ring.reduce(&d, &self.dense));
        }
        // extend the ring with the unknown symbols as the smallest variables
        let mut vars = self.ring.vars.clone();
        for s in p.variables() {
            if !vars.contains(&s) {
                vars.push(s);
            }
        }
        let ring = Ring::new(vars, self.ring.order);
        let dense: Vec<DPoly> = self.basis.iter().map(|g| ring.encode(g)).collect();
        ring.decode(&ring.reduce(&ring.encode(p), &dense))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Finitely many common zeros: every variable has a pure power among
    /// the leading monomials (or the ideal is the unit ideal).
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let leads = self.leading_exponents();
        (0..self.ring.vars.len()).all(|v| {
            leads
                .iter()
                .any(|e| e[v] > 0 && e.iter().enumerate().all(|(k, x)| k == v || *x == 0))
        })
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        for i in 0..self.dense.len() {
            for j in i + 1..self.dense.len() {
                let s = self.ring.s_poly(&self.dense[i], &self.dense[j]);
                if !self.ring.reduce(&s, &self.dense).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Basis elements involving only the given variables.
    pub fn restricted_to(&self, vars: &BTreeSet<Symbol>) -> Vec<Poly> {
        self.basis
            .iter()
            .filter(|p| p.variables().iter().all(|s| vars.contains(s)))
            .cloned()
            .collect()
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.ring.order)
            .field("variables", &self.ring.vars)
            .field("basis", &self.basis)
            .finish()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
}

/// Computes the reduced Gröbner basis of the system's generators.
pub fn buchberger(
    system: &PolySystem,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, SolveError> {
    let ring = Ring::new(system.variables.clone(), order);
    let mut basis: Vec<DPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut reductions: u64 = 0;

    let mut inputs: Vec<DPoly> = system
        .generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| ring.encode(p))
        .collect();
    // deterministic: feed generators smallest leading monomial first
    inputs.sort_by(|a, b| cmp_exps(&a.lead().0, &b.lead().0, order));

    let add = |basis: &mut Vec<DPoly>, pairs: &mut Vec<Pair>, mut g: DPoly| -> bool {
        g.make_monic();
        let unit = g.lead().0.iter().all(|&e| e == 0);
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: k,
                lcm: lcm_exps(&b.lead().0, &g.lead().0),
            });
        }
        basis.push(g);
        unit
    };

    for p in inputs {
        let r = ring.reduce(&p, &basis);
        if r.is_zero() {
            continue;
        }
        if add(&mut basis, &mut pairs, r) {
            return Ok(finish(ring, basis));
        }
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                cmp_exps(&pairs[a].lcm, &pairs[b].lcm, order)
                    .then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(pick);
        processed.insert((i, j));

        if coprime(&basis[i].lead().0, &basis[j].lead().0) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].lead().0, &lcm)
                && processed.contains(&(i.min(k), i.max(k)))
                && processed.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        reductions += 1;
        if reductions > budget.reductions {
            return Err(SolveError::BudgetExceeded {
                reductions,
                basis_len: basis.len(),
                pending_pairs: pairs.len(),
            });
        }
        let s = ring.s_poly(&basis[i], &basis[j]);
        let r = ring.reduce(&s, &basis);
        if !r.is_zero() && add(&mut basis, &mut pairs, r) {
            return Ok(finish(ring, basis));
        }
    }
    Ok(finish(ring, basis))
}

fn finish(ring: Ring, basis: Vec<DPoly>) -> GroebnerBasis {
    if let Some(unit) = basis.iter().find(|g| g.lead().0.iter().all(|&e| e == 0)) {
        let mut u = unit.clone();
        u.make_monic();
        let u = DPoly {
            terms: vec![u.lead().clone()],
        };
        let poly = ring.decode(&u);
        return GroebnerBasis {
            ring,
            dense: vec![u],
            basis: vec![poly],
        };
    }
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut keep: Vec<DPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            m != k
                && divides(&h.lead().0, &g.lead().0)
                && (h.lead().0 != g.lead().0 || m < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<DPoly> = keep
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = keep[k].lead().clone();
        let mut tail = keep[k].clone();
        tail.terms.pop();
        let mut r = ring.reduce(&tail, &others);
        r.terms.push((lm, lc));
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| cmp_exps(&a.lead().0, &b.lead().0, ring.order));
    let polys = reduced.iter().map(|g| ring.decode(g)).collect();
    GroebnerBasis {
        ring,
        dense: reduced,
        basis: polys,
    }
}

/// True iff `p` lies in the ideal of `gb`.
pub fn ideal_member(gb: &GroebnerBasis, p: &Poly) -> bool {
    gb.contains(p)
}
