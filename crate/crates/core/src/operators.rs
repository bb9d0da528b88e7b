//! Linear operators in a fixed basis (row `i` is the image of `e_i`) and
//! exact residuals of the Rota-Baxter, modified Yang-Baxter and Nijenhuis
//! relations; parametrized operator families and their verification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Algebra, Element};
use crate::error::{AlgebraError, OperatorError, SolveError};
use crate::exactnum::{Assignment, GaussRat, Poly, Scalar, Symbol};
use crate::polysolve::{buchberger, solve_zero_dim, Budget, GroebnerBasis, MonomialOrder, PolySystem, ZeroDimResult};

/// A linear map `R(e_i) = Σ_j r_ij e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Operator {
    dim: usize,
    entries: Vec<Scalar>,
}

impl Operator {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        for r in &rows {
            if r.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
        }
        Ok(Operator {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Operator::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn from_gauss(dim: usize, values: Vec<GaussRat>) -> Self {
        assert_eq!(values.len(), dim * dim);
        Operator {
            dim,
            entries: values.into_iter().map(Scalar::constant).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Operator::scalar(dim, Scalar::one())
    }

    /// `c` times the identity.
    pub fn scalar(dim: usize, c: Scalar) -> Self {
        let mut r = Operator::zero(dim);
        for i in 0..dim {
            r.entries[i * dim + i] = c.clone();
        }
        r
    }

    /// The fully symbolic operator with entries `r11, r12, ...` (prefix
    /// `r`); indices are concatenated 1-based, so this is unambiguous for
    /// `dim ≤ 9`.
    pub fn symbolic(dim: usize, prefix: &str) -> Self {
        Operator {
            dim,
            entries: (0..dim * dim)
                .map(|k| Scalar::var(&entry_symbol_name(prefix, k / dim, k % dim)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `R(e_i)`.
    pub fn image(&self, i: usize) -> Element {
        Element::new(self.entries[i * self.dim..(i + 1) * self.dim].to_vec())
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(self.app(x))
    }

    pub(crate) fn app(&self, x: &Element) -> Element {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.support() {
            for (j, o) in out.iter_mut().enumerate() {
                let r = self.entry(i, j);
                if !r.is_zero() {
                    *o = &*o + &(xi * r);
                }
            }
        }
        Element::new(out)
    }

    /// The composite `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Operator) -> Operator {
        let n = self.dim;
        let mut out = Operator::zero(n);
        for i in 0..n {
            let img = self.app(&other.image(i));
            for j in 0..n {
                out.entries[i * n + j] = img.coord(j).clone();
            }
        }
        out
    }

    pub fn square(&self) -> Operator {
        self.compose(self)
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `1 - R`.
    pub fn one_minus(&self) -> Operator {
        Operator::identity(self.dim).sub(self)
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.entries.iter().flat_map(|e| e.variables()).collect()
    }

    pub fn is_concrete(&self) -> bool {
        self.entries.iter().all(|e| e.as_constant().is_some())
    }

    pub fn concrete_entries(&self) -> Option<Vec<GaussRat>> {
        self.entries.iter().map(Scalar::as_constant).collect()
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<Operator, OperatorError> {
        Ok(Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.substitute(assignment))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_algebra(&self, a: &Algebra) -> Result<(), AlgebraError> {
        if a.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: a.dim(),
                got: self.dim,
            });
        }
        Ok(())
    }
}

pub(crate) fn entry_symbol_name(prefix: &str, i: usize, j: usize) -> String {
    format!("{}{}{}", prefix, i + 1, j + 1)
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn check_pair(a: &Algebra, i: usize, j: usize) -> Result<(), AlgebraError> {
    for idx in [i, j] {
        if idx >= a.dim() {
            return Err(AlgebraError::IndexOutOfRange {
                index: idx + 1,
                dim: a.dim(),
            });
        }
    }
    Ok(())
}

/// `R(e_i)R(e_j) + λR(e_i e_j) - R(R(e_i)e_j + e_iR(e_j))`.
pub fn rb_residual(a: &Algebra, r: &Operator, weight: &Scalar, i: usize, j: usize) -> Result<Element, AlgebraError> {
    r.check_algebra(a)?;
    check_pair(a, i, j)?;
    Ok(rb_res(a, r, weight, i, j))
}

pub(crate) fn rb_res(a: &Algebra, r: &Operator, weight: &Scalar, i: usize, j: usize) -> Element {
    let (ei, ej) = (a.basis(i), a.basis(j));
    let (ri, rj) = (r.image(i), r.image(j));
    let lhs = a.mul(&ri, &rj).add(&r.app(&a.basis_product(i, j)).scale(weight));
    let rhs = r.app(&a.mul(&ri, &ej).add(&a.mul(&ei, &rj)));
    lhs.sub(&rhs)
}

/// All residuals `(i, j, residual)` on basis pairs.
pub fn rb_residuals(a: &Algebra, r: &Operator, weight: &Scalar) -> Result<Vec<(usize, usize, Element)>, AlgebraError> {
    r.check_algebra(a)?;
    let n = a.dim();
    Ok((0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, rb_res(a, r, weight, i, j)))
        .collect())
}

/// First basis pair with a nonzero Rota-Baxter residual.
pub fn rb_failure(a: &Algebra, r: &Operator, weight: &Scalar) -> Result<Option<(usize, usize, Element)>, AlgebraError> {
    r.check_algebra(a)?;
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let res = rb_res(a, r, weight, i, j);
            if !res.is_zero() {
                return Ok(Some((i, j, res)));
            }
        }
    }
    Ok(None)
}

/// True iff the residual vanishes identically on every basis pair.
pub fn is_rota_baxter(a: &Algebra, r: &Operator, weight: &Scalar) -> bool {
    matches!(rb_failure(a, r, weight), Ok(None))
}

/// `[Bx,By] + [x,y] - B([Bx,y] + [x,By])` on `(e_i, e_j)` with the
/// commutator bracket.
pub fn myb_residual(a: &Algebra, b: &Operator, i: usize, j: usize) -> Result<Element, AlgebraError> {
    b.check_algebra(a)?;
    check_pair(a, i, j)?;
    let l = a.commutator_unchecked();
    let (ei, ej) = (a.basis(i), a.basis(j));
    let (bi, bj) = (b.image(i), b.image(j));
    let lhs = l.mul(&bi, &bj).add(&l.basis_product(i, j));
    let rhs = b.app(&l.mul(&bi, &ej).add(&l.mul(&ei, &bj)));
    Ok(lhs.sub(&rhs))
}

/// `N(e_i)N(e_j) + N²(e_i e_j) - N(N(e_i)e_j + e_iN(e_j))`.
pub fn nijenhuis_residual(a: &Algebra, n: &Operator, i: usize, j: usize) -> Result<Element, AlgebraError> {
    n.check_algebra(a)?;
    check_pair(a, i, j)?;
    let (ei, ej) = (a.basis(i), a.basis(j));
    let (ni, nj) = (n.image(i), n.image(j));
    let lhs = a.mul(&ni, &nj).add(&n.app(&n.app(&a.basis_product(i, j))));
    let rhs = n.app(&a.mul(&ni, &ej).add(&a.mul(&ei, &nj)));
    Ok(lhs.sub(&rhs))
}

/// Residual of a family of pair identities vanishes on all basis pairs.
pub fn vanishes_on_pairs(
    a: &Algebra,
    f: impl Fn(usize, usize) -> Result<Element, AlgebraError>,
) -> Result<bool, AlgebraError> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if !f(i, j)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Leibniz rule `D(e_i e_j) = D(e_i)e_j + e_iD(e_j)` on all basis pairs.
pub fn is_derivation(a: &Algebra, d: &Operator) -> bool {
    if d.dim() != a.dim() {
        return false;
    }
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = d.app(&a.basis_product(i, j));
            let rhs = a.mul(&d.image(i), &a.basis(j)).add(&a.mul(&a.basis(i), &d.image(j)));
            lhs == rhs
        })
    })
}

/// A parametrized operator with polynomial side relations (which must
/// vanish) and exclusions (which must not).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorFamily {
    pub name: String,
    pub operator: Operator,
    pub relations: Vec<Poly>,
    pub exclusions: Vec<Poly>,
    /// Catalog labels claimed for the induced pre-Lie algebra.
    pub targets: Vec<String>,
}

impl OperatorFamily {
    pub fn new(name: impl Into<String>, operator: Operator) -> Self {
        OperatorFamily {
            name: name.into(),
            operator,
            relations: Vec::new(),
            exclusions: Vec::new(),
            targets: Vec::new(),
        }
    }

    /// A family with no parameters.
    pub fn singleton(name: impl Into<String>, operator: Operator) -> Self {
        OperatorFamily::new(name, operator)
    }

    pub fn with_relation(mut self, p: Poly) -> Self {
        self.relations.push(p);
        self
    }

    pub fn with_exclusion(mut self, p: Poly) -> Self {
        self.exclusions.push(p);
        self
    }

    pub fn with_targets(mut self, targets: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.targets = targets.into_iter().map(Into::into).collect();
        self
    }

    /// Free symbols of the operator, relations and exclusions.
    pub fn parameters(&self) -> Vec<Symbol> {
        let mut set = self.operator.variables();
        for p in self.relations.iter().chain(&self.exclusions) {
            set.extend(p.variables());
        }
        set.into_iter().collect()
    }

    pub fn is_singleton(&self) -> bool {
        self.parameters().is_empty()
    }

    /// Recorded denominator atoms of the entries: each must not vanish.
    pub fn denominator_conditions(&self) -> Vec<Poly> {
        let mut set: BTreeSet<Poly> = BTreeSet::new();
        for e in self.operator.entries() {
            for (atom, _) in e.denominator_atoms() {
                set.insert(atom.clone());
            }
        }
        set.into_iter().collect()
    }

    /// Every condition that must not vanish.
    pub fn nonvanishing(&self) -> Vec<Poly> {
        let mut out = self.exclusions.clone();
        for d in self.denominator_conditions() {
            if !out.contains(&d) {
                out.push(d);
            }
        }
        out
    }

    /// Whether a concrete point lies in the family's parameter set.
    pub fn admits(&self, point: &Assignment) -> bool {
        self.relations
            .iter()
            .all(|p| matches!(p.eval(point), Ok(v) if v.is_zero()))
            && self
                .nonvanishing()
                .iter()
                .all(|p| matches!(p.eval(point), Ok(v) if !v.is_zero()))
    }

    /// The operator at a concrete point of the parameter set.
    pub fn specialize(&self, point: &Assignment) -> Result<Operator, OperatorError> {
        if !self.admits(point) {
            return Err(OperatorError::Precondition(format!(
                "point {} is outside the parameter set of {}",
                fmt_assignment(point),
                self.name
            )));
        }
        self.operator.substitute(point)
    }
}

pub fn fmt_assignment(a: &Assignment) -> String {
    let parts: Vec<String> = a.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
    format!("{{{}}}", parts.join(", "))
}

/// One residual coordinate that does not vanish on the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualFailure {
    pub pair: (usize, usize),
    pub coord: usize,
    /// Numerator of the residual reduced modulo the relations.
    pub reduced: Poly,
}

impl fmt::Display for ResidualFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair (e{},e{}) coordinate e{}: reduced residual {}",
            self.pair.0 + 1,
            self.pair.1 + 1,
            self.coord + 1,
            self.reduced
        )
    }
}

/// Outcome of [`family_verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub failures: Vec<ResidualFailure>,
}

impl FamilyVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn relation_basis(relations: &[Poly], budget: &Budget) -> Result<Option<GroebnerBasis>, SolveError> {
    let gens: Vec<Poly> = relations.iter().filter(|p| !p.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(None);
    }
    Ok(Some(buchberger(
        &PolySystem::from_generators(gens),
        MonomialOrder::DegRevLex,
        budget,
    )?))
}

fn fresh_symbol(base: &str, avoid: &BTreeSet<Symbol>) -> Symbol {
    let mut k = 0;
    loop {
        let s = Symbol::new(&format!("{}{}", base, if k == 0 { String::new() } else { k.to_string() }));
        if !avoid.contains(&s) {
            return s;
        }
        k += 1;
    }
}

/// Whether `p` vanishes on every point of `V(relations)` where `h` does not
/// vanish: `1 ∈ ⟨relations, 1 - t·h, 1 - u·p⟩`.
pub fn vanishes_on_locus(relations: &[Poly], h: &Poly, p: &Poly, budget: &Budget) -> Result<bool, SolveError> {
    if p.is_zero() {
        return Ok(true);
    }
    let mut avoid: BTreeSet<Symbol> = p.variables();
    avoid.extend(h.variables());
    for r in relations {
        avoid.extend(r.variables());
    }
    let t = fresh_symbol("_t", &avoid);
    let u = fresh_symbol("_u", &avoid);
    let mut gens: Vec<Poly> = relations.to_vec();
    gens.push(&Poly::one() - &(&Poly::symbol(t.clone()) * h));
    gens.push(&Poly::one() - &(&Poly::symbol(u.clone()) * p));
    // eliminate-friendly order: helper variables first
    let mut vars = vec![u, t];
    let rest: BTreeSet<Symbol> = gens.iter().flat_map(|g| g.variables()).filter(|s| !vars.contains(s)).collect();
    vars.extend(rest);
    let gb = buchberger(&PolySystem::with_variables(vars, gens), MonomialOrder::DegRevLex, budget)?;
    Ok(gb.is_unit())
}

/// Checks that every Rota-Baxter residual coordinate of the family vanishes
/// on its parameter set (relations hold, exclusions and recorded
/// denominators do not vanish).
///
/// Residual numerators are first reduced modulo a Gröbner basis of the
/// relations; any nonzero remainder is then tested on the locus where the
/// nonvanishing conditions hold. Errors with `FamilyDegenerate` when a
/// nonvanishing condition lies in the relation ideal.
pub fn family_verify(a: &Algebra, f: &OperatorFamily, weight: &Scalar) -> Result<FamilyVerdict, OperatorError> {
    family_verify_with(a, f, weight, &Budget::from_env())
}

pub fn family_verify_with(
    a: &Algebra,
    f: &OperatorFamily,
    weight: &Scalar,
    budget: &Budget,
) -> Result<FamilyVerdict, OperatorError> {
    let residuals = rb_residuals(a, &f.operator, weight)?;
    let gb = relation_basis(&f.relations, budget)?;
    let nonvanishing = f.nonvanishing();
    if let Some(gb) = &gb {
        if gb.is_unit() {
            return Err(OperatorError::FamilyDegenerate("1".into()));
        }
        for c in &nonvanishing {
            if gb.contains(c) {
                return Err(OperatorError::FamilyDegenerate(c.to_string()));
            }
        }
    }
    let h = nonvanishing.iter().fold(Poly::one(), |acc, c| &acc * c);
    let mut failures = Vec::new();
    for (i, j, res) in residuals {
        for (k, c) in res.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = c.numerator();
            let reduced = match &gb {
                Some(gb) => gb.normal_form(num),
                None => num.clone(),
            };
            if reduced.is_zero() {
                continue;
            }
            if (!h.is_constant() || gb.is_some()) && vanishes_on_locus(&f.relations, &h, &reduced, budget)? {
                continue;
            }
            failures.push(ResidualFailure {
                pair: (i, j),
                coord: k,
                reduced,
            });
        }
    }
    Ok(FamilyVerdict { failures })
}

/// A parameter assignment realizing the concrete operator `r` inside the
/// family, if one exists.
pub fn family_member(f: &OperatorFamily, r: &Operator) -> Option<Assignment> {
    if f.operator.dim() != r.dim() {
        return None;
    }
    let target = r.concrete_entries()?;
    let params = f.parameters();
    let mut assign: Assignment = BTreeMap::new();

    // propagate: constant entries compare, entries linear in one unknown solve
    let mut pending: Vec<(Scalar, GaussRat)> = f
        .operator
        .entries()
        .iter()
        .cloned()
        .zip(target.iter().cloned())
        .collect();
    loop {
        let mut progress = false;
        let mut next = Vec::new();
        for (e, v) in pending {
            let e = e.substitute(&assign).ok()?;
            if let Some(c) = e.as_constant() {
                if c != v {
                    return None;
                }
                progress = true;
                continue;
            }
            // numerator - v * denominator, linear in a single symbol?
            let eq = e.numerator() - &e.denominator().scale(&v);
            let vars = eq.variables();
            if vars.len() == 1 {
                let s = vars.into_iter().next().unwrap();
                if eq.degree_in(&s) == 1 {
                    let coeffs = eq.coefficients_in(&s);
                    let c0 = coeffs[0].as_constant().unwrap_or_else(GaussRat::zero);
                    let c1 = coeffs[1].as_constant()?;
                    let val = -(&c0 * &c1.inv()?);
                    assign.insert(s, val);
                    progress = true;
                    continue;
                }
            }
            next.push((e, v));
        }
        pending = next;
        if !progress || pending.is_empty() {
            break;
        }
    }

    let unresolved: Vec<Symbol> = params.iter().filter(|s| !assign.contains_key(*s)).cloned().collect();
    let mut candidates: Vec<Assignment> = Vec::new();
    if unresolved.is_empty() {
        candidates.push(assign.clone());
    } else {
        let mut gens: Vec<Poly> = Vec::new();
        for (e, v) in &pending {
            gens.push(e.numerator() - &e.denominator().scale(v));
        }
        for p in &f.relations {
            gens.push(p.substitute(&assign));
        }
        gens.retain(|g| !g.is_zero());
        for point in solve_remaining(&unresolved, gens, &f.nonvanishing(), &assign)? {
            let mut full = assign.clone();
            full.extend(point);
            candidates.push(full);
        }
    }

    candidates.into_iter().find(|point| {
        f.admits(point)
            && f.operator
                .entries()
                .iter()
                .zip(&target)
                .all(|(e, v)| matches!(e.eval(point), Ok(x) if &x == v))
    })
}

/// Seeds used to pin parameters that the matching system leaves free.
pub(crate) const FREE_SEEDS: [(i64, i64); 12] = [
    (2, 1),
    (3, 1),
    (-2, 1),
    (1, 3),
    (4, 1),
    (-1, 2),
    (4, 3),
    (-1, 3),
    (9, 8),
    (5, 1),
    (-3, 1),
    (7, 5),
];

fn solve_remaining(
    unresolved: &[Symbol],
    gens: Vec<Poly>,
    nonvanishing: &[Poly],
    fixed: &Assignment,
) -> Option<Vec<Assignment>> {
    let ok_point = |p: &Assignment| {
        let mut full = fixed.clone();
        full.extend(p.clone());
        !nonvanishing
            .iter()
            .any(|c| matches!(c.substitute(&full).as_constant(), Some(v) if v.is_zero()))
    };
    if gens.is_empty() {
        // nothing constrains these symbols: pick seeds avoiding exclusions
        return seed_free(unresolved, &[], nonvanishing, fixed, 0);
    }
    let system = PolySystem::with_variables(unresolved.to_vec(), gens.clone());
    match solve_zero_dim(&system, &Budget::from_env()).ok()? {
        ZeroDimResult::Points(points) => Some(points.into_iter().filter(ok_point).collect()),
        ZeroDimResult::NotZeroDimensional { .. } => seed_free(unresolved, &gens, nonvanishing, fixed, 0),
        ZeroDimResult::NonRational { .. } => None,
    }
}

fn seed_free(
    unresolved: &[Symbol],
    gens: &[Poly],
    nonvanishing: &[Poly],
    fixed: &Assignment,
    depth: usize,
) -> Option<Vec<Assignment>> {
    if depth > unresolved.len() {
        return None;
    }
    // pin the smallest variable to each seed in turn and re-solve
    let s = unresolved.last()?.clone();
    let rest: Vec<Symbol> = unresolved[..unresolved.len() - 1].to_vec();
    for (p, q) in FREE_SEEDS {
        let v = GaussRat::frac(p, q);
        let mut pin = fixed.clone();
        pin.insert(s.clone(), v.clone());
        if nonvanishing
            .iter()
            .any(|c| matches!(c.substitute(&pin).as_constant(), Some(x) if x.is_zero()))
        {
            continue;
        }
        let sub: Vec<Poly> = gens.iter().map(|g| g.substitute(&pin)).filter(|g| !g.is_zero()).collect();
        if sub.iter().any(|g| g.is_constant()) {
            continue;
        }
        let found = if rest.is_empty() {
            Some(vec![BTreeMap::new()])
        } else {
            solve_remaining(&rest, sub, nonvanishing, &pin)
        };
        if let Some(points) = found {
            if let Some(first) = points.into_iter().next() {
                let mut out = first;
                out.insert(s.clone(), v);
                return Some(vec![out]);
            }
        }
    }
    None
}
