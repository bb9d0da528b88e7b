//! Finite-dimensional algebras given by structure constants
//! `e_i e_j = Σ_k C_ij^k e_k`, identity checks and Lie-algebra invariants.
//!
//! Indices are 0-based here; the text formats use 1-based indices.

use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;
use crate::exactnum::{Assignment, GaussRat, Scalar, Symbol};
use crate::linalg;

/// Declared class of an algebra. Tags are re-checkable with
/// [`Algebra::check_kind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    Associative,
    PreLie,
    Lie,
    Novikov,
    Unchecked,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Associative => "associative",
            AlgebraKind::PreLie => "pre-lie",
            AlgebraKind::Lie => "lie",
            AlgebraKind::Novikov => "novikov",
            AlgebraKind::Unchecked => "unchecked",
        })
    }
}

impl FromStr for AlgebraKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "associative" => Ok(AlgebraKind::Associative),
            "pre-lie" | "prelie" => Ok(AlgebraKind::PreLie),
            "lie" => Ok(AlgebraKind::Lie),
            "novikov" => Ok(AlgebraKind::Novikov),
            "unchecked" => Ok(AlgebraKind::Unchecked),
            other => Err(format!("unknown algebra kind '{}'", other)),
        }
    }
}

/// A vector in the fixed basis of an algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Element {
            coords: vec![Scalar::zero(); dim],
        }
    }

    /// The basis vector `e_{i+1}`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Element {
            coords: values.iter().map(|&v| Scalar::from_int(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Vec<GaussRat>, AlgebraError> {
        Ok(self
            .coords
            .iter()
            .map(|c| c.eval(assignment))
            .collect::<Result<_, _>>()?)
    }

    /// Nonzero coordinates as `(index, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.support() {
            let text = c.to_string();
            let compound = text[1..].contains(['+', '-', '/']);
            if c.is_one() {
                write!(f, "{}e{}", if first { "" } else { "+" }, i + 1)?;
            } else if (-c).is_one() {
                write!(f, "-e{}", i + 1)?;
            } else if compound {
                write!(f, "{}({})*e{}", if first { "" } else { "+" }, text, i + 1)?;
            } else if text.starts_with('-') || first {
                write!(f, "{}*e{}", text, i + 1)?;
            } else {
                write!(f, "+{}*e{}", text, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Invariants of a Lie algebra used to compare targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieInvariants {
    pub dim: usize,
    /// Dimensions of `L^(1) = [L,L]`, `L^(2) = [L^(1),L^(1)]`, ... until stable.
    pub derived_dims: Vec<usize>,
    /// Dimensions of `L^2 = [L,L]`, `L^3 = [L,L^2]`, ... until stable.
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
}

impl fmt::Display for LieInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} derived={:?} lower_central={:?} center={} abelian={} nilpotent={} solvable={}",
            self.dim,
            self.derived_dims,
            self.lower_central_dims,
            self.center_dim,
            self.abelian,
            self.nilpotent,
            self.solvable
        )
    }
}

/// An algebra of dimension `dim` with dense structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    dim: usize,
    constants: Vec<Scalar>,
    label: Option<String>,
    kind: AlgebraKind,
}

/// Algebras compare by dimension and structure constants only.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// The zero algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Algebra {
            dim,
            constants: vec![Scalar::zero(); dim * dim * dim],
            label: None,
            kind: AlgebraKind::Unchecked,
        }
    }

    /// Builds an algebra from 0-based `(i, j, k, C_ij^k)` entries; repeated
    /// triples accumulate.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut a = Algebra::zero(dim);
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            let slot = a.slot(i, j, k);
            a.constants[slot] = &a.constants[slot] + &c;
        }
        Ok(a)
    }

    /// Convenience constructor from 1-based integer entries.
    pub fn from_int_table(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Result<Self, AlgebraError> {
        Algebra::from_entries(
            dim,
            entries
                .iter()
                .map(|&(i, j, k, c)| (i.wrapping_sub(1), j.wrapping_sub(1), k.wrapping_sub(1), Scalar::from_int(c))),
        )
    }

    /// Builds from the products of basis pairs: `products[i][j] = e_i e_j`.
    pub fn from_products(dim: usize, products: impl Fn(usize, usize) -> Element) -> Self {
        let mut a = Algebra::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = products(i, j);
                for k in 0..dim {
                    let slot = a.slot(i, j, k);
                    a.constants[slot] = p.coords[k].clone();
                }
            }
        }
        a
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_kind(mut self, kind: AlgebraKind) -> Self {
        self.kind = kind;
        self
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[self.slot(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let slot = self.slot(i, j, k);
        self.constants[slot] = c;
    }

    /// Nonzero constants as 0-based `(i, j, k, C_ij^k)`.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, &Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Free symbols occurring in the structure constants.
    pub fn parameters(&self) -> Vec<Symbol> {
        let mut set = std::collections::BTreeSet::new();
        for c in &self.constants {
            set.extend(c.variables());
        }
        set.into_iter().collect()
    }

    pub fn is_concrete(&self) -> bool {
        self.constants.iter().all(|c| c.as_constant().is_some())
    }

    /// Concrete constants; `None` if any constant is symbolic.
    pub fn concrete_constants(&self) -> Option<Vec<GaussRat>> {
        self.constants.iter().map(Scalar::as_constant).collect()
    }

    /// Substitutes values for some or all parameters.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Algebra, AlgebraError> {
        let constants = self
            .constants
            .iter()
            .map(|c| c.substitute(assignment))
            .collect::<Result<_, _>>()?;
        Ok(Algebra {
            dim: self.dim,
            constants,
            label: self.label.clone(),
            kind: self.kind,
        })
    }

    /// Applies `f` to every structure constant.
    pub fn map_constants(&self, f: impl Fn(&Scalar) -> Scalar) -> Algebra {
        Algebra {
            dim: self.dim,
            constants: self.constants.iter().map(f).collect(),
            label: None,
            kind: AlgebraKind::Unchecked,
        }
    }

    fn check_dim(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<(), AlgebraError> {
        if i >= self.dim {
            return Err(AlgebraError::IndexOutOfRange {
                index: i + 1,
                dim: self.dim,
            });
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    /// `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let base = (i * self.dim + j) * self.dim;
        Element::new(self.constants[base..base + self.dim].to_vec())
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let xy = xi * yj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot = &*slot + &(&xy * c);
                    }
                }
            }
        }
        Element::new(out)
    }

    fn associator(&self, x: &Element, y: &Element, z: &Element) -> Element {
        self.mul(&self.mul(x, y), z).sub(&self.mul(x, &self.mul(y, z)))
    }

    /// `(e_i e_j) e_k - e_i (e_j e_k)`.
    pub fn assoc_defect(&self, i: usize, j: usize, k: usize) -> Result<Element, AlgebraError> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        Ok(self.associator(&self.basis(i), &self.basis(j), &self.basis(k)))
    }

    /// Associator of `(e_i, e_j, e_k)` minus that of `(e_j, e_i, e_k)`.
    pub fn pre_lie_defect(&self, i: usize, j: usize, k: usize) -> Result<Element, AlgebraError> {
        Ok(self.assoc_defect(i, j, k)?.sub(&self.assoc_defect(j, i, k)?))
    }

    /// `(e_i e_j) e_k - (e_i e_k) e_j`, the right-commutativity defect.
    pub fn novikov_defect(&self, i: usize, j: usize, k: usize) -> Result<Element, AlgebraError> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
        Ok(self.mul(&self.mul(&x, &y), &z).sub(&self.mul(&self.mul(&x, &z), &y)))
    }

    fn first_nonzero_triple(
        &self,
        f: impl Fn(usize, usize, usize) -> Result<Element, AlgebraError>,
    ) -> Option<(usize, usize, usize, Element)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = f(i, j, k).expect("indices in range");
                    if !d.is_zero() {
                        return Some((i, j, k, d));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.first_nonzero_triple(|i, j, k| self.assoc_defect(i, j, k)).is_none()
    }

    pub fn is_pre_lie(&self) -> bool {
        self.first_nonzero_triple(|i, j, k| self.pre_lie_defect(i, j, k)).is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_novikov(&self) -> bool {
        self.is_pre_lie() && self.first_nonzero_triple(|i, j, k| self.novikov_defect(i, j, k)).is_none()
    }

    /// Antisymmetry plus the Jacobi identity on basis triples.
    pub fn is_lie(&self) -> bool {
        self.lie_failure().is_none()
    }

    fn lie_failure(&self) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let s = self.basis_product(i, j).add(&self.basis_product(j, i));
                if !s.is_zero() {
                    return Some(format!("[e{},e{}] + [e{},e{}] = {}", i + 1, j + 1, j + 1, i + 1, s));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let jac = self
                        .mul(&x, &self.mul(&y, &z))
                        .add(&self.mul(&y, &self.mul(&z, &x)))
                        .add(&self.mul(&z, &self.mul(&x, &y)));
                    if !jac.is_zero() {
                        return Some(format!("Jacobi at (e{},e{},e{}) = {}", i + 1, j + 1, k + 1, jac));
                    }
                }
            }
        }
        None
    }

    /// Verifies the declared kind tag.
    pub fn check_kind(&self) -> Result<(), AlgebraError> {
        let fail = |detail: String| AlgebraError::KindCheckFailed {
            declared: self.kind.to_string(),
            detail,
        };
        let triple = |(i, j, k, d): (usize, usize, usize, Element)| {
            format!("triple (e{},e{},e{}) has defect {}", i + 1, j + 1, k + 1, d)
        };
        match self.kind {
            AlgebraKind::Unchecked => Ok(()),
            AlgebraKind::Associative => match self.first_nonzero_triple(|i, j, k| self.assoc_defect(i, j, k)) {
                Some(t) => Err(fail(triple(t))),
                None => Ok(()),
            },
            AlgebraKind::PreLie => match self.first_nonzero_triple(|i, j, k| self.pre_lie_defect(i, j, k)) {
                Some(t) => Err(fail(triple(t))),
                None => Ok(()),
            },
            AlgebraKind::Novikov => {
                if let Some(t) = self.first_nonzero_triple(|i, j, k| self.pre_lie_defect(i, j, k)) {
                    return Err(fail(triple(t)));
                }
                match self.first_nonzero_triple(|i, j, k| self.novikov_defect(i, j, k)) {
                    Some(t) => Err(fail(triple(t))),
                    None => Ok(()),
                }
            }
            AlgebraKind::Lie => match self.lie_failure() {
                Some(d) => Err(fail(d)),
                None => Ok(()),
            },
        }
    }

    /// The algebra with bracket `[x,y] = xy - yx`. Requires a pre-Lie input
    /// (associative algebras are pre-Lie).
    pub fn commutator_algebra(&self) -> Result<Algebra, AlgebraError> {
        if let Some((i, j, k, d)) = self.first_nonzero_triple(|i, j, k| self.pre_lie_defect(i, j, k)) {
            return Err(AlgebraError::CommutatorNotLie(format!(
                "pre-Lie defect at (e{},e{},e{}) is {}",
                i + 1,
                j + 1,
                k + 1,
                d
            )));
        }
        Ok(self.commutator_unchecked().with_kind(AlgebraKind::Lie))
    }

    pub(crate) fn commutator_unchecked(&self) -> Algebra {
        Algebra::from_products(self.dim, |i, j| self.basis_product(i, j).sub(&self.basis_product(j, i)))
    }

    /// `C'_ij^k = C_ji^k`.
    pub fn opposite(&self) -> Algebra {
        let mut a = Algebra::from_products(self.dim, |i, j| self.basis_product(j, i));
        a.kind = match self.kind {
            AlgebraKind::Associative => AlgebraKind::Associative,
            AlgebraKind::Lie => AlgebraKind::Lie,
            _ => AlgebraKind::Unchecked,
        };
        a
    }

    /// Concrete constants as a closure over basis products; errors when a
    /// constant is symbolic.
    pub(crate) fn concrete_table(&self) -> Result<Vec<GaussRat>, AlgebraError> {
        self.concrete_constants().ok_or_else(|| AlgebraError::KindCheckFailed {
            declared: self.kind.to_string(),
            detail: format!("symbolic constants in parameters {:?}", self.parameters()),
        })
    }

    /// Derived series, lower central series, center and flags of a concrete
    /// Lie algebra.
    pub fn lie_invariants(&self) -> Result<LieInvariants, AlgebraError> {
        if let Some(d) = self.lie_failure() {
            return Err(AlgebraError::NotLie(d));
        }
        let c = self.concrete_table()?;
        let n = self.dim;
        let bracket = |x: &[GaussRat], y: &[GaussRat]| -> Vec<GaussRat> {
            let mut out = vec![GaussRat::default(); n];
            for i in 0..n {
                if x[i] == GaussRat::default() {
                    continue;
                }
                for j in 0..n {
                    if y[j] == GaussRat::default() {
                        continue;
                    }
                    let xy = &x[i] * &y[j];
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += &(&xy * &c[(i * n + j) * n + k]);
                    }
                }
            }
            out
        };
        let span_of_brackets = |a: &linalg::Matrix, b: &linalg::Matrix| -> linalg::Matrix {
            let mut rows = Vec::new();
            for x in a {
                for y in b {
                    rows.push(bracket(x, y));
                }
            }
            if rows.is_empty() {
                return Vec::new();
            }
            linalg::row_space(&rows)
        };
        let full = linalg::identity(n);

        let mut derived_dims = Vec::new();
        let mut cur = full.clone();
        loop {
            let next = span_of_brackets(&cur, &cur);
            let d = next.len();
            if derived_dims.last() == Some(&d) || (derived_dims.is_empty() && d == cur.len()) {
                if derived_dims.is_empty() {
                    derived_dims.push(d);
                }
                break;
            }
            derived_dims.push(d);
            if d == 0 {
                break;
            }
            cur = next;
        }

        let mut lower_central_dims = Vec::new();
        let mut cur = full.clone();
        loop {
            let next = span_of_brackets(&full, &cur);
            let d = next.len();
            if lower_central_dims.last() == Some(&d) || (lower_central_dims.is_empty() && d == n) {
                if lower_central_dims.is_empty() {
                    lower_central_dims.push(d);
                }
                break;
            }
            lower_central_dims.push(d);
            if d == 0 {
                break;
            }
            cur = next;
        }

        // center: x with [x, e_j] = 0 for all j; unknowns are coordinates of x
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| c[(i * n + j) * n + k].clone()).collect::<Vec<_>>());
            }
        }
        let center_dim = n - linalg::rank(&rows);

        Ok(LieInvariants {
            dim: n,
            abelian: derived_dims.first() == Some(&0),
            nilpotent: lower_central_dims.last() == Some(&0),
            solvable: derived_dims.last() == Some(&0),
            derived_dims,
            lower_central_dims,
            center_dim,
        })
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.basis_product(i, j);
                if !p.is_zero() {
                    if !first {
                        write!(f, ", ")?;
                    }
                    write!(f, "e{}e{}={}", i + 1, j + 1, p)?;
                    first = false;
                }
            }
        }
        if first {
            write!(f, "zero product")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_scalar;

    fn a1() -> Algebra {
        Algebra::from_int_table(2, &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap()
    }

    #[test]
    fn multiply_on_diagonal_algebra() {
        let x = Element::from_ints(&[1, 1]);
        let e1 = Element::from_ints(&[1, 0]);
        assert_eq!(a1().multiply(&x, &e1).unwrap(), e1);
        let b1 = Algebra::from_int_table(2, &[(2, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let e2 = Element::from_ints(&[0, 1]);
        assert_eq!(b1.multiply(&e2, &x).unwrap(), x);
        assert!(a1().multiply(&Element::from_ints(&[1]), &x).is_err());
    }

    #[test]
    fn nonassociative_example() {
        // e2 e1 = -e1, e2 e2 = e1 - e2
        let b3 = Algebra::from_int_table(2, &[(2, 1, 1, -1), (2, 2, 1, 1), (2, 2, 2, -1)]).unwrap();
        assert!(b3.assoc_defect(1, 1, 0).unwrap().is_zero());
        assert_eq!(b3.assoc_defect(1, 1, 1).unwrap(), Element::from_ints(&[1, 0]));
        assert!(b3.is_pre_lie());
        assert!(!b3.is_associative());
        let bad = Algebra::from_int_table(2, &[(1, 2, 1, 1)]).unwrap();
        assert!(!bad.pre_lie_defect(0, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn symbolic_parameter_defects() {
        let b4 = Algebra::from_entries(
            2,
            vec![
                (1, 0, 0, Scalar::from_int(-1)),
                (1, 1, 1, parse_scalar("k").unwrap()),
            ],
        )
        .unwrap();
        assert!(b4.is_pre_lie());
        assert!(!b4.is_associative());
        assert_eq!(b4.parameters(), vec![Symbol::new("k")]);
    }

    #[test]
    fn commutator_and_opposite() {
        let b1 = Algebra::from_int_table(2, &[(2, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let l = b1.commutator_algebra().unwrap();
        assert_eq!(l.basis_product(1, 0), Element::from_ints(&[1, 0]));
        assert_eq!(l.basis_product(0, 1), Element::from_ints(&[-1, 0]));
        let b2 = Algebra::from_int_table(2, &[(1, 2, 1, 1), (2, 2, 2, 1)]).unwrap();
        assert_eq!(b1.opposite(), b2);
        assert_eq!(b1.opposite().opposite(), b1);
        let bad = Algebra::from_int_table(2, &[(1, 2, 1, 1)]).unwrap();
        assert!(bad.commutator_algebra().unwrap_err().to_string().starts_with("commutator not guaranteed Lie"));
    }

    #[test]
    fn lie_invariants_of_nonabelian_sum() {
        // [e2,e3] = e2 in dimension 3
        let l = Algebra::from_int_table(3, &[(2, 3, 2, 1), (3, 2, 2, -1)]).unwrap();
        let inv = l.lie_invariants().unwrap();
        assert_eq!(inv.derived_dims, vec![1, 0]);
        assert_eq!(inv.lower_central_dims, vec![1]);
        assert_eq!(inv.center_dim, 1);
        assert!(!inv.nilpotent);
        assert!(inv.solvable);
        let ab = Algebra::zero(3).lie_invariants().unwrap();
        assert_eq!(ab.derived_dims, vec![0]);
        assert_eq!(ab.center_dim, 3);
        assert!(ab.abelian && ab.nilpotent);
    }

    #[test]
    fn kind_check_reports_triple() {
        let b3 = Algebra::from_int_table(2, &[(2, 1, 1, -1), (2, 2, 1, 1), (2, 2, 2, -1)])
            .unwrap()
            .with_kind(AlgebraKind::Associative);
        let err = b3.check_kind().unwrap_err().to_string();
        assert!(err.contains("triple"), "{}", err);
    }

    #[test]
    fn element_display() {
        let e = Element::new(vec![Scalar::one(), Scalar::from_int(-2), parse_scalar("a+1").unwrap()]);
        assert_eq!(e.to_string(), "e1-2*e2+(a+1)*e3");
        assert_eq!(Element::zero(2).to_string(), "0");
    }
}
