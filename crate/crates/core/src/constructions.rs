//! Products induced by Rota-Baxter, modified Yang-Baxter and derivation
//! operators: the double, pre-Lie products, dendriform dialgebras and the
//! Novikov product.
//!
//! Checked constructors verify their hypotheses exactly (identically in
//! any symbols) and tag the output with its verified kind. The
//! `*_product` builders skip all checks and are meant for symbolic
//! comparisons of formulas.

use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::error::{AlgebraError, OperatorError};
use crate::exactnum::Scalar;
use crate::operators::{myb_residual, rb_failure, Operator};

fn pair_name(i: usize, j: usize) -> String {
    format!("(e{},e{})", i + 1, j + 1)
}

fn require_rota_baxter(a: &Algebra, r: &Operator, weight: &Scalar) -> Result<(), OperatorError> {
    match rb_failure(a, r, weight)? {
        None => Ok(()),
        Some((i, j, res)) => Err(OperatorError::Precondition(format!(
            "not Rota-Baxter of weight {}: residual at {} is {}",
            weight,
            pair_name(i, j),
            res
        ))),
    }
}

fn require_associative(a: &Algebra) -> Result<(), OperatorError> {
    a.clone()
        .with_kind(AlgebraKind::Associative)
        .check_kind()
        .map_err(|e| OperatorError::Precondition(e.to_string()))
}

fn verified(a: Algebra, kind: AlgebraKind) -> Result<Algebra, OperatorError> {
    let a = a.with_kind(kind);
    a.check_kind()?;
    Ok(a)
}

/// `x*y = R(x)y + xR(y) - xy` without any checks.
pub fn double_product_unchecked(a: &Algebra, r: &Operator) -> Algebra {
    Algebra::from_products(a.dim(), |i, j| {
        let (ei, ej) = (a.basis(i), a.basis(j));
        a.mul(&r.image(i), &ej)
            .add(&a.mul(&ei, &r.image(j)))
            .sub(&a.basis_product(i, j))
    })
}

/// The double `x*y = R(x)y + xR(y) - xy` of an associative algebra with a
/// weight-1 Rota-Baxter operator. The result is associative.
pub fn double_product(a: &Algebra, r: &Operator) -> Result<Algebra, OperatorError> {
    require_associative(a)?;
    require_rota_baxter(a, r, &Scalar::one())?;
    verified(double_product_unchecked(a, r), AlgebraKind::Associative)
}

/// `x*y = R(x)y - yR(x) - λxy` without any checks.
pub fn induced_pre_lie_unchecked(a: &Algebra, r: &Operator, weight: &Scalar) -> Algebra {
    Algebra::from_products(a.dim(), |i, j| {
        let ej = a.basis(j);
        let ri = r.image(i);
        a.mul(&ri, &ej)
            .sub(&a.mul(&ej, &ri))
            .sub(&a.basis_product(i, j).scale(weight))
    })
}

/// The pre-Lie product `x*y = R(x)y - yR(x) - λxy` of an associative
/// algebra with a Rota-Baxter operator of weight `λ`.
///
/// For commutative `A` the brackets cancel and the result is `-xy`.
pub fn induced_pre_lie(a: &Algebra, r: &Operator, weight: &Scalar) -> Result<Algebra, OperatorError> {
    require_associative(a)?;
    require_rota_baxter(a, r, weight)?;
    verified(induced_pre_lie_unchecked(a, r, weight), AlgebraKind::PreLie)
}

/// Closed form of the weight-1 induced pre-Lie product on the type (II)
/// algebra `e1 e_i = e_i` for an idempotent `R`:
///
/// ```text
/// e1*e1 = -e1 - Σ_{k≥2} r1k e_k    e1*ej = (r11 - 1) ej
/// ej*e1 = -Σ_{k≥2} rjk e_k         ej*el = rj1 el
/// ```
pub fn type_ii_pre_lie(n: usize, r: &Operator) -> Result<Algebra, OperatorError> {
    if r.dim() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            got: r.dim(),
        }
        .into());
    }
    let defect = r.square().sub(r);
    if let Some(k) = defect.entries().iter().position(|e| !e.is_zero()) {
        return Err(OperatorError::Precondition(format!(
            "R is not idempotent: (R^2 - R) at {} is {}",
            pair_name(k / n, k % n),
            defect.entries()[k]
        )));
    }
    let tail = |row: usize| -> Element {
        let mut c: Vec<Scalar> = (0..n).map(|k| -r.entry(row, k)).collect();
        c[0] = Scalar::zero();
        Element::new(c)
    };
    Ok(Algebra::from_products(n, |i, j| match (i, j) {
        (0, 0) => tail(0).sub(&Element::basis(n, 0)),
        (0, j) => Element::basis(n, j).scale(&(r.entry(0, 0) - &Scalar::one())),
        (i, 0) => tail(i),
        (i, l) => Element::basis(n, l).scale(r.entry(i, 0)),
    })
    .with_kind(AlgebraKind::Unchecked))
}

/// A pair of products `≺`, `≻` satisfying
///
/// ```text
/// (x≺y)≺z = x≺(y*z)    (x≻y)≺z = x≻(y≺z)    x≻(y≻z) = (x*y)≻z
/// ```
///
/// where `x*y = x≺y + x≻y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DendriformAlgebra {
    left: Algebra,
    right: Algebra,
}

impl DendriformAlgebra {
    /// Checks the three axioms on all basis triples.
    pub fn new(left: Algebra, right: Algebra) -> Result<Self, AlgebraError> {
        if left.dim() != right.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: left.dim(),
                got: right.dim(),
            });
        }
        let d = DendriformAlgebra {
            left: left.with_kind(AlgebraKind::Unchecked),
            right: right.with_kind(AlgebraKind::Unchecked),
        };
        let n = d.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for (axiom, defect) in d.axiom_defects(i, j, k).iter().enumerate() {
                        if !defect.is_zero() {
                            return Err(AlgebraError::KindCheckFailed {
                                declared: "dendriform".into(),
                                detail: format!(
                                    "axiom {} at (e{},e{},e{}) has defect {}",
                                    axiom + 1,
                                    i + 1,
                                    j + 1,
                                    k + 1,
                                    defect
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    pub fn zero(dim: usize) -> Self {
        DendriformAlgebra {
            left: Algebra::zero(dim),
            right: Algebra::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    /// The product `≺`.
    pub fn left(&self) -> &Algebra {
        &self.left
    }

    /// The product `≻`.
    pub fn right(&self) -> &Algebra {
        &self.right
    }

    fn star(&self, x: &Element, y: &Element) -> Element {
        self.left.mul(x, y).add(&self.right.mul(x, y))
    }

    /// Left minus right side of each axiom on `(e_i, e_j, e_k)`.
    pub fn axiom_defects(&self, i: usize, j: usize, k: usize) -> [Element; 3] {
        let (l, r) = (&self.left, &self.right);
        let (x, y, z) = (l.basis(i), l.basis(j), l.basis(k));
        [
            l.mul(&l.mul(&x, &y), &z).sub(&l.mul(&x, &self.star(&y, &z))),
            l.mul(&r.mul(&x, &y), &z).sub(&r.mul(&x, &l.mul(&y, &z))),
            r.mul(&x, &r.mul(&y, &z)).sub(&r.mul(&self.star(&x, &y), &z)),
        ]
    }
}

/// `x≺y = xR(y) - λxy`, `x≻y = R(x)y` for a Rota-Baxter operator of
/// weight `λ` on an associative algebra.
pub fn dendriform_from_rb(a: &Algebra, r: &Operator, weight: &Scalar) -> Result<DendriformAlgebra, OperatorError> {
    require_associative(a)?;
    require_rota_baxter(a, r, weight)?;
    let left = Algebra::from_products(a.dim(), |i, j| {
        a.mul(&a.basis(i), &r.image(j)).sub(&a.basis_product(i, j).scale(weight))
    });
    let right = Algebra::from_products(a.dim(), |i, j| a.mul(&r.image(i), &a.basis(j)));
    Ok(DendriformAlgebra::new(left, right)?)
}

/// The associative product `x*y = x≺y + x≻y`.
pub fn dendriform_assoc(d: &DendriformAlgebra) -> Result<Algebra, OperatorError> {
    let out = Algebra::from_products(d.dim(), |i, j| {
        d.left.basis_product(i, j).add(&d.right.basis_product(i, j))
    });
    verified(out, AlgebraKind::Associative)
}

/// The pre-Lie product `x∘y = x≻y - y≺x`.
pub fn dendriform_pre_lie(d: &DendriformAlgebra) -> Result<Algebra, OperatorError> {
    let out = Algebra::from_products(d.dim(), |i, j| {
        d.right.basis_product(i, j).sub(&d.left.basis_product(j, i))
    });
    verified(out, AlgebraKind::PreLie)
}

/// `x*y = xy + yx + [B(x), y]` without any checks.
pub fn gs_pre_lie_unchecked(a: &Algebra, b: &Operator) -> Algebra {
    Algebra::from_products(a.dim(), |i, j| {
        let ej = a.basis(j);
        let bi = b.image(i);
        a.basis_product(i, j)
            .add(&a.basis_product(j, i))
            .add(&a.mul(&bi, &ej))
            .sub(&a.mul(&ej, &bi))
    })
}

/// `x*y = xy + yx + [B(x), y]` for an associative algebra and a solution
/// `B` of the modified Yang-Baxter equation.
///
/// With `B = 1 - 2R` this is `-2` times the product of
/// [`induced_pre_lie`] at weight 1.
pub fn gs_pre_lie(a: &Algebra, b: &Operator) -> Result<Algebra, OperatorError> {
    require_associative(a)?;
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let res = myb_residual(a, b, i, j)?;
            if !res.is_zero() {
                return Err(OperatorError::Precondition(format!(
                    "modified Yang-Baxter residual at {} is {}",
                    pair_name(i, j),
                    res
                )));
            }
        }
    }
    verified(gs_pre_lie_unchecked(a, b), AlgebraKind::PreLie)
}

/// `x*y = x·D(y)` for a derivation `D` of a commutative associative
/// algebra. The result is Novikov.
pub fn novikov_from_derivation(a: &Algebra, d: &Operator) -> Result<Algebra, OperatorError> {
    require_associative(a)?;
    if !a.is_commutative() {
        return Err(OperatorError::Precondition("algebra is not commutative".into()));
    }
    let n = a.dim();
    if d.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, got: d.dim() }.into());
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.app(&a.basis_product(i, j));
            let rhs = a.mul(&d.image(i), &a.basis(j)).add(&a.mul(&a.basis(i), &d.image(j)));
            if lhs != rhs {
                return Err(OperatorError::Precondition(format!(
                    "Leibniz rule fails at {}: {} vs {}",
                    pair_name(i, j),
                    lhs,
                    rhs
                )));
            }
        }
    }
    let out = Algebra::from_products(n, |i, j| a.mul(&a.basis(i), &d.image(j)));
    verified(out, AlgebraKind::Novikov)
}

/// `x*y = [R(x), y]` on a Lie algebra, for `R` satisfying the operator
/// form of the classical Yang-Baxter equation
/// `[R(x),R(y)] = R([R(x),y] + [x,R(y)])` (weight 0 on the bracket).
pub fn lie_rb_pre_lie(l: &Algebra, r: &Operator) -> Result<Algebra, OperatorError> {
    if !l.is_lie() {
        return Err(OperatorError::Precondition("input is not a Lie algebra".into()));
    }
    require_rota_baxter(l, r, &Scalar::zero())?;
    let out = Algebra::from_products(l.dim(), |i, j| l.mul(&r.image(i), &l.basis(j)));
    verified(out, AlgebraKind::PreLie)
}

/// Iterates the weight-1 pre-Lie construction with a fixed `R`:
/// `[A, (A,*_1), (A,*_2), ...]`. Stops after `max_steps` products or at
/// the first non-associative product, which is returned as the last term.
/// Algebras are compared by raw constants only.
pub fn iterate_double(a: &Algebra, r: &Operator, max_steps: usize) -> Result<Vec<Algebra>, OperatorError> {
    require_rota_baxter(a, r, &Scalar::one())?;
    let mut out = vec![a.clone()];
    let mut current = a.clone();
    for _ in 0..max_steps {
        if !current.is_associative() {
            break;
        }
        let next = induced_pre_lie(&current, r, &Scalar::one())?;
        let assoc = next.is_associative();
        let next = if assoc { next.with_kind(AlgebraKind::Associative) } else { next };
        out.push(next.clone());
        if !assoc {
            break;
        }
        current = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_scalar;
    use crate::operators::is_rota_baxter;

    fn sc(s: &str) -> Scalar {
        parse_scalar(s).unwrap()
    }

    fn type_ii(n: usize) -> Algebra {
        Algebra::from_products(n, |i, j| if i == 0 { Element::basis(n, j) } else { Element::zero(n) })
    }

    fn b1() -> Algebra {
        Algebra::from_int_table(2, &[(2, 1, 1, 1), (2, 2, 2, 1)]).unwrap()
    }

    #[test]
    fn double_of_trivial_operators() {
        let a3 = Algebra::from_int_table(2, &[(1, 1, 1, 1)]).unwrap();
        assert_eq!(double_product(&a3, &Operator::zero(2)).unwrap(), a3.map_constants(|c| -c));
        assert_eq!(double_product(&a3, &Operator::identity(2)).unwrap(), a3);
        let r = Operator::from_rows(vec![vec![sc("1"), sc("0")], vec![sc("0"), sc("r22")]]).unwrap();
        assert_eq!(double_product(&a3, &r).unwrap(), a3);
    }

    #[test]
    fn precondition_names_the_pair() {
        let d1 = Algebra::from_int_table(1, &[(1, 1, 1, 1)]).unwrap();
        let err = double_product(&d1, &Operator::from_ints(&[&[2]]).unwrap()).unwrap_err();
        assert!(err.to_string().contains("(e1,e1)"), "{}", err);
    }

    #[test]
    fn example_type_ii_in_dimension_two() {
        let r = Operator::from_rows(vec![vec![sc("1"), sc("0")], vec![sc("a"), sc("0")]]).unwrap();
        let p = induced_pre_lie(&type_ii(2), &r, &Scalar::one()).unwrap();
        let expected = Algebra::from_entries(2, vec![(0, 0, 0, sc("-1")), (1, 1, 1, sc("a"))]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(type_ii_pre_lie(2, &r).unwrap(), expected);
    }

    #[test]
    fn closed_form_matches_on_idempotents() {
        let zero = type_ii_pre_lie(2, &Operator::zero(2)).unwrap();
        let expected = Algebra::from_int_table(2, &[(1, 1, 1, -1), (1, 2, 2, -1)]).unwrap();
        assert_eq!(zero, expected);
        let id = type_ii_pre_lie(3, &Operator::identity(3)).unwrap();
        assert_eq!(id, Algebra::from_int_table(3, &[(1, 1, 1, -1), (2, 1, 2, -1), (3, 1, 3, -1)]).unwrap());
        let a = type_ii(3);
        for r in [
            Operator::identity(3),
            Operator::zero(3),
            Operator::from_ints(&[&[1, 2, -1], &[0, 0, 0], &[0, 0, 0]]).unwrap(),
            Operator::from_ints(&[&[0, 0, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap(),
        ] {
            assert!(r.is_idempotent());
            assert_eq!(
                type_ii_pre_lie(3, &r).unwrap(),
                induced_pre_lie(&a, &r, &Scalar::one()).unwrap()
            );
        }
        assert!(type_ii_pre_lie(2, &Operator::from_ints(&[&[2, 0], &[0, 0]]).unwrap()).is_err());
    }

    #[test]
    fn commutative_input_gives_negated_product() {
        let a1 = Algebra::from_int_table(2, &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let r = Operator::from_ints(&[&[1, 1], &[0, 0]]).unwrap();
        let p = induced_pre_lie(&a1, &r, &Scalar::one()).unwrap();
        assert_eq!(p, a1.map_constants(|c| -c));
        assert!(is_rota_baxter(&p, &r, &Scalar::one()));
    }

    #[test]
    fn t4_row_gives_t5_up_to_sign() {
        let t4 = Algebra::from_int_table(3, &[(3, 2, 2, 1), (3, 3, 3, 1)]).unwrap();
        let r = Operator::from_rows(vec![
            vec![sc("r11"), sc("0"), sc("0")],
            vec![sc("0"), sc("1"), sc("0")],
            vec![sc("0"), sc("0"), sc("1")],
        ])
        .unwrap();
        let p = induced_pre_lie(&t4, &r, &Scalar::one()).unwrap();
        let expected = Algebra::from_int_table(3, &[(2, 3, 2, -1), (3, 3, 3, -1)]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn dendriform_identities() {
        let a = Algebra::from_int_table(2, &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let d = dendriform_from_rb(&a, &Operator::identity(2), &Scalar::one()).unwrap();
        assert_eq!(d.left(), &Algebra::zero(2));
        assert_eq!(d.right(), &a);
        let d = dendriform_from_rb(&a, &Operator::zero(2), &Scalar::one()).unwrap();
        assert_eq!(d.left(), &a.map_constants(|c| -c));
        let r = Operator::from_ints(&[&[1, 0], &[1, 0]]).unwrap();
        let d = dendriform_from_rb(&b1(), &r, &Scalar::one()).unwrap();
        let assoc = dendriform_assoc(&d).unwrap();
        assert_eq!(assoc, double_product(&b1(), &r).unwrap());
        let pl = dendriform_pre_lie(&d).unwrap();
        assert_eq!(
            assoc.commutator_algebra().unwrap(),
            pl.commutator_algebra().unwrap()
        );
        assert_eq!(dendriform_assoc(&DendriformAlgebra::zero(3)).unwrap(), Algebra::zero(3));
        assert!(DendriformAlgebra::new(Algebra::zero(1), Algebra::from_int_table(1, &[(1, 1, 1, 1)]).unwrap()).is_ok());
        let unit = Algebra::from_int_table(1, &[(1, 1, 1, 1)]).unwrap();
        assert!(DendriformAlgebra::new(unit.clone(), unit).is_err());
    }

    #[test]
    fn gs_product_is_minus_two_times_induced() {
        let r = Operator::from_ints(&[&[1, 0], &[1, 0]]).unwrap();
        let b = r.scale(&Scalar::from_int(-2)).add(&Operator::identity(2));
        let gs = gs_pre_lie(&b1(), &b).unwrap();
        let pl = induced_pre_lie(&b1(), &r, &Scalar::one()).unwrap();
        assert_eq!(gs, pl.map_constants(|c| c * &Scalar::from_int(-2)));
        let a1 = Algebra::from_int_table(2, &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let any = Operator::from_ints(&[&[3, 1], &[4, 1]]).unwrap();
        assert_eq!(gs_pre_lie(&a1, &any).unwrap(), a1.map_constants(|c| c * &Scalar::from_int(2)));
    }

    #[test]
    fn novikov_on_truncated_polynomials() {
        // e1 = 1, e2 = t, e3 = t^2 in C[t]/(t^3), D = t d/dt
        let a = Algebra::from_int_table(
            3,
            &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1), (1, 3, 3, 1), (3, 1, 3, 1), (2, 2, 3, 1)],
        )
        .unwrap();
        let d = Operator::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]).unwrap();
        let nv = novikov_from_derivation(&a, &d).unwrap();
        assert_eq!(nv.basis_product(1, 1), Element::from_ints(&[0, 0, 1]));
        assert_eq!(nv.basis_product(0, 2), Element::from_ints(&[0, 0, 2]));
        assert_eq!(novikov_from_derivation(&a, &Operator::zero(3)).unwrap(), Algebra::zero(3));
        let ddt = Operator::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]]).unwrap();
        assert!(novikov_from_derivation(&a, &ddt).is_err());
    }

    #[test]
    fn classical_yang_baxter_pre_lie() {
        let l = Algebra::from_int_table(3, &[(2, 3, 2, 1), (3, 2, 2, -1)]).unwrap();
        // diag(0,1,0) fails at (e2,e3) with residual -e2; diag(0,0,1) works
        let bad = Operator::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]).unwrap();
        let err = lie_rb_pre_lie(&l, &bad).unwrap_err();
        assert!(err.to_string().contains("(e2,e3)"), "{}", err);
        let r = Operator::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]).unwrap();
        let p = lie_rb_pre_lie(&l, &r).unwrap();
        assert!(p.is_pre_lie());
        assert_eq!(lie_rb_pre_lie(&l, &Operator::zero(3)).unwrap(), Algebra::zero(3));
        assert!(lie_rb_pre_lie(&b1(), &Operator::zero(2)).is_err());
    }

    #[test]
    fn iteration_alternates_on_commutative_input() {
        let a1 = Algebra::from_int_table(2, &[(1, 1, 1, 1), (2, 2, 2, 1)]).unwrap();
        let r = Operator::from_ints(&[&[1, 0], &[0, 0]]).unwrap();
        let seq = iterate_double(&a1, &r, 4).unwrap();
        assert_eq!(seq.len(), 5);
        for (k, s) in seq.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(s, &a1.map_constants(|c| c * &Scalar::from_int(sign)));
        }
        assert_eq!(iterate_double(&a1, &r, 0).unwrap(), vec![a1]);
    }

    #[test]
    fn opposite_with_complement_gives_same_product() {
        let r = Operator::symbolic(2, "r");
        let p = induced_pre_lie_unchecked(&b1(), &r, &Scalar::one());
        let q = induced_pre_lie_unchecked(&b1().opposite(), &r.one_minus(), &Scalar::one());
        assert_eq!(p, q);
    }
}
