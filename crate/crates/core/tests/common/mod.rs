//! Shared oracle for the property and acceptance suites: a dense
//! structure-constant evaluator independent of the library's own
//! multiplication and residual code, plus the pool of catalog families.

#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use rbalg::catalog::{self, CatalogEntry};
use rbalg::classify::{generic_points, grid_points};
use rbalg::constructions::{dendriform_from_rb, double_product_unchecked, induced_pre_lie_unchecked};
use rbalg::{Algebra, Assignment, Budget, GaussRat, Operator, OperatorFamily, Scalar};

type V = Vec<GaussRat>;

pub fn zero() -> GaussRat {
    GaussRat::from_int(0)
}

/// Dense structure constants `c[(i*n + j)*n + k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tab {
    pub n: usize,
    pub c: Vec<GaussRat>,
}

impl Tab {
    pub fn of(a: &Algebra) -> Tab {
        let n = a.dim();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(a.constant(i, j, k).as_constant().expect("concrete algebra"));
                }
            }
        }
        Tab { n, c }
    }

    pub fn from_fn(n: usize, f: impl Fn(&V, &V) -> V) -> Tab {
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                c.extend(f(&basis(n, i), &basis(n, j)));
            }
        }
        Tab { n, c }
    }

    pub fn mul(&self, x: &V, y: &V) -> V {
        let n = self.n;
        let mut out = vec![zero(); n];
        for i in 0..n {
            if x[i] == zero() {
                continue;
            }
            for j in 0..n {
                if y[j] == zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    let c = &self.c[(i * n + j) * n + k];
                    if *c != zero() {
                        out[k] += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn opposite(&self) -> Tab {
        Tab::from_fn(self.n, |x, y| self.mul(y, x))
    }

    pub fn algebra(&self) -> Algebra {
        let n = self.n;
        let entries = (0..n * n * n).map(|s| (s / (n * n), (s / n) % n, s % n, Scalar::constant(self.c[s].clone())));
        Algebra::from_entries(n, entries).unwrap()
    }

    pub fn same_product(&self, a: &Algebra) -> bool {
        *self == Tab::of(a)
    }
}

/// Row `i` is the image of `e_i`.
#[derive(Clone, Debug)]
pub struct Mat {
    pub n: usize,
    pub m: Vec<GaussRat>,
}

impl Mat {
    pub fn of(r: &Operator) -> Mat {
        Mat {
            n: r.dim(),
            m: r.concrete_entries().expect("concrete operator"),
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = vec![zero(); n * n];
        for i in 0..n {
            m[i * n + i] = GaussRat::from_int(1);
        }
        Mat { n, m }
    }

    pub fn apply(&self, x: &V) -> V {
        let n = self.n;
        let mut out = vec![zero(); n];
        for i in 0..n {
            if x[i] == zero() {
                continue;
            }
            for k in 0..n {
                out[k] += &(&x[i] * &self.m[i * n + k]);
            }
        }
        out
    }

    /// `a*self + b*1`.
    pub fn affine(&self, a: &GaussRat, b: &GaussRat) -> Mat {
        let n = self.n;
        let mut m: Vec<GaussRat> = self.m.iter().map(|v| a * v).collect();
        for i in 0..n {
            m[i * n + i] += b;
        }
        Mat { n, m }
    }

    pub fn compose(&self, other: &Mat) -> Mat {
        // (self after other)(e_i) = self(other(e_i))
        let n = self.n;
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n {
            m.extend(self.apply(&other.apply(&basis(n, i))));
        }
        Mat { n, m }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).m == self.m
    }
}

pub fn basis(n: usize, i: usize) -> V {
    let mut v = vec![zero(); n];
    v[i] = GaussRat::from_int(1);
    v
}

pub fn add(x: &V, y: &V) -> V {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &V, y: &V) -> V {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn is_zero(x: &V) -> bool {
    x.iter().all(|c| *c == zero())
}

pub fn pairs(n: usize) -> impl Iterator<Item = (V, V)> {
    (0..n * n).map(move |s| (basis(n, s / n), basis(n, s % n)))
}

pub fn triples(n: usize) -> impl Iterator<Item = (V, V, V)> {
    (0..n * n * n).map(move |s| (basis(n, s / (n * n)), basis(n, (s / n) % n), basis(n, s % n)))
}

/// R(x)R(y) + R(xy) = R(R(x)y + xR(y)) on basis pairs.
pub fn is_rb(t: &Tab, r: &Mat) -> bool {
    pairs(t.n).all(|(x, y)| {
        let (rx, ry) = (r.apply(&x), r.apply(&y));
        let lhs = add(&t.mul(&rx, &ry), &r.apply(&t.mul(&x, &y)));
        let rhs = r.apply(&add(&t.mul(&rx, &y), &t.mul(&x, &ry)));
        lhs == rhs
    })
}

pub fn is_associative(t: &Tab) -> bool {
    triples(t.n).all(|(x, y, z)| t.mul(&t.mul(&x, &y), &z) == t.mul(&x, &t.mul(&y, &z)))
}

pub fn is_pre_lie(t: &Tab) -> bool {
    triples(t.n).all(|(x, y, z)| {
        let axy = sub(&t.mul(&t.mul(&x, &y), &z), &t.mul(&x, &t.mul(&y, &z)));
        let ayx = sub(&t.mul(&t.mul(&y, &x), &z), &t.mul(&y, &t.mul(&x, &z)));
        axy == ayx
    })
}

pub fn bracket(t: &Tab, x: &V, y: &V) -> V {
    sub(&t.mul(x, y), &t.mul(y, x))
}

/// x*y = R(x)y - yR(x) - xy.
pub fn induced(t: &Tab, r: &Mat) -> Tab {
    Tab::from_fn(t.n, |x, y| {
        let rx = r.apply(x);
        sub(&sub(&t.mul(&rx, y), &t.mul(y, &rx)), &t.mul(x, y))
    })
}

pub fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// Every identity for one associative algebra with a weight-1 operator.
pub fn check_identities(a: &Algebra, r: &Operator, alpha: &GaussRat) -> Result<(), TestCaseError> {
    let t = Tab::of(a);
    let rm = Mat::of(r);
    let n = t.n;
    let one = GaussRat::from_int(1);
    check(is_associative(&t), "input associative")?;
    check(is_rb(&t, &rm), "specialization is Rota-Baxter")?;
    check(rbalg::is_rota_baxter(a, r, &Scalar::one()), "library agrees on the RB relation")?;

    // 1 - R
    let co = rm.affine(&-&one, &one);
    check(is_rb(&t, &co), "1-R is Rota-Baxter")?;

    // the double product is associative and R stays Rota-Baxter on it
    let dbl = Tab::from_fn(n, |x, y| {
        sub(&add(&t.mul(&rm.apply(x), y), &t.mul(x, &rm.apply(y))), &t.mul(x, y))
    });
    check(dbl.same_product(&double_product_unchecked(a, r)), "library double product")?;
    check(is_associative(&dbl), "double product associative")?;
    check(is_rb(&dbl, &rm), "R is Rota-Baxter on the double")?;

    // B = 1 - 2R solves the modified Yang-Baxter equation
    let b = rm.affine(&GaussRat::from_int(-2), &one);
    let myb = pairs(n).all(|(x, y)| {
        let (bx, by) = (b.apply(&x), b.apply(&y));
        let lhs = add(&bracket(&t, &bx, &by), &bracket(&t, &x, &y));
        let rhs = b.apply(&add(&bracket(&t, &bx, &y), &bracket(&t, &x, &by)));
        lhs == rhs
    });
    check(myb, "1-2R satisfies the modified Yang-Baxter equation")?;

    // RB(A) = RB(A^op), and the opposite is an involution
    let op = t.opposite();
    check(is_associative(&op), "opposite associative")?;
    check(is_rb(&op, &rm), "R is Rota-Baxter on the opposite")?;
    check(op.opposite() == t, "opposite of opposite")?;
    check(op.same_product(&a.opposite()), "library opposite")?;

    // idempotent R gives Nijenhuis operators (1+a)R - a
    if rm.is_idempotent() {
        let nm = rm.affine(&(&one + alpha), &-alpha);
        let n2 = nm.compose(&nm);
        let nij = pairs(n).all(|(x, y)| {
            let (nx, ny) = (nm.apply(&x), nm.apply(&y));
            let lhs = add(&t.mul(&nx, &ny), &n2.apply(&t.mul(&x, &y)));
            let rhs = nm.apply(&add(&t.mul(&nx, &y), &t.mul(&x, &ny)));
            lhs == rhs
        });
        check(nij, "Nijenhuis relation for an idempotent")?;
    }

    // the induced product is pre-Lie, and R is Rota-Baxter on it
    let star = induced(&t, &rm);
    check(star.same_product(&induced_pre_lie_unchecked(a, r, &Scalar::one())), "library induced product")?;
    check(is_pre_lie(&star), "induced product is pre-Lie")?;
    check(is_rb(&star, &rm), "R is Rota-Baxter on the induced algebra")?;

    // (A, R) and (A^op, 1 - R) induce the same product
    check(induced(&op, &co) == star, "(A,R) and (A^op,1-R) agree")?;

    // dendriform: x<y = xR(y) - xy, x>y = R(x)y
    let left = Tab::from_fn(n, |x, y| sub(&t.mul(x, &rm.apply(y)), &t.mul(x, y)));
    let right = Tab::from_fn(n, |x, y| t.mul(&rm.apply(x), y));
    let sum = Tab::from_fn(n, |x, y| add(&left.mul(x, y), &right.mul(x, y)));
    let dend = triples(n).all(|(x, y, z)| {
        left.mul(&left.mul(&x, &y), &z) == left.mul(&x, &sum.mul(&y, &z))
            && left.mul(&right.mul(&x, &y), &z) == right.mul(&x, &left.mul(&y, &z))
            && right.mul(&x, &right.mul(&y, &z)) == right.mul(&sum.mul(&x, &y), &z)
    });
    check(dend, "dendriform axioms")?;
    let d = dendriform_from_rb(a, r, &Scalar::one()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(left.same_product(d.left()) && right.same_product(d.right()), "library dendriform products")?;
    check(is_associative(&sum), "dendriform sum associative")?;
    let circ = Tab::from_fn(n, |x, y| sub(&right.mul(x, y), &left.mul(y, x)));
    check(is_pre_lie(&circ), "dendriform circle product pre-Lie")?;
    check(
        pairs(n).all(|(x, y)| bracket(&sum, &x, &y) == bracket(&circ, &x, &y)),
        "same sub-adjacent Lie algebra",
    )?;
    Ok(())
}

/// Verified associative entries with concrete structure constants;
/// parametric ones are taken at a few parameter values.
pub fn associative_entries() -> Vec<CatalogEntry> {
    let mut labels = catalog::labels();
    labels.extend(["type-II(3)", "type-II(4)", "type-III(3)"].map(String::from));
    let mut out = Vec::new();
    for l in labels {
        let e = catalog::load(&l).unwrap_or_else(|err| panic!("{}: {}", l, err));
        if !e.algebra.is_associative() && e.algebra.is_concrete() {
            continue;
        }
        if e.algebra.is_concrete() {
            out.push(e);
            continue;
        }
        for v in [GaussRat::from_int(2), GaussRat::frac(-1, 2), GaussRat::i()] {
            let point: Assignment = e.algebra.parameters().into_iter().map(|s| (s, v.clone())).collect();
            if let Ok(s) = e.at_parameters(&point) {
                if s.algebra.is_associative() {
                    out.push(s);
                }
            }
        }
    }
    out
}

pub struct Case {
    pub algebra: Algebra,
    pub family: OperatorFamily,
    pub points: Vec<Assignment>,
}

pub fn pool() -> &'static [Case] {
    static POOL: OnceLock<Vec<Case>> = OnceLock::new();
    POOL.get_or_init(|| {
        let budget = Budget::default();
        let mut out = Vec::new();
        for e in associative_entries() {
            for f in &e.families {
                let mut points = generic_points(f, 3, &budget);
                points.extend(grid_points(f, 4));
                if f.parameters().is_empty() {
                    points = vec![Assignment::new()];
                }
                out.push(Case {
                    algebra: e.algebra.clone(),
                    family: f.clone(),
                    points,
                });
            }
        }
        out
    })
}

pub fn small_value() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, any::<bool>()).prop_map(|(p, q, imag)| {
        let v = GaussRat::frac(p, q);
        if imag {
            &v * &GaussRat::i()
        } else {
            v
        }
    })
}

/// A point of the family: free parameters get random values when the
/// family has no relations, otherwise one of the precomputed points.
pub fn specialize(case: &Case, seed: usize, values: &[GaussRat]) -> Option<Operator> {
    let f = &case.family;
    if f.relations.is_empty() && !f.parameters().is_empty() {
        let point: Assignment = f
            .parameters()
            .into_iter()
            .zip(values.iter().cycle())
            .map(|(s, v)| (s, v.clone()))
            .collect();
        if f.admits(&point) {
            return f.specialize(&point).ok();
        }
    }
    let p = case.points.get(seed % case.points.len().max(1))?;
    f.specialize(p).ok()
}

/// Invertible matrix from elementary row operations, with its inverse.
pub fn elementary(n: usize, ops: &[(usize, usize, i64, bool)]) -> (Mat, Mat) {
    let mut t = Mat::identity(n);
    let mut inv = Mat::identity(n);
    for &(i, j, c, scale) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = Mat::identity(n);
        let mut f = Mat::identity(n);
        if scale {
            let c = if c == 0 { 2 } else { c };
            e.m[i * n + i] = GaussRat::from_int(c);
            f.m[i * n + i] = GaussRat::frac(1, c);
        } else if i != j {
            e.m[i * n + j] = GaussRat::from_int(c);
            f.m[i * n + j] = GaussRat::from_int(-c);
        }
        t = e.compose(&t);
        inv = inv.compose(&f);
    }
    (t, inv)
}

pub fn to_operator(m: &Mat) -> Operator {
    Operator::from_gauss(m.n, m.m.clone())
}
