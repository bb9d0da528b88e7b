//! Exact scalars: Gaussian rationals, polynomials, and quotients whose
//! denominators are products of recorded nonvanishing polynomials.
//!
//! A `Scalar` is stored as `num / (a_1^e_1 * ... * a_k^e_k)` where every
//! atom `a_i` is a monic non-constant polynomial that arithmetic was asked
//! to divide by. Atoms are never discarded: they are exactly the
//! "must not vanish" conditions under which the value is defined, and
//! [`Scalar::eval`] refuses any point where one of them is zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussRat, Poly, Symbol};
use crate::error::ScalarError;

#[derive(Clone, Default)]
pub struct Scalar {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

/// The shape of a scalar, mirroring the three value classes it can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarClass {
    Constant,
    Polynomial,
    Quotient,
}

pub type Assignment = BTreeMap<Symbol, GaussRat>;

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Scalar::constant(GaussRat::frac(p, q))
    }

    pub fn constant(c: GaussRat) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Scalar::from_poly(Poly::var(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: BTreeMap::new(),
        }
    }

    /// `num / den`, recording `den` as a nonvanishing condition.
    pub fn quotient(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        Scalar::from_poly(num).div(&Scalar::from_poly(den))
    }

    pub fn class(&self) -> ScalarClass {
        if !self.den.is_empty() {
            ScalarClass::Quotient
        } else if self.num.is_constant() {
            ScalarClass::Constant
        } else {
            ScalarClass::Polynomial
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Recorded denominator atoms with multiplicities.
    pub fn denominator_atoms(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(p, e)| (p, *e))
    }

    /// Product of the denominator atoms (1 for polynomials).
    pub fn denominator(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(), |acc, (p, e)| &acc * &p.pow(*e))
    }

    /// Polynomials that must not vanish for the value to be defined.
    pub fn conditions(&self) -> Vec<Poly> {
        self.den.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        if self.den.is_empty() {
            self.num.as_symbol()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut vars = self.num.variables();
        for atom in self.den.keys() {
            vars.extend(atom.variables());
        }
        vars
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        if self.den.is_empty() {
            return self;
        }
        let atoms: Vec<Poly> = self.den.keys().cloned().collect();
        for atom in atoms {
            let e = self.den.get_mut(&atom).unwrap();
            while *e > 0 {
                match self.num.exact_div(&atom) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
            if *e == 0 {
                self.den.remove(&atom);
            }
        }
        self
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        Scalar {
            num: self.num.scale(c),
            den: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let den_product = self.denominator();
        if let Some(c) = self.num.as_constant() {
            let ci = c.inv().ok_or(ScalarError::DivisionByZero)?;
            return Ok(Scalar::from_poly(den_product.scale(&ci)));
        }
        let (lc, atom) = self.num.monic();
        let ci = lc.inv().ok_or(ScalarError::DivisionByZero)?;
        let mut den = BTreeMap::new();
        den.insert(atom, 1);
        Ok(Scalar {
            num: den_product.scale(&ci),
            den,
        }
        .normalized())
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.iter().map(|(p, k)| (p.clone(), k * e)).collect(),
        }
        .normalized()
    }

    /// Evaluates at a point; every symbol must be assigned and no recorded
    /// condition may vanish.
    pub fn eval(&self, assignment: &Assignment) -> Result<GaussRat, ScalarError> {
        let mut den_val = GaussRat::one();
        for (atom, e) in &self.den {
            let v = atom.eval(assignment).map_err(ScalarError::Unassigned)?;
            if v.is_zero() {
                return Err(ScalarError::ConditionViolated(atom.to_string()));
            }
            den_val = &den_val * &v.pow(*e);
        }
        let n = self.num.eval(assignment).map_err(ScalarError::Unassigned)?;
        Ok(&n * &den_val.inv().expect("nonzero denominator"))
    }

    /// Substitutes the assigned symbols, keeping the others symbolic.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Scalar, ScalarError> {
        let mut out = Scalar::from_poly(self.num.substitute(assignment));
        for (atom, e) in &self.den {
            let a = atom.substitute(assignment);
            if a.is_zero() {
                return Err(ScalarError::ConditionViolated(atom.to_string()));
            }
            out = out.div(&Scalar::from_poly(a).pow(*e))?;
        }
        Ok(out)
    }

    /// Replaces symbols by polynomials. Fails if a denominator collapses to zero.
    pub fn compose(&self, map: &BTreeMap<Symbol, Poly>) -> Result<Scalar, ScalarError> {
        let mut out = Scalar::from_poly(self.num.compose(map));
        for (atom, e) in &self.den {
            let a = atom.compose(map);
            if a.is_zero() {
                return Err(ScalarError::ConditionViolated(atom.to_string()));
            }
            out = out.div(&Scalar::from_poly(a).pow(*e))?;
        }
        Ok(out)
    }

    /// Reduces the numerator modulo the ideal generated by `relations`
    /// (side relations such as `s^2 - (r11^2 - r11)` for slack symbols).
    pub fn reduce_by(&self, relations: &[Poly]) -> Result<Scalar, crate::error::SolveError> {
        if relations.iter().all(Poly::is_zero) {
            return Ok(self.clone());
        }
        let system = crate::polysolve::PolySystem::from_generators(relations.to_vec());
        let gb = crate::polysolve::buchberger(
            &system,
            crate::polysolve::MonomialOrder::DegRevLex,
            &crate::polysolve::Budget::default(),
        )?;
        Ok(Scalar {
            num: gb.normal_form(&self.num),
            den: self.den.clone(),
        }
        .normalized())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.denominator() == &other.num * &self.denominator()
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_empty() && rhs.den.is_empty() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (p, e) in &rhs.den {
            let slot = lcm.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |s: &Scalar| {
            lcm.iter().fold(s.num.clone(), |acc, (p, e)| {
                let have = s.den.get(p).copied().unwrap_or(0);
                if *e > have {
                    &acc * &p.pow(e - have)
                } else {
                    acc
                }
            })
        };
        Scalar {
            num: &lift(self) + &lift(rhs),
            den: lcm,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_empty() && rhs.den.is_empty() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        let mut den = self.den.clone();
        for (p, e) in &rhs.den {
            *den.entry(p.clone()).or_insert(0) += e;
        }
        Scalar {
            num: &self.num * &rhs.num,
            den,
        }
        .normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::constant(c)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

fn fmt_factor(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.num_terms() > 1 || !p.leading_coeff().is_one() {
        write!(f, "({})", p)
    } else {
        write!(f, "{}", p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let c = self.num.as_constant();
        let simple_num = self.num.num_terms() == 1
            && (c.as_ref().map(|c| c.is_real()).unwrap_or(false)
                || self.num.leading_coeff().is_one());
        if simple_num {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        write!(f, "/")?;
        let single = self.den.len() == 1 && *self.den.values().next().unwrap() == 1;
        if single {
            fmt_factor(self.den.keys().next().unwrap(), f)
        } else {
            write!(f, "(")?;
            for (k, (p, e)) in self.den.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                write!(f, "({})", p)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
            write!(f, ")")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_scalar;

    fn s(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    fn at(pairs: &[(&str, GaussRat)]) -> Assignment {
        pairs
            .iter()
            .map(|(k, v)| (Symbol::new(k), v.clone()))
            .collect()
    }

    #[test]
    fn gaussian_product() {
        assert_eq!(&s("1/2+i") * &s("1/2-i"), s("5/4"));
        assert_eq!(s("2").inv().unwrap(), s("1/2"));
    }

    #[test]
    fn inverting_zero_fails() {
        let z = &s("r11") - &s("r11");
        assert_eq!(z.inv().unwrap_err().to_string(), "division by zero scalar");
    }

    #[test]
    fn slack_relation_reduction() {
        let rel = Poly::var("s").pow(2) - (&Poly::var("r11").pow(2) - &Poly::var("r11"));
        let prod = &s("r11+s") * &s("r11-s");
        assert_eq!(prod.reduce_by(&[rel]).unwrap(), s("r11"));
    }

    #[test]
    fn quotient_substitution() {
        let q = s("r11^2/(2*r11-1)");
        assert_eq!(q.class(), ScalarClass::Quotient);
        assert_eq!(q.eval(&at(&[("r11", GaussRat::from_int(1))])).unwrap(), GaussRat::one());
        assert_eq!(s("r11").eval(&at(&[("r11", GaussRat::zero())])).unwrap(), GaussRat::zero());
        let err = q.eval(&at(&[("r11", GaussRat::frac(1, 2))])).unwrap_err();
        assert_eq!(err.to_string(), "nonvanishing condition violated: r11-1/2 = 0");
    }

    #[test]
    fn cancellation_keeps_value() {
        let q = s("(r11^2-r11)/(r11-1)");
        assert_eq!(q, s("r11"));
        assert_eq!(q.class(), ScalarClass::Polynomial);
    }

    #[test]
    fn quotient_sum_uses_shared_atoms() {
        let a = s("1/(l-1)");
        let b = s("l/(l-1)");
        assert_eq!(&b - &a, s("1"));
        let sum = &s("1/r23") + &s("1/(2*r11-1)");
        assert_eq!(sum.denominator_atoms().count(), 2);
    }

    #[test]
    fn display_round_trip() {
        for text in ["r11^2/(2*r11-1)", "(r21-r11*r21)/r23", "-1/(l-1)", "1/2-3*i"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v, "{}", text);
        }
    }
}
