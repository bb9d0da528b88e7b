//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Variables are named symbols; a monomial is a sorted list of
//! `(symbol, exponent)` pairs. Terms live in a `BTreeMap`, so two
//! polynomials built along different paths compare equal structurally.
//! Printing uses degree-reverse-lexicographic order with symbols ranked
//! alphabetically (earlier name = larger variable).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::GaussRat;

/// An interned variable name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Product of symbol powers, sorted by symbol, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *map.entry(s).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.cmp(s))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < other.0.len() && &other.0[j].0 == s {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if *e > f {
                    out.push((s.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *s {
                return None;
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Degree-reverse-lexicographic comparison, alphabetical symbol ranking.
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // walk from the smallest variable (alphabetically last) upwards
        let (mut i, mut j) = (self.0.len(), other.0.len());
        while i > 0 || j > 0 {
            let a = if i > 0 { Some(&self.0[i - 1]) } else { None };
            let b = if j > 0 { Some(&other.0[j - 1]) } else { None };
            let (ea, eb) = match (a, b) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Greater => {
                        i -= 1;
                        (a.1, 0)
                    }
                    Ordering::Less => {
                        j -= 1;
                        (0, b.1)
                    }
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                        (a.1, b.1)
                    }
                },
                (Some(a), None) => {
                    i -= 1;
                    (a.1, 0)
                }
                (None, Some(b)) => {
                    j -= 1;
                    (0, b.1)
                }
                (None, None) => unreachable!(),
            };
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}^{}", s, e)?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with `GaussRat` coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Poly::symbol(Symbol::new(name))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(s), GaussRat::one());
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The symbol if the polynomial is exactly one variable with coefficient 1.
    pub fn as_symbol(&self) -> Option<&Symbol> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        match m.factors() {
            [(s, 1)] if c.is_one() => Some(s),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// Terms ordered by descending degrevlex.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_degrevlex(a.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Leading term under degrevlex; `None` for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_degrevlex(b.0))
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Splits into `(leading coefficient, monic polynomial)`.
    pub fn monic(&self) -> (GaussRat, Poly) {
        let lc = self.leading_coeff();
        match lc.inv() {
            Some(inv) => (lc, self.scale(&inv)),
            None => (GaussRat::zero(), Poly::zero()),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Full evaluation; returns the first unassigned symbol on failure.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, GaussRat>) -> Result<GaussRat, Symbol> {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.factors() {
                let v = assignment.get(s).ok_or_else(|| s.clone())?;
                t = &t * &v.pow(*e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes the assigned symbols and leaves the rest symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<Symbol, GaussRat>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (s, e) in m.factors() {
                match assignment.get(s) {
                    Some(v) => coef = &coef * &v.pow(*e),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), &coef);
        }
        out
    }

    /// Replaces symbols by polynomials.
    pub fn compose(&self, map: &BTreeMap<Symbol, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for (s, e) in m.factors() {
                match map.get(s) {
                    Some(p) => t = &t * &p.pow(*e),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out = &out + &t.mul_monomial(&Monomial(rest), &GaussRat::one());
        }
        out
    }

    /// Renames symbols.
    pub fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m
                .factors()
                .iter()
                .map(|(s, e)| (map.get(s).cloned().unwrap_or_else(|| s.clone()), *e));
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(lm)?;
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, &qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to powers of `s`: `self = sum_k coeff[k] * s^k`.
    pub fn coefficients_in(&self, s: &Symbol) -> Vec<Poly> {
        let deg = self.degree_in(s) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            let rest = Monomial(m.factors().iter().filter(|(v, _)| v != s).cloned().collect());
            out[e as usize].add_term(rest, c);
        }
        out
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denom_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<GaussRat> for Poly {
    fn from(c: GaussRat) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    /// Expanded form with explicit `*` and `^`, no whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg_real = c.is_real() && c.re() < &num_rational::BigRational::zero();
            let (sign, mag) = if neg_real { ("-", -c) } else { ("+", c.clone()) };
            if k > 0 || sign == "-" {
                write!(f, "{}", sign)?;
            }
            if m.is_one() {
                if mag.needs_parens() && k > 0 {
                    write!(f, "({})", mag)?;
                } else {
                    write!(f, "{}", mag)?;
                }
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else if mag.needs_parens() {
                write!(f, "({})*{}", mag, m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var("x")
    }
    fn y() -> Poly {
        Poly::var("y")
    }

    #[test]
    fn different_build_orders_agree() {
        let a = &(&x() + &y()) * &(&x() - &y());
        let b = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^2-y^2");
    }

    #[test]
    fn degrevlex_ranking() {
        let xy = Monomial::from_pairs([(Symbol::new("x"), 1), (Symbol::new("y"), 1)]);
        let x2 = Monomial::from_pairs([(Symbol::new("x"), 2)]);
        let y2 = Monomial::from_pairs([(Symbol::new("y"), 2)]);
        let x3 = Monomial::from_pairs([(Symbol::new("x"), 3)]);
        assert_eq!(x2.cmp_degrevlex(&xy), Ordering::Greater);
        assert_eq!(xy.cmp_degrevlex(&y2), Ordering::Greater);
        assert_eq!(x3.cmp_degrevlex(&x2), Ordering::Greater);
        // x*z^2 < y^3 under degrevlex with x > y > z
        let xz2 = Monomial::from_pairs([(Symbol::new("x"), 1), (Symbol::new("z"), 2)]);
        let y3 = Monomial::from_pairs([(Symbol::new("y"), 3)]);
        assert_eq!(xz2.cmp_degrevlex(&y3), Ordering::Less);
    }

    #[test]
    fn exact_division() {
        let p = &x().pow(3) - &x();
        let d = &x().pow(2) - &Poly::one();
        assert_eq!(p.exact_div(&d), Some(x()));
        assert_eq!((&x() + &Poly::one()).exact_div(&d), None);
    }

    #[test]
    fn display_coefficients() {
        let p = &(&x().scale(&GaussRat::frac(-1, 2)) + &y().pow(2)) + &Poly::constant(GaussRat::i());
        assert_eq!(p.to_string(), "y^2-1/2*x+i");
        let q = x().scale(&(&GaussRat::from_int(1) + &GaussRat::i()));
        assert_eq!(q.to_string(), "(1+i)*x");
    }

    #[test]
    fn evaluation_and_partial_substitution() {
        let p = &(&x() * &y()) + &x();
        let mut a = BTreeMap::new();
        a.insert(Symbol::new("x"), GaussRat::from_int(2));
        assert_eq!(p.substitute(&a).to_string(), "2*y+2");
        assert_eq!(p.eval(&a), Err(Symbol::new("y")));
        a.insert(Symbol::new("y"), GaussRat::from_int(3));
        assert_eq!(p.eval(&a), Ok(GaussRat::from_int(8)));
    }
}
