//! Univariate polynomials over `Q(i)` and exact root finding: quadratics by
//! an exact square root in `Q(i)`, higher degrees by enumerating Gaussian
//! integer divisors of the constant and leading coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SolveError;
use crate::exactnum::{GaussRat, Monomial, Poly, Symbol};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GaussRat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Reads a polynomial in the single variable `x`; `None` if other
    /// symbols occur.
    pub fn from_poly(p: &Poly, x: &Symbol) -> Option<Self> {
        let mut coeffs = vec![GaussRat::zero(); p.degree_in(x) as usize + 1];
        for (m, c) in p.terms() {
            if m.factors().iter().any(|(s, _)| s != x) {
                return None;
            }
            coeffs[m.exponent(x) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self, x: &Symbol) -> Poly {
        Poly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| {
            let m = if k == 0 {
                Monomial::one()
            } else {
                Monomial::from_pairs([(x.clone(), k as u32)])
            };
            (m, c.clone())
        }))
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRat::from_int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return (UniPoly::new(vec![]), self.clone());
        }
        let inv = d.coeffs.last().unwrap().inv().expect("nonzero");
        let mut q = vec![GaussRat::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dl - 1] * &inv;
            if !c.is_zero() {
                for (t, dc) in d.coeffs.iter().enumerate() {
                    rem[k + t] -= &(&c * dc);
                }
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UniPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

/// Square root in `Q(i)` when one exists.
pub fn gauss_sqrt(z: &GaussRat) -> Option<GaussRat> {
    if z.is_zero() {
        return Some(GaussRat::zero());
    }
    let a = z.re().clone();
    let b = z.im().clone();
    let m = rat_sqrt(&(&a * &a + &b * &b))?;
    let two = BigRational::from_integer(BigInt::from(2));
    let x2 = (&m + &a) / &two;
    let y2 = (&m - &a) / &two;
    let x = rat_sqrt(&x2)?;
    let mut y = rat_sqrt(&y2)?;
    // choose sign of y so that 2xy = b
    if (&two * &x * &y) != b {
        y = -y;
    }
    let r = GaussRat::new(x, y);
    if &r * &r == *z {
        Some(r)
    } else {
        None
    }
}

fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

type GInt = (BigInt, BigInt);

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gnorm(a: &GInt) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// Exact quotient `a / b` in `Z[i]`, if it exists.
fn gdiv(a: &GInt, b: &GInt) -> Option<GInt> {
    let n = gnorm(b);
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    if re.is_multiple_of(&n) && im.is_multiple_of(&n) {
        Some((re / &n, im / &n))
    } else {
        None
    }
}

/// Factors a positive integer by trial division.
fn factor_int(n: &BigInt, budget: &mut u64) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Some(out)
}

/// Gaussian prime above a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: &BigInt, budget: &mut u64) -> Option<GInt> {
    let mut x = BigInt::one();
    while &x * &x < *p {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let r = p - &x * &x;
        let y = r.sqrt();
        if &y * &y == r {
            return Some((x, y));
        }
        x += 1;
    }
    None
}

/// All divisors of a nonzero Gaussian integer, up to units when
/// `up_to_units`, otherwise all associates included.
fn gaussian_divisors(z: &GInt, up_to_units: bool, budget: &mut u64) -> Option<Vec<GInt>> {
    let norm = gnorm(z);
    let mut primes: Vec<GInt> = Vec::new();
    for (p, _) in factor_int(&norm, budget)? {
        let four = BigInt::from(4);
        let r = p.mod_floor(&four);
        if p == BigInt::from(2) {
            primes.push((BigInt::one(), BigInt::one()));
        } else if r == BigInt::from(3) {
            primes.push((p, BigInt::zero()));
        } else {
            let pi = split_prime(&p, budget)?;
            primes.push((pi.0.clone(), -pi.1.clone()));
            primes.push(pi);
        }
    }
    // exponent of each Gaussian prime in z
    let mut rest = z.clone();
    let mut powers: Vec<(GInt, u32)> = Vec::new();
    for pi in primes {
        let mut e = 0;
        while let Some(q) = gdiv(&rest, &pi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            powers.push((pi, e));
        }
    }
    let mut divs: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    for (pi, e) in powers {
        let mut next = Vec::new();
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = gmul(&acc, &pi);
                next.push(acc.clone());
            }
        }
        if next.len() as u64 > *budget {
            return None;
        }
        divs = next;
    }
    if up_to_units {
        return Some(divs);
    }
    let units: [GInt; 4] = [
        (BigInt::one(), BigInt::zero()),
        (-BigInt::one(), BigInt::zero()),
        (BigInt::zero(), BigInt::one()),
        (BigInt::zero(), -BigInt::one()),
    ];
    Some(
        divs.iter()
            .flat_map(|d| units.iter().map(move |u| gmul(d, u)))
            .collect(),
    )
}

fn to_gint(c: &GaussRat) -> GInt {
    c.as_gauss_int().expect("Gaussian integer coefficient")
}

/// Roots in `Q(i)` of `f` (without multiplicity, sorted), together with
/// the cofactor left after dividing out the linear factors found. The
/// cofactor has degree 0 exactly when `f` splits over `Q(i)`.
pub fn gaussian_roots(f: &UniPoly, budget_candidates: u64) -> Result<(Vec<GaussRat>, UniPoly), SolveError> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let mut g = f.squarefree();
    let mut roots: Vec<GaussRat> = Vec::new();
    let mut budget = budget_candidates;
    if g.coeffs[0].is_zero() {
        roots.push(GaussRat::zero());
        g = UniPoly::new(g.coeffs[1..].to_vec());
    }
    loop {
        match g.degree() {
            0 => break,
            1 => {
                roots.push(-(&g.coeffs[0] * &g.coeffs[1].inv().unwrap()));
                g = UniPoly::new(vec![GaussRat::one()]);
                break;
            }
            2 => {
                let (a, b, c) = (&g.coeffs[2], &g.coeffs[1], &g.coeffs[0]);
                let disc = &(b * b) - &(&GaussRat::from_int(4) * &(a * c));
                if let Some(s) = gauss_sqrt(&disc) {
                    let two_a = (&GaussRat::from_int(2) * a).inv().unwrap();
                    roots.push(&(&-b + &s) * &two_a);
                    roots.push(&(&-b - &s) * &two_a);
                    g = UniPoly::new(vec![GaussRat::one()]);
                }
                break;
            }
            _ => {
                let Some(r) = find_one_root(&g, &mut budget)? else {
                    break;
                };
                let lin = UniPoly::new(vec![-r.clone(), GaussRat::one()]);
                g = g.div_rem(&lin).0;
                roots.push(r);
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok((roots, g.monic()))
}

fn find_one_root(g: &UniPoly, budget: &mut u64) -> Result<Option<GaussRat>, SolveError> {
    // clear denominators to Gaussian integer coefficients
    let mut l = BigInt::one();
    for c in &g.coeffs {
        l = l.lcm(&c.denom_lcm());
    }
    let scale = GaussRat::from_big(l);
    let ints: Vec<GInt> = g.coeffs.iter().map(|c| to_gint(&(c * &scale))).collect();
    let a0 = ints[0].clone();
    let ad = ints.last().unwrap().clone();
    let exceeded = || SolveError::RootBudgetExceeded(format!("{:?}", g.coeffs));
    let nums = gaussian_divisors(&a0, false, budget).ok_or_else(exceeded)?;
    let dens = gaussian_divisors(&ad, true, budget).ok_or_else(exceeded)?;
    for q in &dens {
        for p in &nums {
            if *budget == 0 {
                return Err(exceeded());
            }
            *budget -= 1;
            let qn = gnorm(q);
            // p / q = p * conj(q) / N(q)
            let num = gmul(p, &(q.0.clone(), -q.1.clone()));
            let cand = GaussRat::new(
                BigRational::new(num.0, qn.clone()),
                BigRational::new(num.1, qn),
            );
            if g.eval(&cand).is_zero() {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    #[test]
    fn quadratic_splits_over_gaussian_rationals() {
        // x^2 + 1 -> ±i
        let (roots, rest) = gaussian_roots(&up(&[1, 0, 1]), 1000).unwrap();
        assert_eq!(rest.degree(), 0);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&GaussRat::i()));
        // x^2 - 2 does not split
        let (roots, rest) = gaussian_roots(&up(&[-2, 0, 1]), 1000).unwrap();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), 2);
    }

    #[test]
    fn cubic_with_repeated_roots() {
        // (x-1)^2 (2x+1) = 2x^3 - 3x^2 + 1
        let (roots, rest) = gaussian_roots(&up(&[1, 0, -3, 2]), 1000).unwrap();
        assert_eq!(rest.degree(), 0);
        assert_eq!(roots, vec![GaussRat::frac(-1, 2), GaussRat::one()]);
    }

    #[test]
    fn quartic_with_gaussian_roots() {
        // (x^2+1)(x^2-4) = x^4 - 3x^2 - 4
        let (roots, rest) = gaussian_roots(&up(&[-4, 0, -3, 0, 1]), 10_000).unwrap();
        assert_eq!(rest.degree(), 0);
        assert_eq!(roots.len(), 4);
        // x^4 - 2 stays irreducible
        let (roots, rest) = gaussian_roots(&up(&[-2, 0, 0, 0, 1]), 10_000).unwrap();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), 4);
    }

    #[test]
    fn sqrt_in_gaussian_rationals() {
        let z = GaussRat::new(
            BigRational::from_integer(BigInt::from(-3)),
            BigRational::from_integer(BigInt::from(4)),
        );
        let r = gauss_sqrt(&z).unwrap();
        assert_eq!(&r * &r, z);
        assert!(gauss_sqrt(&GaussRat::from_int(2)).is_none());
        assert_eq!(gauss_sqrt(&GaussRat::frac(9, 4)), Some(GaussRat::frac(3, 2)));
    }

    #[test]
    fn gcd_and_division() {
        let f = up(&[-1, 0, 1]);
        let g = up(&[1, 1]);
        assert_eq!(f.gcd(&g), up(&[1, 1]));
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, up(&[-1, 1]));
        assert!(r.is_zero());
    }
}
