use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{same_ring, Monomial, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial with exact coefficients. Terms are stored in decreasing
/// monomial order with no zero coefficients, so equality is structural.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
    homogeneous_degree: Option<u32>,
}

fn homogeneous_degree_of(terms: &[(Monomial, Scalar)]) -> Option<u32> {
    let first = terms.first()?.0.degree();
    terms.iter().all(|(m, _)| m.degree() == first).then_some(first)
}

impl Polynomial {
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        let homogeneous_degree = homogeneous_degree_of(&terms);
        Polynomial {
            ring,
            terms,
            homogeneous_degree,
        }
    }

    /// Builds a polynomial from arbitrary terms: like monomials are combined,
    /// zeros dropped, and the result sorted.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.num_vars(), ring.num_vars(), "monomial arity");
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let order = ring.order();
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial::from_sorted(ring.clone(), terms)
    }

    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial::from_sorted(ring.clone(), Vec::new())
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.num_vars()), c)
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Scalar) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero(ring)
        } else {
            Polynomial::from_sorted(ring.clone(), vec![(m, c)])
        }
    }

    pub fn monomial(ring: &Ring, m: Monomial) -> Polynomial {
        Polynomial::term(ring, m, ring.one())
    }

    pub fn variable(ring: &Ring, index: usize) -> Result<Polynomial> {
        if index >= ring.num_vars() {
            return Err(Error::VariableIndex {
                index,
                count: ring.num_vars(),
            });
        }
        Ok(Polynomial::monomial(ring, Monomial::variable(ring.num_vars(), index)))
    }

    /// Shorthand for building test and example inputs from exponent vectors.
    pub fn from_exponents(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e), ring.scalar(*c))),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree.is_some()
    }

    /// Maximal total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(existing) => *existing = &*existing + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let order = self.ring.order();
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial::from_sorted(self.ring.clone(), terms))
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
        }
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if subtract { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted(self.ring.clone(), out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            self.ring.clone(),
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            self.ring.clone(),
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        let n = self.ring.num_vars();
        if index >= n {
            return Err(Error::VariableIndex { index, count: n });
        }
        let field = self.ring.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            if e == 0 {
                return None;
            }
            let mut exps: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
            exps[index] -= 1;
            Some((Monomial::from_exponents(&exps), c * &Scalar::from_i64(field, e as i64)))
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Ring homomorphism sending variable `i` to `images[i]` in `target`.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::VariableIndex {
                index: images.len(),
                count: self.ring.num_vars(),
            });
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) || self.ring.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e as u32))
                    .or_insert_with(|| images[i].pow(e as u32))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroDivisor)?.clone();
        let lc_inv = lc.inverse().expect("nonzero");
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let Some(q) = lm.quotient_of(&m) else {
                return Ok(None);
            };
            let qc = &c * &lc_inv;
            rest = rest.combine(&divisor.mul_term(&q, &qc), true);
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quotient)))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from the same ring")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from the same ring")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from the same ring")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(
            self.ring.clone(),
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", a, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    #[test]
    fn cancellation_and_degree_tracking() {
        let r = RingSpec::rational(&["x", "y"]);
        let x = Polynomial::variable(&r, 0).unwrap();
        let y = Polynomial::variable(&r, 1).unwrap();
        let s = (&x + &y).arith(&(&x - &y), ArithOp::Add).unwrap();
        assert_eq!(s, x.scale(&r.scalar(2)));
        let xy = &x * &y;
        assert_eq!(xy.homogeneous_degree(), Some(2));
        assert_eq!(xy.to_string(), "x*y");
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let r = RingSpec::prime(2, &["x", "y"]);
        let s = &Polynomial::variable(&r, 0).unwrap() + &Polynomial::variable(&r, 1).unwrap();
        let sq = &s * &s;
        assert_eq!(sq, Polynomial::from_exponents(&r, &[(1, &[2, 0]), (1, &[0, 2])]));
    }

    #[test]
    fn derivatives() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Polynomial::from_exponents(&r, &[(1, &[3, 0]), (1, &[0, 3])]);
        assert_eq!(f.partial_derivative(0).unwrap(), Polynomial::from_exponents(&r, &[(3, &[2, 0])]));
        let xy = Polynomial::from_exponents(&r, &[(1, &[1, 1])]);
        assert_eq!(xy.partial_derivative(1).unwrap(), Polynomial::variable(&r, 0).unwrap());
        assert!(matches!(xy.partial_derivative(2), Err(Error::VariableIndex { .. })));

        let r3 = RingSpec::prime(3, &["x"]);
        let x3 = Polynomial::from_exponents(&r3, &[(1, &[3])]);
        assert!(x3.partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = RingSpec::rational(&["x", "y"]);
        let b = RingSpec::prime(5, &["x", "y"]);
        let f = Polynomial::one(&a);
        let g = Polynomial::one(&b);
        assert_eq!(f.try_add(&g), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Polynomial::from_exponents(&r, &[(1, &[2, 1]), (-1, &[0, 3])]);
        let y = Polynomial::variable(&r, 1).unwrap();
        let q = f.divide_exact(&y).unwrap().unwrap();
        assert_eq!(&q * &y, f);
        let x = Polynomial::variable(&r, 0).unwrap();
        assert!(f.divide_exact(&x).unwrap().is_none());
    }
}
