use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring, Scalar};

/// One term `c * m * e_comp` of a free-module element.
pub type ModuleTerm = (usize, Monomial, Scalar);

/// Position-over-term: a higher component index is larger, ties broken by
/// the ring's monomial order.
pub(crate) fn term_cmp(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| order.cmp(a.1, b.1))
}

/// An element of the free module S^rank, stored as a sorted term list.
#[derive(Clone)]
pub struct FreeModuleVector {
    ring: Ring,
    rank: usize,
    terms: Vec<ModuleTerm>,
}

impl FreeModuleVector {
    pub(crate) fn from_sorted(ring: Ring, rank: usize, terms: Vec<ModuleTerm>) -> FreeModuleVector {
        FreeModuleVector { ring, rank, terms }
    }

    pub fn new(ring: &Ring, rank: usize, terms: impl IntoIterator<Item = ModuleTerm>) -> FreeModuleVector {
        let mut acc: HashMap<(usize, Monomial), Scalar> = HashMap::new();
        for (i, m, c) in terms {
            assert!(i < rank, "component {} out of range for rank {}", i, rank);
            match acc.get_mut(&(i, m.clone())) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert((i, m), c);
                }
            }
        }
        let order = ring.order();
        let mut terms: Vec<ModuleTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, m), c)| (i, m, c))
            .collect();
        terms.sort_by(|a, b| term_cmp(order, (b.0, &b.1), (a.0, &a.1)));
        FreeModuleVector::from_sorted(ring.clone(), rank, terms)
    }

    pub fn zero(ring: &Ring, rank: usize) -> FreeModuleVector {
        FreeModuleVector::from_sorted(ring.clone(), rank, Vec::new())
    }

    /// The standard basis vector `e_i`.
    pub fn unit(ring: &Ring, rank: usize, i: usize) -> FreeModuleVector {
        FreeModuleVector::from_sorted(ring.clone(), rank, vec![(i, Monomial::one(ring.num_vars()), ring.one())])
    }

    pub fn from_components(ring: &Ring, components: &[Polynomial]) -> Result<FreeModuleVector> {
        let mut terms = Vec::new();
        for (i, p) in components.iter().enumerate().rev() {
            if !same_ring(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            terms.extend(p.terms().iter().map(|(m, c)| (i, m.clone(), c.clone())));
        }
        Ok(FreeModuleVector::from_sorted(ring.clone(), components.len(), terms))
    }

    pub fn from_polynomial(p: &Polynomial) -> FreeModuleVector {
        FreeModuleVector::from_sorted(
            p.ring().clone(),
            1,
            p.terms().iter().map(|(m, c)| (0, m.clone(), c.clone())).collect(),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[ModuleTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&ModuleTerm> {
        self.terms.first()
    }

    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 == i)
            .map(|(_, m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial::from_sorted(self.ring.clone(), terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|i| self.component(i)).collect()
    }

    /// Degree under the given component shifts, if homogeneous.
    pub fn degree(&self, shifts: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (i, m, _) in &self.terms {
            let d = m.degree() as i64 + shifts[*i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    fn check(&self, other: &FreeModuleVector) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// `self + c * m * other`, by merging sorted term lists.
    pub(crate) fn add_term_multiple(&self, c: &Scalar, m: &Monomial, other: &FreeModuleVector) -> FreeModuleVector {
        let order = self.ring.order();
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        for (comp, om, oc) in &other.terms {
            let nm = om.mul(m);
            let nc = oc * c;
            while i < a.len() && term_cmp(order, (a[i].0, &a[i].1), (*comp, &nm)) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == *comp && a[i].1 == nm {
                let s = &a[i].2 + &nc;
                if !s.is_zero() {
                    out.push((*comp, nm, s));
                }
                i += 1;
            } else if !nc.is_zero() {
                out.push((*comp, nm, nc));
            }
        }
        out.extend_from_slice(&a[i..]);
        FreeModuleVector::from_sorted(self.ring.clone(), self.rank, out)
    }

    pub fn try_add(&self, other: &FreeModuleVector) -> Result<FreeModuleVector> {
        self.check(other)?;
        Ok(self.add_term_multiple(&self.ring.one(), &Monomial::one(self.ring.num_vars()), other))
    }

    pub fn try_sub(&self, other: &FreeModuleVector) -> Result<FreeModuleVector> {
        self.check(other)?;
        Ok(self.add_term_multiple(&self.ring.scalar(-1), &Monomial::one(self.ring.num_vars()), other))
    }

    pub fn scale(&self, c: &Scalar) -> FreeModuleVector {
        if c.is_zero() {
            return FreeModuleVector::zero(&self.ring, self.rank);
        }
        FreeModuleVector::from_sorted(
            self.ring.clone(),
            self.rank,
            self.terms.iter().map(|(i, m, a)| (*i, m.clone(), a * c)).collect(),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> FreeModuleVector {
        if c.is_zero() {
            return FreeModuleVector::zero(&self.ring, self.rank);
        }
        FreeModuleVector::from_sorted(
            self.ring.clone(),
            self.rank,
            self.terms.iter().map(|(i, t, a)| (*i, t.mul(m), a * c)).collect(),
        )
    }

    pub fn mul_poly(&self, f: &Polynomial) -> FreeModuleVector {
        let mut acc = FreeModuleVector::zero(&self.ring, self.rank);
        for (m, c) in f.terms() {
            acc = acc.add_term_multiple(c, m, self);
        }
        acc
    }

    /// Multiplies by the leading coefficient's inverse.
    pub fn monic(&self) -> FreeModuleVector {
        match self.leading_term() {
            None => self.clone(),
            Some((_, _, c)) => self.scale(&c.inverse().expect("nonzero")),
        }
    }

    /// Restricts to components `range`, renumbered from zero.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeModuleVector {
        FreeModuleVector::from_sorted(
            self.ring.clone(),
            range.len(),
            self.terms
                .iter()
                .filter(|t| range.contains(&t.0))
                .map(|(i, m, c)| (i - range.start, m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Places this vector's components at `offset..offset+rank` of a vector
    /// of rank `rank`. Sorting is preserved because POT only shifts indices.
    pub fn embed(&self, rank: usize, offset: usize) -> FreeModuleVector {
        assert!(offset + self.rank <= rank);
        FreeModuleVector::from_sorted(
            self.ring.clone(),
            rank,
            self.terms.iter().map(|(i, m, c)| (i + offset, m.clone(), c.clone())).collect(),
        )
    }

    /// Maps each basis vector `e_i` to `images[i]`.
    pub fn apply(&self, images: &[FreeModuleVector], target_rank: usize) -> FreeModuleVector {
        let mut acc = FreeModuleVector::zero(&self.ring, target_rank);
        for (i, m, c) in &self.terms {
            acc = acc.add_term_multiple(c, m, &images[*i]);
        }
        acc
    }
}

impl PartialEq for FreeModuleVector {
    fn eq(&self, other: &FreeModuleVector) -> bool {
        same_ring(&self.ring, &other.ring) && self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for FreeModuleVector {}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeModuleVector{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    #[test]
    fn components_round_trip() {
        let r = RingSpec::rational(&["x", "y"]);
        let x = Polynomial::variable(&r, 0).unwrap();
        let y = Polynomial::variable(&r, 1).unwrap();
        let v = FreeModuleVector::from_components(&r, &[x.clone(), &x + &y]).unwrap();
        assert_eq!(v.components(), vec![x.clone(), &x + &y]);
        assert_eq!(v.leading_term().unwrap().0, 1);
        assert_eq!(v.degree(&[0, 0]), Some(1));
        assert_eq!(v.degree(&[0, 1]), None);
        let w = v.try_sub(&v).unwrap();
        assert!(w.is_zero());
        assert_eq!(v.to_string(), "(x, x + y)");
    }
}
