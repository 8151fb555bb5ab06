//! Finite-dimensional graded pieces of free modules over S or over S/a.
//!
//! Everything homogeneous splits by degree. When the ideal is monomial the
//! finer multigrading by exponent vectors also applies and keeps the pieces
//! tiny, so each computation chooses a [`Grading`] and works one key at a
//! time.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, FreeModuleVector, ReducedGB};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// By total degree.
    Coarse,
    /// By exponent vector; only valid for monomial ideals.
    Fine,
}

/// A degree (coarse, one entry) or multidegree (fine, one entry per variable).
pub type Key = Vec<u32>;

impl Grading {
    pub fn key_of(&self, m: &Monomial) -> Key {
        match self {
            Grading::Coarse => vec![m.degree()],
            Grading::Fine => m.exponents().iter().map(|&e| e as u32).collect(),
        }
    }

    /// Key of the exterior basis element on the variable set `vars`.
    pub fn wedge_key(&self, nvars: usize, vars: &[usize]) -> Key {
        match self {
            Grading::Coarse => vec![vars.len() as u32],
            Grading::Fine => {
                let mut k = vec![0; nvars];
                for &v in vars {
                    k[v] += 1;
                }
                k
            }
        }
    }

    pub fn zero_key(&self, nvars: usize) -> Key {
        match self {
            Grading::Coarse => vec![0],
            Grading::Fine => vec![0; nvars],
        }
    }

    pub fn total(key: &Key, grading: Grading) -> u32 {
        match grading {
            Grading::Coarse => key[0],
            Grading::Fine => key.iter().sum(),
        }
    }
}

pub fn key_add(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn key_sub(a: &Key, b: &Key) -> Option<Key> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect()
}

pub fn key_total(key: &Key) -> u32 {
    key.iter().sum()
}

/// All keys `k` with `k ≤ bound` componentwise and total degree at most
/// `max_total`, in increasing total degree.
pub fn fine_keys_below(bound: &Key, max_total: u32) -> Vec<Key> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::new();
        for k in &out {
            for e in 0..=b {
                let mut k2: Key = k.clone();
                k2.push(e);
                if key_total(&k2) <= max_total {
                    next.push(k2);
                }
            }
        }
        out = next;
    }
    out.sort_by(|a, b| key_total(a).cmp(&key_total(b)).then_with(|| b.cmp(a)));
    out
}

/// `S/a` presented by a reduced Gröbner basis of `a` (or `S` itself), with
/// the monomials outside the initial ideal as a basis.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: Ring,
    gb: Option<ReducedGB>,
    grading: Grading,
}

impl QuotientRing {
    pub fn polynomial_ring(ring: &Ring, grading: Grading) -> QuotientRing {
        QuotientRing {
            ring: ring.clone(),
            gb: None,
            grading,
        }
    }

    pub fn new(ring: &Ring, generators: &[Polynomial], grading: Grading) -> Result<QuotientRing> {
        let gens: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if grading == Grading::Fine && gens.iter().any(|g| g.num_terms() != 1) {
            return Err(Error::Precondition("fine grading needs a monomial ideal".into()));
        }
        if gens.is_empty() {
            return Ok(QuotientRing::polynomial_ring(ring, grading));
        }
        let gb = buchberger(ring, &gens)?;
        Ok(QuotientRing {
            ring: ring.clone(),
            gb: Some(gb),
            grading,
        })
    }

    pub fn from_gb(ring: &Ring, gb: ReducedGB, grading: Grading) -> QuotientRing {
        QuotientRing {
            ring: ring.clone(),
            gb: if gb.is_empty() { None } else { Some(gb) },
            grading,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn gb(&self) -> Option<&ReducedGB> {
        self.gb.as_ref()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        match &self.gb {
            None => true,
            Some(gb) => !gb.is_leading_multiple(0, m),
        }
    }

    /// Standard monomials with the given key.
    pub fn standard_monomials(&self, key: &Key) -> Vec<Monomial> {
        let n = self.ring.num_vars();
        let mut ms = match self.grading {
            Grading::Coarse => Monomial::all_of_degree(n, key[0]),
            Grading::Fine => vec![Monomial::from_exponents(key)],
        };
        ms.retain(|m| self.is_standard(m));
        let order = self.ring.order();
        ms.sort_by(|a, b| order.cmp(b, a));
        ms
    }

    /// True when the ideal is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.gb
            .as_ref()
            .is_none_or(|gb| gb.elements().iter().all(|g| g.terms().len() == 1))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        match &self.gb {
            None => f.clone(),
            Some(_) if self.is_monomial() => Polynomial::from_terms(
                &self.ring,
                f.terms().iter().filter(|(m, _)| self.is_standard(m)).cloned(),
            ),
            Some(gb) => gb.reduce_vector(&FreeModuleVector::from_polynomial(f)).component(0),
        }
    }

    /// Reduces each component modulo the ideal.
    pub fn reduce_vector(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let Some(gb) = &self.gb else {
            return v.clone();
        };
        if self.is_monomial() {
            let terms = v.terms().iter().filter(|(_, m, _)| self.is_standard(m)).cloned();
            return FreeModuleVector::new(&self.ring, v.rank(), terms);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let all = v.terms();
        while start < all.len() {
            let comp = all[start].0;
            let mut end = start;
            while end < all.len() && all[end].0 == comp {
                end += 1;
            }
            let p = Polynomial::from_terms(&self.ring, all[start..end].iter().map(|(_, m, c)| (m.clone(), c.clone())));
            let r = gb.reduce_vector(&FreeModuleVector::from_polynomial(&p));
            terms.extend(r.terms().iter().map(|(_, m, c)| (comp, m.clone(), c.clone())));
            start = end;
        }
        FreeModuleVector::new(&self.ring, v.rank(), terms)
    }
}

/// The graded piece of key `key` of the free module `⊕_j R(-key_j)`, with
/// basis `(j, m)` for standard monomials `m`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    key: Key,
    basis: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl GradedPiece {
    pub fn new(qr: &QuotientRing, generator_keys: &[Key], key: &Key) -> GradedPiece {
        let mut basis = Vec::new();
        for (j, gk) in generator_keys.iter().enumerate() {
            if let Some(rest) = key_sub(key, gk) {
                for m in qr.standard_monomials(&rest) {
                    basis.push((j, m));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        GradedPiece {
            key: key.clone(),
            basis,
            index,
        }
    }

    pub fn key(&self) -> &Key {
        &self.key
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Monomial)] {
        &self.basis
    }

    pub fn index_of(&self, j: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(j, m.clone())).copied()
    }

    /// Coordinates of a reduced homogeneous vector living in this piece.
    pub fn coordinates(&self, v: &FreeModuleVector) -> SparseVec {
        let entries = v.terms().iter().map(|(j, m, c)| {
            let k = self
                .index_of(*j, m)
                .unwrap_or_else(|| panic!("term {:?} outside graded piece {:?}", (j, m), self.key));
            (k, c.clone())
        });
        crate::linalg::from_entries(entries)
    }

    pub fn vector(&self, ring: &Ring, rank: usize, coords: &SparseVec) -> FreeModuleVector {
        FreeModuleVector::new(
            ring,
            rank,
            coords.iter().map(|(k, c)| {
                let (j, m) = &self.basis[*k];
                (*j, m.clone(), c.clone())
            }),
        )
    }
}

/// A `k`-basis of the degree-`degree` piece of the submodule of `S^rank`
/// generated by homogeneous `generators` (graded by `shifts`), in reduced
/// row echelon form over monomial coordinates.
pub fn graded_component_basis(
    ring: &Ring,
    generators: &[FreeModuleVector],
    shifts: &[i64],
    degree: i64,
) -> Result<Vec<FreeModuleVector>> {
    let rank = shifts.len();
    let qr = QuotientRing::polynomial_ring(ring, Grading::Coarse);
    let keys: Vec<Option<Key>> = shifts
        .iter()
        .map(|&s| (degree - s >= 0).then(|| vec![(degree - s) as u32]))
        .collect();
    let mut basis = Vec::new();
    for (j, k) in keys.iter().enumerate() {
        if let Some(k) = k {
            for m in qr.standard_monomials(k) {
                basis.push((j, m));
            }
        }
    }
    // order coordinates by the module order, largest first
    let order = ring.order();
    basis.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| order.cmp(&b.1, &a.1)));
    let index: HashMap<(usize, Monomial), usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();

    let mut ech = Echelon::new(ring.field());
    for g in generators {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        if g.is_zero() {
            continue;
        }
        let gd = g
            .degree(shifts)
            .ok_or_else(|| Error::Inhomogeneous(g.to_string()))?;
        if gd > degree {
            continue;
        }
        for m in Monomial::all_of_degree(ring.num_vars(), (degree - gd) as u32) {
            let v = g.mul_term(&m, &ring.one());
            let coords = crate::linalg::from_entries(
                v.terms().iter().map(|(j, mm, c)| (index[&(*j, mm.clone())], c.clone())),
            );
            ech.insert(&coords);
        }
    }
    Ok(rref_rows(&ech)
        .into_iter()
        .map(|row| {
            FreeModuleVector::new(
                ring,
                rank,
                row.iter().map(|(k, c)| (basis[*k].0, basis[*k].1.clone(), c.clone())),
            )
        })
        .collect())
}

/// Rows of the reduced row echelon form, sorted by pivot.
pub fn rref_rows(ech: &Echelon) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = ech.rows_cloned();
    rows.sort_by_key(|r| r[0].0);
    let mut out: Vec<SparseVec> = Vec::with_capacity(rows.len());
    let mut later = Echelon::new(ech.field());
    for row in rows.into_iter().rev() {
        let (head, tail) = row.split_first().expect("nonzero row");
        let mut reduced = vec![head.clone()];
        reduced.extend(later.reduce(&tail.to_vec()));
        later.insert(&reduced);
        out.push(reduced);
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    fn ideal_piece(r: &Ring, gens: &[Polynomial], deg: i64) -> Vec<Polynomial> {
        let vs: Vec<FreeModuleVector> = gens.iter().map(FreeModuleVector::from_polynomial).collect();
        graded_component_basis(r, &vs, &[0], deg)
            .unwrap()
            .into_iter()
            .map(|v| v.component(0))
            .collect()
    }

    #[test]
    fn basis_examples() {
        let r = RingSpec::rational(&["x", "y"]);
        let x = Polynomial::variable(&r, 0).unwrap();
        let y = Polynomial::variable(&r, 1).unwrap();
        assert_eq!(ideal_piece(&r, &[x.clone(), y.clone()], 1), vec![x.clone(), y.clone()]);
        let x2 = &x * &x;
        assert_eq!(ideal_piece(&r, &[x2.clone()], 3), vec![&x2 * &x, &x2 * &y]);
        let gens = vec![x2, &x * &y, &y * &y];
        assert_eq!(ideal_piece(&r, &gens, 2).len(), 3);
    }

    #[test]
    fn whole_ring_dimension_is_binomial() {
        let r = RingSpec::rational(&["x", "y", "z"]);
        let one = FreeModuleVector::from_polynomial(&Polynomial::one(&r));
        for q in 0..6i64 {
            let n = graded_component_basis(&r, &[one.clone()], &[0], q).unwrap().len();
            assert_eq!(n as i64, (q + 1) * (q + 2) / 2);
        }
    }

    #[test]
    fn fine_pieces_of_a_monomial_quotient() {
        let r = RingSpec::rational(&["x", "y"]);
        let gens = vec![Polynomial::from_exponents(&r, &[(1, &[2, 0])]), Polynomial::from_exponents(&r, &[(1, &[0, 2])])];
        let qr = QuotientRing::new(&r, &gens, Grading::Fine).unwrap();
        let piece = GradedPiece::new(&qr, &[vec![0, 0], vec![1, 0]], &vec![1, 1]);
        assert_eq!(piece.dim(), 2);
        let piece = GradedPiece::new(&qr, &[vec![0, 0]], &vec![2, 1]);
        assert_eq!(piece.dim(), 0);
        assert_eq!(fine_keys_below(&vec![1, 2], 2).len(), 5);
    }
}
