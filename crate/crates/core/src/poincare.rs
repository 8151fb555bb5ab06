//! Poincaré series of `k` over `R = S/a`, the Golod bound, and their
//! difference.
//!
//! Both series are computed for a minimal presentation of `R`, so linear
//! generators of `a` never inflate the embedding dimension.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graded::{fine_keys_below, GradedPiece, Grading, Key, QuotientRing};
use crate::groebner::{minimal_graded_resolution, BettiTable, FreeModuleVector};
use crate::ideal::{minimal_presentation, Ideal};
use crate::linalg::{kernel, Quotient, SparseVec};
use crate::poly::{Monomial, Ring};

/// `dim_k Tor_i^R(k, k)` for `0 ≤ i ≤ N`.
#[derive(Clone, Debug, Serialize)]
pub struct PoincareTruncation {
    pub coefficients: Vec<u64>,
    pub n: usize,
    /// Ranks split by internal degree.
    #[serde(skip)]
    pub graded: BettiTable,
}

/// Minimal graded free resolution of `k` over `S/a`, built one graded piece
/// at a time.
struct ResidueResolver<'a> {
    ring: Ring,
    qr: QuotientRing,
    budget: &'a Budget,
    /// Generator keys of `F_i`.
    gens: Vec<Vec<Key>>,
    /// `∂(g) ∈ F_{i−1}` for each generator `g` of `F_i`.
    images: Vec<Vec<FreeModuleVector>>,
}

impl<'a> ResidueResolver<'a> {
    fn new(a: &Ideal, budget: &'a Budget) -> ResidueResolver<'a> {
        let ring = a.ring().clone();
        let n = ring.num_vars();
        let grading = if a.is_monomial() { Grading::Fine } else { Grading::Coarse };
        let qr = if a.is_zero() {
            QuotientRing::polynomial_ring(&ring, grading)
        } else {
            QuotientRing::from_gb(&ring, a.gb().clone(), grading)
        };
        let f1: Vec<Key> = (0..n).map(|v| grading.wedge_key(n, &[v])).collect();
        let d1: Vec<FreeModuleVector> = (0..n)
            .map(|v| FreeModuleVector::new(&ring, 1, [(0, Monomial::variable(n, v), ring.one())]))
            .collect();
        ResidueResolver {
            ring,
            qr,
            budget,
            gens: vec![vec![grading.zero_key(n)], f1],
            images: vec![Vec::new(), d1],
        }
    }

    fn grading(&self) -> Grading {
        self.qr.grading()
    }

    fn piece(&self, i: usize, key: &Key) -> GradedPiece {
        GradedPiece::new(&self.qr, &self.gens[i], key)
    }

    /// Coordinates of `m·∂(g)` in `target` for each basis element of `source`.
    fn images_in(&self, i: usize, source: &GradedPiece, target: &GradedPiece) -> Vec<SparseVec> {
        let one = self.ring.one();
        source
            .basis()
            .iter()
            .map(|(g, m)| {
                let v = self.qr.reduce_vector(&self.images[i][*g].mul_term(m, &one));
                target.coordinates(&v)
            })
            .collect()
    }

    fn keys(&self, lo: u32, hi: u32) -> Vec<Key> {
        let n = self.ring.num_vars();
        match self.grading() {
            Grading::Coarse => (lo..=hi).map(|j| vec![j]).collect(),
            Grading::Fine => fine_keys_below(&vec![hi; n], hi)
                .into_iter()
                .filter(|k| k.iter().sum::<u32>() >= lo)
                .collect(),
        }
    }

    /// Adds `F_i` given `F_{i−1}` and `F_{i−2}`, searching keys of total
    /// degree at most `top`.
    fn step(&mut self, i: usize, top: u32) -> Result<()> {
        let field = self.ring.field();
        let rank_prev = self.gens[i - 1].len();
        self.gens.push(Vec::new());
        self.images.push(Vec::new());
        for key in self.keys(i as u32, top) {
            self.budget.check("resolve_residue_field", i - 1)?;
            let prev = self.piece(i - 1, &key);
            if prev.dim() == 0 {
                continue;
            }
            let prev2 = self.piece(i - 2, &key);
            let cycles: Vec<SparseVec> = kernel(field, &self.images_in(i - 1, &prev, &prev2));
            if cycles.is_empty() {
                continue;
            }
            let current = self.piece(i, &key);
            let boundaries = self.images_in(i, &current, &prev);
            let quotient = Quotient::new(field, &boundaries, &cycles);
            for rep in quotient.representatives() {
                self.gens[i].push(key.clone());
                self.images[i].push(prev.vector(&self.ring, rank_prev, rep));
            }
        }
        Ok(())
    }
}

/// Largest degree in a reduced Gröbner basis of `a` (at least 2).
fn gb_degree(a: &Ideal) -> u32 {
    if a.is_zero() {
        return 2;
    }
    a.gb()
        .elements()
        .iter()
        .filter_map(|g| g.degree(&[0]))
        .max()
        .unwrap_or(2)
        .max(2) as u32
}

pub fn resolve_residue_field(a: &Ideal, n: usize) -> Result<PoincareTruncation> {
    resolve_residue_field_with(a, n, &Budget::unlimited())
}

/// Ranks of a minimal resolution of `k` over `S/a` through index `n`.
///
/// Generators of `F_i` sit in internal degree at most `1 + (D−1)(i−1)`
/// where `D` bounds the degrees of a Gröbner basis of `a`, so only pieces
/// up to that degree are built.
pub fn resolve_residue_field_with(a: &Ideal, n: usize, budget: &Budget) -> Result<PoincareTruncation> {
    if a.is_unit() {
        return Err(Error::UnitIdeal("resolve_residue_field"));
    }
    let pres = minimal_presentation(a)?;
    let mut graded = BettiTable::new();
    graded.add(0, 0, 1);
    let Some(small) = pres.ideal else {
        let mut coefficients = vec![0; n + 1];
        coefficients[0] = 1;
        return Ok(PoincareTruncation { coefficients, n, graded });
    };
    let mut res = ResidueResolver::new(&small, budget);
    let d = gb_degree(&small);
    for i in 2..=n {
        res.step(i, 1 + (d - 1) * (i as u32 - 1))?;
    }
    let coefficients: Vec<u64> = (0..=n).map(|i| res.gens.get(i).map_or(0, |g| g.len() as u64)).collect();
    for (i, keys) in res.gens.iter().enumerate().take(n + 1).skip(1) {
        for k in keys {
            graded.add(i, k.iter().sum::<u32>() as i64, 1);
        }
    }
    Ok(PoincareTruncation { coefficients, n, graded })
}

/// Coefficients of `(1+t)^e / (1 − Σ_{i≥1} β_i t^{i+1})` through `t^n`,
/// where `e` is the embedding dimension and `β` the Betti numbers of a
/// minimal presentation of `S/a`.
pub fn golod_bound_series(a: &Ideal, n: usize) -> Result<Vec<i64>> {
    if a.is_unit() {
        return Err(Error::UnitIdeal("golod_bound_series"));
    }
    let pres = minimal_presentation(a)?;
    let e = pres.embedding_dimension();
    let betti: Vec<i64> = match &pres.ideal {
        None => vec![1],
        Some(small) => minimal_graded_resolution(small.ring(), small.generators(), e)?
            .betti()
            .totals()
            .into_iter()
            .map(|b| b as i64)
            .collect(),
    };
    let mut numerator = vec![0i64; n + 1];
    for (k, c) in numerator.iter_mut().enumerate() {
        *c = binomial(e, k);
    }
    // denominator 1 − Σ β_i t^{i+1}
    let mut out = vec![0i64; n + 1];
    for k in 0..=n {
        let mut c = numerator[k];
        for (i, b) in betti.iter().enumerate().skip(1) {
            if k >= i + 1 {
                c += b * out[k - i - 1];
            }
        }
        out[k] = c;
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub bound_coeffs: Vec<i64>,
    pub actual_coeffs: Vec<u64>,
    pub defect: Vec<i64>,
    pub first_nonzero: Option<usize>,
}

impl DefectReport {
    pub fn is_zero(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

pub fn golod_defect(a: &Ideal, n: usize) -> Result<DefectReport> {
    golod_defect_with(a, n, &Budget::unlimited())
}

/// Golod bound minus the actual Poincaré series; a positive entry refutes
/// the Golod property.
pub fn golod_defect_with(a: &Ideal, n: usize, budget: &Budget) -> Result<DefectReport> {
    let bound = golod_bound_series(a, n)?;
    let actual = resolve_residue_field_with(a, n, budget)?;
    let defect: Vec<i64> = bound
        .iter()
        .zip(&actual.coefficients)
        .map(|(b, c)| b - *c as i64)
        .collect();
    if let Some(k) = defect.iter().position(|x| *x < 0) {
        return Err(Error::EngineInconsistency(format!(
            "Poincaré series exceeds the Golod bound at index {}",
            k
        )));
    }
    Ok(DefectReport {
        first_nonzero: defect.iter().position(|x| *x > 0),
        bound_coeffs: bound,
        actual_coeffs: actual.coefficients,
        defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, RingSpec};

    fn mono(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn residue_field_examples() {
        let r = RingSpec::rational(&["x", "y"]);
        let m2 = Ideal::maximal(&r).power(2).unwrap();
        assert_eq!(resolve_residue_field(&m2, 4).unwrap().coefficients, vec![1, 2, 4, 8, 16]);
        let ci = mono(&r, &[&[2, 0], &[0, 2]]);
        assert_eq!(resolve_residue_field(&ci, 4).unwrap().coefficients, vec![1, 2, 3, 4, 5]);
        let r1 = RingSpec::rational(&["x"]);
        assert_eq!(resolve_residue_field(&mono(&r1, &[&[1]]), 3).unwrap().coefficients, vec![1, 0, 0, 0]);
    }

    #[test]
    fn non_monomial_hypersurface() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Polynomial::from_exponents(&r, &[(1, &[3, 0]), (1, &[0, 3]), (1, &[1, 2])]);
        let a = Ideal::new(&r, vec![f]).unwrap();
        let p = resolve_residue_field(&a, 5).unwrap();
        assert_eq!(p.coefficients, vec![1, 2, 2, 2, 2, 2]);
        assert!(golod_defect(&a, 5).unwrap().is_zero());
    }

    #[test]
    fn bound_examples() {
        let r = RingSpec::rational(&["x", "y"]);
        let m2 = Ideal::maximal(&r).power(2).unwrap();
        assert_eq!(golod_bound_series(&m2, 5).unwrap(), vec![1, 2, 4, 8, 16, 32]);
        let ci = mono(&r, &[&[2, 0], &[0, 2]]);
        assert_eq!(golod_bound_series(&ci, 5).unwrap(), vec![1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn defect_examples() {
        let r = RingSpec::rational(&["x", "y"]);
        let ci = mono(&r, &[&[2, 0], &[0, 2]]);
        let rep = golod_defect(&ci, 4).unwrap();
        assert_eq!(rep.defect, vec![0, 0, 0, 1, 3]);
        assert_eq!(rep.first_nonzero, Some(3));
        assert!(golod_defect(&Ideal::maximal(&r).power(2).unwrap(), 5).unwrap().is_zero());
        assert!(golod_defect(&mono(&r, &[&[1, 0]]), 5).unwrap().is_zero());
    }
}
