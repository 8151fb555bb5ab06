//! Koszul complexes on the variables, over `S` and over `R = S/a`.
//!
//! `K_i` is free on the wedges `e_σ` for `σ ⊆ {0..d}` with `|σ| = i`, listed
//! in lexicographic order, and
//! `∂(e_{s_1}∧…∧e_{s_i}) = Σ_l (−1)^{l+1} X_{s_l} e_{σ∖s_l}`.

mod homology;
mod jacobian;
mod tor;

pub use homology::{homology_algebra_products, HomologyClassSet, HomologyPiece, KoszulHomology, ProductTable, ProductWitness};
pub use jacobian::jacobian_cycle_representatives;
pub use tor::{
    cycle_containment_check, cycle_containment_report, induced_tor_map, induced_tor_map_via, tor_dimensions, tor_map_reports,
    zero_map_check, zero_map_check_via,
    CycleContainmentReport, TorMapReport, TorPath,
};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graded::{Grading, QuotientRing};
use crate::groebner::{minimal_generators, syzygy_module, FreeModuleVector};
use crate::ideal::Ideal;
use crate::poly::{same_ring, Monomial, Polynomial, Ring, Scalar};

/// All `i`-subsets of `0..d` in lexicographic order.
pub fn wedge_basis(d: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..d {
            if d - s < left {
                break;
            }
            cur.push(s);
            rec(s + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= d {
        rec(0, d, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of `e_σ ∧ e_τ` as `±e_{σ∪τ}`, or `None` when they overlap.
pub fn wedge_sign(sigma: &[usize], tau: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for s in sigma {
        for t in tau {
            if s == t {
                return None;
            }
            if s > t {
                inversions += 1;
            }
        }
    }
    let mut union: Vec<usize> = sigma.iter().chain(tau).copied().collect();
    union.sort_unstable();
    Some((union, inversions % 2 == 1))
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: Ring,
    modulo: Option<Ideal>,
    quotient: QuotientRing,
    wedges: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

/// The Koszul complex on all variables of `ring`, tensored with `S/modulo`
/// when an ideal is given.
pub fn koszul_complex(ring: &Ring, modulo: Option<&Ideal>) -> Result<KoszulComplex> {
    let quotient = match modulo {
        Some(a) => {
            if !same_ring(a.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if a.is_unit() {
                return Err(Error::UnitIdeal("koszul_complex"));
            }
            QuotientRing::from_gb(ring, a.gb().clone(), Grading::Coarse)
        }
        None => QuotientRing::polynomial_ring(ring, Grading::Coarse),
    };
    let d = ring.num_vars();
    let wedges: Vec<Vec<Vec<usize>>> = (0..=d).map(|i| wedge_basis(d, i)).collect();
    let index = wedges
        .iter()
        .map(|ws| ws.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect())
        .collect();
    Ok(KoszulComplex {
        ring: ring.clone(),
        modulo: modulo.cloned(),
        quotient,
        wedges,
        index,
    })
}

impl KoszulComplex {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn modulo(&self) -> Option<&Ideal> {
        self.modulo.as_ref()
    }

    pub fn quotient_ring(&self) -> &QuotientRing {
        &self.quotient
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    /// `C(d, i)`, zero above `d`.
    pub fn rank(&self, i: usize) -> usize {
        self.wedges.get(i).map_or(0, |w| w.len())
    }

    pub fn basis_labels(&self, i: usize) -> &[Vec<usize>] {
        self.wedges.get(i).map_or(&[], |w| w.as_slice())
    }

    pub fn label_index(&self, sigma: &[usize]) -> Option<usize> {
        self.index.get(sigma.len())?.get(sigma).copied()
    }

    /// Printable label such as `e1^e3` (1-based).
    pub fn label(&self, sigma: &[usize]) -> String {
        if sigma.is_empty() {
            return "1".into();
        }
        sigma.iter().map(|s| format!("e{}", s + 1)).collect::<Vec<_>>().join("^")
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.num_vars() {
            return Err(Error::HomologicalIndex {
                index: i,
                max: self.num_vars(),
            });
        }
        Ok(())
    }

    /// `∂(m e_σ)` over `S`, before reduction.
    pub(crate) fn boundary_term(&self, sigma: &[usize], m: &Monomial, c: &Scalar) -> Vec<(usize, Monomial, Scalar)> {
        let i = sigma.len();
        let mut out = Vec::with_capacity(i);
        for (l, &s) in sigma.iter().enumerate() {
            let mut rest = sigma.to_vec();
            rest.remove(l);
            let coef = if l % 2 == 0 { c.clone() } else { -c };
            out.push((self.index[i - 1][&rest], m.mul_var(s), coef));
        }
        out
    }

    /// Columns of `∂_i : K_i → K_{i−1}` over `S` (entries ± variables).
    pub fn differential_over_s(&self, i: usize) -> Result<Vec<FreeModuleVector>> {
        self.check_index(i)?;
        if i == 0 {
            return Ok(Vec::new());
        }
        let one = self.ring.one();
        let m1 = Monomial::one(self.num_vars());
        Ok(self.wedges[i]
            .iter()
            .map(|sigma| FreeModuleVector::new(&self.ring, self.rank(i - 1), self.boundary_term(sigma, &m1, &one)))
            .collect())
    }

    /// Columns of `∂_i`, entries read modulo the ideal.
    pub fn differential(&self, i: usize) -> Result<Vec<FreeModuleVector>> {
        Ok(self
            .differential_over_s(i)?
            .iter()
            .map(|c| self.quotient.reduce_vector(c))
            .collect())
    }

    /// `∂_i` as a `C(d,i−1) × C(d,i)` matrix of polynomials.
    pub fn matrix(&self, i: usize) -> Result<Vec<Vec<Polynomial>>> {
        let cols = self.differential(i)?;
        Ok((0..self.rank(i.saturating_sub(1)))
            .map(|r| cols.iter().map(|c| c.component(r)).collect())
            .collect())
    }

    pub fn reduce(&self, v: &FreeModuleVector) -> FreeModuleVector {
        self.quotient.reduce_vector(v)
    }

    /// `∂_i v` for `v ∈ K_i`, reduced.
    pub fn apply(&self, i: usize, v: &FreeModuleVector) -> Result<FreeModuleVector> {
        self.check_index(i)?;
        if v.rank() != self.rank(i) {
            return Err(Error::RankMismatch {
                expected: self.rank(i),
                found: v.rank(),
            });
        }
        if i == 0 {
            return Ok(FreeModuleVector::zero(&self.ring, 0));
        }
        let mut terms = Vec::new();
        for (k, m, c) in v.terms() {
            terms.extend(self.boundary_term(&self.wedges[i][*k], m, c));
        }
        Ok(self.reduce(&FreeModuleVector::new(&self.ring, self.rank(i - 1), terms)))
    }

    /// `∂_{i} ∘ ∂_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        (1..self.num_vars()).all(|i| {
            self.differential(i + 1)
                .expect("index in range")
                .iter()
                .all(|c| self.apply(i, c).expect("index in range").is_zero())
        })
    }

    /// Exterior product `v ∧ w` of `v ∈ K_i`, `w ∈ K_j`, reduced.
    pub fn wedge(&self, i: usize, v: &FreeModuleVector, j: usize, w: &FreeModuleVector) -> FreeModuleVector {
        let n = i + j;
        let rank = self.rank(n);
        if rank == 0 {
            return FreeModuleVector::zero(&self.ring, 0);
        }
        let mut terms = Vec::new();
        for (a, ma, ca) in v.terms() {
            for (b, mb, cb) in w.terms() {
                if let Some((union, negative)) = wedge_sign(&self.wedges[i][*a], &self.wedges[j][*b]) {
                    let c = ca * cb;
                    terms.push((self.index[n][&union], ma.mul(mb), if negative { -&c } else { c }));
                }
            }
        }
        self.reduce(&FreeModuleVector::new(&self.ring, rank, terms))
    }

    /// Describes `v ∈ K_i` with wedge labels, e.g. `x*y e1^e2`.
    pub fn format_element(&self, i: usize, v: &FreeModuleVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for k in 0..self.rank(i) {
            let p = v.component(k);
            if !p.is_zero() {
                let coef = if p.num_terms() > 1 { format!("({})", p) } else { p.to_string() };
                parts.push(format!("{} {}", coef, self.label(&self.wedges[i][k])));
            }
        }
        parts.join(" + ")
    }
}

/// Generators of `𝒵_i`; over `R` these are lifts to `S` of
/// `{z : ∂z ∈ aK_{i−1}}`, which contain `aK_i`.
pub fn koszul_cycles(kc: &KoszulComplex, i: usize) -> Result<Vec<FreeModuleVector>> {
    kc.check_index(i)?;
    let ring = kc.ring();
    if i == 0 {
        return Ok(vec![FreeModuleVector::unit(ring, 1, 0)]);
    }
    let mut columns = kc.differential_over_s(i)?;
    let top = columns.len();
    let below = kc.rank(i - 1);
    if let Some(a) = kc.modulo() {
        for g in a.generators() {
            for k in 0..below {
                columns.push(FreeModuleVector::unit(ring, below, k).mul_poly(g));
            }
        }
    }
    let syz = syzygy_module(&columns)?;
    let lifted: Vec<FreeModuleVector> = syz.iter().map(|s| s.slice(0..top)).filter(|s| !s.is_zero()).collect();
    Ok(minimal_generators(&lifted, &vec![i as i64; top]))
}
