//! `Tor^S(S/a, k)` and the maps induced by an inclusion `a ⊆ b`, each by
//! two independent routes: lifting through minimal free resolutions, and
//! the Koszul complex of the ideal, `Tor_i(S/a, k) ≅ H_{i−1}(aK)`.

use serde::Serialize;

use super::{koszul_complex, koszul_cycles, KoszulComplex};
use crate::error::{Error, Result};
use crate::graded::{GradedPiece, Grading, QuotientRing};
use crate::groebner::{buchberger_module, minimal_graded_resolution, syzygy_module, BettiTable, FreeModuleVector, Resolution};
use crate::ideal::Ideal;
use crate::linalg::{axpy, kernel, Echelon, Quotient, SparseVec};
use crate::poly::{same_ring, Monomial, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorPath {
    ResolutionLift,
    KoszulCycles,
}

/// The `k`-matrix of `Tor_i(S/a, k) → Tor_i(S/b, k)`.
#[derive(Clone, Debug)]
pub struct TorMapReport {
    pub i: usize,
    /// `matrix[row][col]`, rows indexed by a basis of the target.
    pub matrix: Vec<Vec<Scalar>>,
    pub is_zero: bool,
    pub path: TorPath,
}

impl TorMapReport {
    fn new(i: usize, matrix: Vec<Vec<Scalar>>, path: TorPath) -> TorMapReport {
        let is_zero = matrix.iter().flatten().all(|c| c.is_zero());
        TorMapReport { i, matrix, is_zero, path }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn rank(&self) -> usize {
        let Some(first) = self.matrix.iter().flatten().next() else {
            return 0;
        };
        let mut ech = Echelon::new(first.field());
        for row in &self.matrix {
            let v: SparseVec = row.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            ech.insert(&v);
        }
        ech.rank()
    }
}

fn resolve_full(a: &Ideal, top: usize) -> Result<Resolution> {
    if a.is_unit() {
        return Err(Error::UnitIdeal("tor"));
    }
    minimal_graded_resolution(a.ring(), a.generators(), top)
}

/// Graded Betti numbers `dim_k Tor_i(S/a, k)_j` for `0 ≤ i ≤ d`.
pub fn tor_dimensions(a: &Ideal, path: TorPath) -> Result<BettiTable> {
    let d = a.ring().num_vars();
    let res = resolve_full(a, d)?;
    match path {
        TorPath::ResolutionLift => Ok(res.betti().clone()),
        TorPath::KoszulCycles => {
            let kh = IdealKoszul::new(a)?;
            let top = res.betti().max_degree().unwrap_or(0);
            let mut betti = BettiTable::new();
            betti.add(0, 0, 1);
            for i in 1..=d {
                for j in i as i64..=top {
                    betti.add(i, j, kh.piece(i - 1, j as u32).dim());
                }
            }
            Ok(betti)
        }
    }
}

/// `H_q(aK)` in one internal degree, inside `K_q` over `S`.
struct AkPiece {
    piece: GradedPiece,
    quotient: Quotient,
}

impl AkPiece {
    fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// The subcomplex `aK ⊆ K` over `S`, graded by total degree.
struct IdealKoszul {
    ideal: Ideal,
    kc: KoszulComplex,
    qr: QuotientRing,
}

impl IdealKoszul {
    fn new(a: &Ideal) -> Result<IdealKoszul> {
        Ok(IdealKoszul {
            ideal: a.clone(),
            kc: koszul_complex(a.ring(), None)?,
            qr: QuotientRing::polynomial_ring(a.ring(), Grading::Coarse),
        })
    }

    fn graded_piece(&self, q: usize, j: u32) -> GradedPiece {
        let keys: Vec<Vec<u32>> = vec![vec![q as u32]; self.kc.rank(q)];
        GradedPiece::new(&self.qr, &keys, &vec![j])
    }

    /// Spanning vectors of `(aK_q)_j`.
    fn ideal_span(&self, q: usize, j: u32) -> Vec<FreeModuleVector> {
        let ring = self.kc.ring();
        let n = ring.num_vars();
        let mut out = Vec::new();
        if q > n {
            return out;
        }
        for g in self.ideal.generators() {
            let e = g.homogeneous_degree().expect("homogeneous") + q as u32;
            if e > j {
                continue;
            }
            for m in Monomial::all_of_degree(n, j - e) {
                let gm = g.mul_term(&m, &ring.one());
                for s in 0..self.kc.rank(q) {
                    out.push(FreeModuleVector::unit(ring, self.kc.rank(q), s).mul_poly(&gm));
                }
            }
        }
        out
    }

    fn piece(&self, q: usize, j: u32) -> AkPiece {
        let field = self.kc.ring().field();
        let here = self.graded_piece(q, j);
        let span: Vec<SparseVec> = self.ideal_span(q, j).iter().map(|v| here.coordinates(v)).collect();
        let cycles = if q == 0 {
            span.clone()
        } else {
            let below = self.graded_piece(q - 1, j);
            let images: Vec<SparseVec> = self
                .ideal_span(q, j)
                .iter()
                .map(|v| below.coordinates(&self.kc.apply(q, v).expect("index in range")))
                .collect();
            kernel(field, &images)
                .iter()
                .map(|combo| {
                    combo
                        .iter()
                        .fold(Vec::new(), |acc, (k, c)| axpy(&acc, c, &span[*k]))
                })
                .collect()
        };
        let boundaries: Vec<SparseVec> = self
            .ideal_span(q + 1, j)
            .iter()
            .map(|v| here.coordinates(&self.kc.apply(q + 1, v).expect("index in range")))
            .collect();
        AkPiece {
            quotient: Quotient::new(field, &boundaries, &cycles),
            piece: here,
        }
    }
}

fn check_pair(a: &Ideal, b: &Ideal) -> Result<()> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.is_unit() || b.is_unit() {
        return Err(Error::UnitIdeal("induced_tor_map"));
    }
    b.require_contains(a, "a ⊆ b")
}

/// Constant part of `v` in `G_i` as coordinates.
fn constant_column(v: &FreeModuleVector, rows: usize) -> Vec<Scalar> {
    let field = v.ring().field();
    let mut col = vec![Scalar::zero(field); rows];
    for (r, m, c) in v.terms() {
        if m.is_one() {
            col[*r] = c.clone();
        }
    }
    col
}

fn transpose(cols: Vec<Vec<Scalar>>, rows: usize) -> Vec<Vec<Scalar>> {
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Induced maps for `1 ≤ i ≤ top` by lifting the identity of `S` to a
/// comparison map between the minimal resolutions and setting variables
/// to zero.
fn maps_by_resolution(a: &Ideal, b: &Ideal, top: usize) -> Result<Vec<TorMapReport>> {
    let ring = a.ring();
    let fa = resolve_full(a, top)?;
    let gb = resolve_full(b, top)?;
    let mut alpha: Vec<FreeModuleVector> = vec![FreeModuleVector::unit(ring, 1, 0)];
    let mut out = Vec::new();
    for i in 1..=top {
        let src = fa.rank(i);
        let tgt = gb.rank(i);
        let prev_rank = gb.rank(i - 1);
        let mut next = Vec::with_capacity(src);
        for c in 0..src {
            let image = fa.differential(i)[c].apply(&alpha, prev_rank);
            let lifted = if image.is_zero() || tgt == 0 {
                if !image.is_zero() {
                    return Err(Error::EngineInconsistency("comparison map does not lift".into()));
                }
                FreeModuleVector::zero(ring, tgt)
            } else {
                gb.lift(i, &image)
                    .ok_or_else(|| Error::EngineInconsistency("comparison map does not lift".into()))?
            };
            next.push(lifted);
        }
        let cols: Vec<Vec<Scalar>> = next.iter().map(|v| constant_column(v, tgt)).collect();
        out.push(TorMapReport::new(i, transpose(cols, tgt), TorPath::ResolutionLift));
        alpha = next;
    }
    Ok(out)
}

/// Induced maps `H_{i−1}(aK) → H_{i−1}(bK)` on cycle representatives.
fn maps_by_koszul(a: &Ideal, b: &Ideal, top: usize) -> Result<Vec<TorMapReport>> {
    let d = a.ring().num_vars();
    let ra = resolve_full(a, d)?;
    let rb = resolve_full(b, d)?;
    let ka = IdealKoszul::new(a)?;
    let kb = IdealKoszul::new(b)?;
    let field = a.ring().field();
    let mut out = Vec::new();
    for i in 1..=top {
        let degree_top = ra
            .betti()
            .max_degree()
            .unwrap_or(0)
            .max(rb.betti().max_degree().unwrap_or(0)) as u32;
        let mut cols: Vec<SparseVec> = Vec::new();
        let mut rows = 0usize;
        for j in i as u32..=degree_top {
            let pa = ka.piece(i - 1, j);
            let pb = kb.piece(i - 1, j);
            for rep in pa.quotient.representatives() {
                let v = pa.piece.vector(a.ring(), ka.kc.rank(i - 1), rep);
                let coords = pb
                    .quotient
                    .coordinates(&pb.piece.coordinates(&v))
                    .ok_or_else(|| Error::EngineInconsistency("cycle of aK is not a cycle of bK".into()))?;
                cols.push(coords.into_iter().map(|(k, c)| (k + rows, c)).collect());
            }
            rows += pb.dim();
        }
        let dense: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|c| {
                let mut col = vec![Scalar::zero(field); rows];
                for (k, x) in c {
                    col[*k] = x.clone();
                }
                col
            })
            .collect();
        out.push(TorMapReport::new(i, transpose(dense, rows), TorPath::KoszulCycles));
    }
    Ok(out)
}

/// All induced maps `Tor_i(S/a, k) → Tor_i(S/b, k)`, `1 ≤ i ≤ d`.
pub fn tor_map_reports(a: &Ideal, b: &Ideal, path: TorPath) -> Result<Vec<TorMapReport>> {
    check_pair(a, b)?;
    let d = a.ring().num_vars();
    match path {
        TorPath::ResolutionLift => maps_by_resolution(a, b, d),
        TorPath::KoszulCycles => maps_by_koszul(a, b, d),
    }
}

/// The map on `Tor_i` induced by `S/a → S/b`, via the resolution lift.
pub fn induced_tor_map(a: &Ideal, b: &Ideal, i: usize) -> Result<TorMapReport> {
    induced_tor_map_via(a, b, i, TorPath::ResolutionLift)
}

pub fn induced_tor_map_via(a: &Ideal, b: &Ideal, i: usize, path: TorPath) -> Result<TorMapReport> {
    check_pair(a, b)?;
    let d = a.ring().num_vars();
    if i == 0 || i > d {
        return Err(Error::HomologicalIndex { index: i, max: d });
    }
    let mut maps = match path {
        TorPath::ResolutionLift => maps_by_resolution(a, b, i)?,
        TorPath::KoszulCycles => maps_by_koszul(a, b, i)?,
    };
    Ok(maps.pop().expect("i ≥ 1"))
}

/// Whether every map `Tor_i(S/a, k) → Tor_i(S/b, k)`, `i ≥ 1`, vanishes.
pub fn zero_map_check(a: &Ideal, b: &Ideal) -> Result<bool> {
    zero_map_check_via(a, b, TorPath::ResolutionLift)
}

pub fn zero_map_check_via(a: &Ideal, b: &Ideal, path: TorPath) -> Result<bool> {
    Ok(tor_map_reports(a, b, path)?.iter().all(|m| m.is_zero))
}

/// Outcome of testing `𝒵_i ∩ aK_i ⊆ b𝒵_i` index by index.
#[derive(Clone, Debug)]
pub struct CycleContainmentReport {
    /// `a ⊆ 𝔫b`: the condition in homological degree zero, where the
    /// isomorphism with `H(aK)` reads `a/𝔫a → b/𝔫b`.
    pub generators_in_nb: bool,
    /// `(i, holds, witness)` for `1 ≤ i ≤ d`.
    pub per_index: Vec<(usize, bool, Option<String>)>,
}

impl CycleContainmentReport {
    pub fn holds(&self) -> bool {
        self.generators_in_nb && self.per_index.iter().all(|t| t.1)
    }
}

pub fn cycle_containment_report(a: &Ideal, b: &Ideal) -> Result<CycleContainmentReport> {
    check_pair(a, b)?;
    let ring = a.ring();
    let nb = Ideal::maximal(ring).product(b)?;
    let generators_in_nb = nb.contains(a)?;
    let kc = koszul_complex(ring, None)?;
    let mut per_index = Vec::new();
    for i in 1..=ring.num_vars() {
        let rank = kc.rank(i);
        let cycles = koszul_cycles(&kc, i)?;
        if cycles.is_empty() {
            per_index.push((i, true, None));
            continue;
        }
        let mut columns = cycles.clone();
        for g in a.generators() {
            for s in 0..rank {
                columns.push(FreeModuleVector::unit(ring, rank, s).mul_poly(g));
            }
        }
        let syz = syzygy_module(&columns)?;
        let meet: Vec<FreeModuleVector> = syz
            .iter()
            .map(|u| {
                let coeffs = u.slice(0..cycles.len());
                coeffs.apply(&cycles, rank)
            })
            .filter(|v| !v.is_zero())
            .collect();
        let mut target = Vec::new();
        for g in b.generators() {
            for z in &cycles {
                target.push(z.mul_poly(g));
            }
        }
        let gb = buchberger_module(&target)?;
        let witness = meet.iter().find(|v| !gb.reduce_vector(v).is_zero());
        per_index.push((i, witness.is_none(), witness.map(|w| kc.format_element(i, w))));
    }
    Ok(CycleContainmentReport {
        generators_in_nb,
        per_index,
    })
}

/// `𝒵_i ∩ aK_i ⊆ b𝒵_i` for every `i ≥ 1`, together with `a ⊆ 𝔫b`;
/// equivalent to [`zero_map_check`].
pub fn cycle_containment_check(a: &Ideal, b: &Ideal) -> Result<bool> {
    Ok(cycle_containment_report(a, b)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, Ring, RingSpec};

    fn mono(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn tor_both_paths() {
        let r = RingSpec::rational(&["x", "y"]);
        for a in [
            Ideal::maximal(&r),
            Ideal::maximal(&r).power(2).unwrap(),
            mono(&r, &[&[2, 0], &[0, 2]]),
        ] {
            let res = tor_dimensions(&a, TorPath::ResolutionLift).unwrap();
            let kos = tor_dimensions(&a, TorPath::KoszulCycles).unwrap();
            assert_eq!(res, kos, "{}", a);
        }
        let m2 = Ideal::maximal(&r).power(2).unwrap();
        assert_eq!(tor_dimensions(&m2, TorPath::KoszulCycles).unwrap().totals(), vec![1, 3, 2]);
    }

    #[test]
    fn induced_maps() {
        let r = RingSpec::rational(&["x", "y"]);
        let x = mono(&r, &[&[1, 0]]);
        let x2 = mono(&r, &[&[2, 0]]);
        for path in [TorPath::ResolutionLift, TorPath::KoszulCycles] {
            let m = induced_tor_map_via(&x2, &x, 1, path).unwrap();
            assert_eq!((m.rows(), m.cols()), (1, 1));
            assert!(m.is_zero);
            let id = induced_tor_map_via(&x, &x, 1, path).unwrap();
            assert!(!id.is_zero);
            assert_eq!(id.rank(), 1);
        }
        let n = Ideal::maximal(&r);
        let n2 = n.power(2).unwrap();
        assert!(zero_map_check(&n2, &n).unwrap());
        assert!(!zero_map_check(&n, &n).unwrap());
        assert!(zero_map_check(&n.power(3).unwrap(), &n2).unwrap());
        assert!(matches!(induced_tor_map(&x, &x2, 1), Err(Error::ContainmentFailure { .. })));
    }

    #[test]
    fn cycle_containment_examples() {
        let r = RingSpec::rational(&["x", "y"]);
        let n = Ideal::maximal(&r);
        let n2 = n.power(2).unwrap();
        assert!(cycle_containment_check(&n2, &n).unwrap());
        let rep = cycle_containment_report(&n, &n).unwrap();
        assert!(!rep.per_index[0].1);
        assert!(!rep.holds());
        let x = mono(&r, &[&[1, 0]]);
        let rep = cycle_containment_report(&x, &x).unwrap();
        assert!(rep.per_index.iter().all(|t| t.1));
        assert!(!rep.generators_in_nb);
    }
}
