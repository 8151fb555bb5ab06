//! Gröbner bases of ideals and submodules, normal forms, syzygies and
//! minimal graded free resolutions.
//!
//! Module elements are ordered position-over-term on top of the ring's
//! monomial order. Syzygies come from the tracked Buchberger run in
//! [`engine`], so no separate Schreyer frame is built.

mod engine;
mod resolution;
mod vector;

pub use resolution::{minimal_graded_resolution, BettiTable, Resolution};
pub use vector::{FreeModuleVector, ModuleTerm};

pub(crate) use engine::Engine;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Polynomial, Ring};

/// A reduced Gröbner basis of a submodule of S^rank (rank 1 for ideals).
#[derive(Clone, Debug)]
pub struct ReducedGB {
    ring: Ring,
    rank: usize,
    elements: Vec<FreeModuleVector>,
    by_component: Vec<Vec<usize>>,
}

impl ReducedGB {
    pub(crate) fn from_elements(ring: &Ring, rank: usize, elements: Vec<FreeModuleVector>) -> ReducedGB {
        let mut by_component = vec![Vec::new(); rank];
        for (k, g) in elements.iter().enumerate() {
            by_component[g.leading_term().expect("nonzero").0].push(k);
        }
        ReducedGB {
            ring: ring.clone(),
            rank,
            elements,
            by_component,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[FreeModuleVector] {
        &self.elements
    }

    /// Elements as polynomials; only meaningful for rank one.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|g| g.component(0)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis contains a constant in every component, i.e. the
    /// submodule is the whole free module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank).all(|c| {
            self.by_component[c]
                .iter()
                .any(|&k| self.elements[k].leading_term().expect("nonzero").1.is_one())
        })
    }

    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|g| {
                let (c, m, _) = g.leading_term().expect("nonzero");
                (*c, m.clone())
            })
            .collect()
    }

    /// Whether some leading monomial divides `m` in component `comp`.
    pub fn is_leading_multiple(&self, comp: usize, m: &Monomial) -> bool {
        self.by_component[comp]
            .iter()
            .any(|&k| self.elements[k].leading_term().expect("nonzero").1.divides(m))
    }

    pub(crate) fn reduce_vector(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.terms().len() {
            let (comp, m, c) = v.terms()[pos].clone();
            let reducer = self.by_component[comp].iter().copied().find(|&k| {
                self.elements[k].leading_term().expect("nonzero").1.divides(&m)
            });
            match reducer {
                Some(k) => {
                    let g = &self.elements[k];
                    let (_, lm, lc) = g.leading_term().expect("nonzero");
                    let q = lm.quotient_of(&m).expect("divides");
                    let coef = -&(&c * &lc.inverse().expect("nonzero"));
                    v = v.add_term_multiple(&coef, &q, g);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Every S-vector of two elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for (a, g) in self.elements.iter().enumerate() {
            for h in &self.elements[a + 1..] {
                let (cg, mg, _) = g.leading_term().expect("nonzero");
                let (ch, mh, _) = h.leading_term().expect("nonzero");
                if cg != ch {
                    continue;
                }
                let l = mg.lcm(mh);
                let zero = FreeModuleVector::zero(&self.ring, self.rank);
                let s = zero
                    .add_term_multiple(&self.ring.one(), &mg.quotient_of(&l).expect("lcm"), g)
                    .add_term_multiple(&self.ring.scalar(-1), &mh.quotient_of(&l).expect("lcm"), h);
                if !self.reduce_vector(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn check_vectors(gens: &[FreeModuleVector]) -> Result<(Ring, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("at least one generator is required".into()))?;
    for g in gens {
        if !same_ring(g.ring(), first.ring()) {
            return Err(Error::RingMismatch);
        }
        if g.rank() != first.rank() {
            return Err(Error::RankMismatch {
                expected: first.rank(),
                found: g.rank(),
            });
        }
    }
    Ok((first.ring().clone(), first.rank()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Polynomial]) -> Result<ReducedGB> {
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let mut engine = Engine::new(ring, 0, vec![0]);
    for g in gens {
        engine.add_generator(FreeModuleVector::from_polynomial(g));
    }
    engine.complete_through(None);
    Ok(ReducedGB::from_elements(ring, 1, engine.reduced_basis()))
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger_module(gens: &[FreeModuleVector]) -> Result<ReducedGB> {
    let (ring, rank) = check_vectors(gens)?;
    let mut engine = Engine::new(&ring, 0, vec![0; rank]);
    for g in gens {
        engine.add_generator(g.clone());
    }
    engine.complete_through(None);
    Ok(ReducedGB::from_elements(&ring, rank, engine.reduced_basis()))
}

pub fn normal_form(v: &FreeModuleVector, gb: &ReducedGB) -> Result<FreeModuleVector> {
    if !same_ring(v.ring(), gb.ring()) {
        return Err(Error::RingMismatch);
    }
    if v.rank() != gb.rank() {
        return Err(Error::RankMismatch {
            expected: gb.rank(),
            found: v.rank(),
        });
    }
    Ok(gb.reduce_vector(v))
}

pub fn normal_form_poly(f: &Polynomial, gb: &ReducedGB) -> Result<Polynomial> {
    Ok(normal_form(&FreeModuleVector::from_polynomial(f), gb)?.component(0))
}

/// Builds the tracked engine for `columns` (targets graded by
/// `target_shifts`) and runs it to completion. Tracking components come
/// first, one per column.
pub(crate) fn tracked_engine(columns: &[FreeModuleVector], target_shifts: &[i64]) -> Engine {
    let ring = columns[0].ring().clone();
    let rank = columns[0].rank();
    let n = columns.len();
    let mut shifts: Vec<i64> = columns
        .iter()
        .map(|c| c.degree(target_shifts).unwrap_or_else(|| sugar(c, target_shifts)))
        .collect();
    shifts.extend_from_slice(target_shifts);
    let mut engine = Engine::new(&ring, n, shifts);
    for (k, c) in columns.iter().enumerate() {
        let tracked = c
            .embed(n + rank, n)
            .try_add(&FreeModuleVector::unit(&ring, n + rank, k))
            .expect("same rank");
        engine.add_generator(tracked);
    }
    engine.complete_through(None);
    engine
}

fn sugar(v: &FreeModuleVector, shifts: &[i64]) -> i64 {
    v.terms()
        .iter()
        .map(|(i, m, _)| m.degree() as i64 + shifts[*i])
        .max()
        .unwrap_or(0)
}

/// Expresses `v` as a combination of the columns of a completed tracked
/// engine; `None` if `v` is outside their span.
pub(crate) fn lift_with(engine: &Engine, v: &FreeModuleVector) -> Option<FreeModuleVector> {
    let rank = engine.rank();
    let track = engine.track();
    let r = engine.reduce(&v.embed(rank, track));
    if r.terms().iter().any(|t| t.0 >= track) {
        return None;
    }
    Some(r.slice(0..track).scale(&v.ring().scalar(-1)))
}

/// Generators of the kernel of the map S^n → S^rank sending `e_k` to
/// `columns[k]`, graded by `target_shifts`, minimalized when homogeneous.
pub(crate) fn syzygies_graded(columns: &[FreeModuleVector], target_shifts: &[i64]) -> (Vec<FreeModuleVector>, Engine) {
    let mut engine = tracked_engine(columns, target_shifts);
    let syz = engine.take_syzygies();
    let source_shifts: Vec<i64> = engine.shifts()[..columns.len()].to_vec();
    let syz = if syz.iter().all(|s| s.degree(&source_shifts).is_some()) {
        minimal_generators(&syz, &source_shifts)
    } else {
        syz
    };
    (syz, engine)
}

/// Syzygies of `columns` (all in the same free module, unshifted).
pub fn syzygy_module(columns: &[FreeModuleVector]) -> Result<Vec<FreeModuleVector>> {
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    let (_, rank) = check_vectors(columns)?;
    let nonzero: Vec<usize> = (0..columns.len()).filter(|&k| !columns[k].is_zero()).collect();
    let ring = columns[0].ring().clone();
    let n = columns.len();
    // zero columns contribute unit syzygies directly
    let mut out: Vec<FreeModuleVector> = (0..n)
        .filter(|k| columns[*k].is_zero())
        .map(|k| FreeModuleVector::unit(&ring, n, k))
        .collect();
    if !nonzero.is_empty() {
        let cols: Vec<FreeModuleVector> = nonzero.iter().map(|&k| columns[k].clone()).collect();
        let (syz, _) = syzygies_graded(&cols, &vec![0; rank]);
        for s in syz {
            let terms = s.terms().iter().map(|(i, m, c)| (nonzero[*i], m.clone(), c.clone()));
            out.push(FreeModuleVector::new(&ring, n, terms));
        }
    }
    let shifts: Vec<i64> = columns.iter().map(|c| sugar(c, &vec![0; rank])).collect();
    out.sort_by(|a, b| {
        sugar(a, &shifts)
            .cmp(&sugar(b, &shifts))
            .then_with(|| engine::lead_order(a, b))
    });
    Ok(out)
}

/// A minimal homogeneous generating subset of the submodule spanned by
/// `vectors`, chosen greedily by degree.
pub(crate) fn minimal_generators(vectors: &[FreeModuleVector], shifts: &[i64]) -> Vec<FreeModuleVector> {
    let Some(first) = vectors.iter().find(|v| !v.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut items: Vec<(i64, &FreeModuleVector)> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| (v.degree(shifts).expect("homogeneous"), v))
        .collect();
    items.sort_by_key(|t| t.0);
    let mut engine = Engine::new(&ring, 0, shifts.to_vec());
    let mut kept = Vec::new();
    for (deg, v) in items {
        engine.complete_through(Some(deg));
        if !engine.reduce(v).is_zero() {
            engine.add_generator(v.clone());
            kept.push(v.clone());
        }
    }
    kept
}
